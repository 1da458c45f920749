#pragma once

#include "tbounds/bounds.hpp"

namespace tbounds {

struct OptimizationReport {
    std::map<std::string, double> best_params;
    BoundResult best_bound;
    long evaluations = 0;
    bool budget_exhausted = false;
    /// Every evaluated point: (params, theta); infeasible points score +inf.
    std::vector<std::pair<std::map<std::string, double>, double>> trace;
};

enum class DeltaFamily { DeltaCut, DeltaMG };

/// Minimizes theta(Delta) over the valid interval (max{0, k_min}, min{k-, k+}]:
/// 64-point grid scan plus golden-section refinement inside the bracketing
/// grid cell. Deterministic; infeasible Deltas score +inf.
OptimizationReport optimize_delta(const EnergySlice& slice, DeltaFamily family,
                                  const QuadratureConfig& cfg = {});

/// A parametric trial-function family for derivative-free search.
struct TrialSearchSpec {
    std::string name;
    std::vector<std::string> param_names;
    std::vector<std::pair<double, double>> box;  ///< per-parameter bounds
    std::vector<double> start;
    std::function<BoundResult(const EnergySlice&, const std::vector<double>&,
                              const QuadratureConfig&)>
        evaluate;
};

/// J = 1 + amp * sech(x/width), H = k_inf in the HJ improved form.
/// Requires symmetric asymptotics. start = (0, 1) reproduces the baseline.
TrialSearchSpec hj_bump_family(const EnergySlice& slice);

/// Deterministic compass/pattern search over the family box, at most `budget`
/// bound evaluations. Exhausting the budget flags the report and returns the
/// best point so far.
OptimizationReport optimize_trial(const EnergySlice& slice, const TrialSearchSpec& family,
                                  long budget = 200, const QuadratureConfig& cfg = {});

/// Max over every bound family whose preconditions hold (defaults plus
/// optimized Delta families; optionally the trial search). Diagnostics list
/// every candidate as cand_<family> (NaN when preconditions failed).
BoundResult best_bound(const EnergySlice& slice, const QuadratureConfig& cfg = {},
                       bool include_trial_search = false, long trial_budget = 200);

}  // namespace tbounds
