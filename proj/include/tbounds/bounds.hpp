#pragma once

#include "tbounds/solver.hpp"
#include "tbounds/trial.hpp"

namespace tbounds {

/// A sech^2-type lower bound on the transmission probability, together with
/// the integral argument theta it was built from. `bound == sech2(theta)` by
/// construction; a divergent bound carries theta = inf, bound = 0 and the
/// flag instead of an error so sweeps keep their row alignment.
struct BoundResult {
    double theta = 0.0;
    double bound = 1.0;
    std::string family;
    std::map<std::string, double> params;
    std::map<std::string, double> diagnostics;  ///< per-term contributions
    bool divergent = false;
};

/// Particle-production companion: N <= sinh^2(theta) in the parametric
/// oscillator reading of the same equation.
struct ParticleBound {
    double n_bound = 0.0;
    double theta = 0.0;
};

enum class SpecialCase { HConst, MonotoneH, SingleExtremum, DeltaCut, KMin };
enum class ImprovedForm { hj, hJ, HJ };

/// Baseline integrand sqrt((h')^2 + (k^2-h^2)^2) / (2h).
RealFn theta_integrand(const EnergySlice& slice, const TrialFunction& h);

/// T >= sech^2 { integral of theta_integrand }, any positive once-
/// differentiable h. Piecewise trials contribute |Delta ln h|/2 per jump.
BoundResult bound_basic(const EnergySlice& slice, const TrialFunction& h,
                        const QuadratureConfig& cfg = {});

/// Triangle-inequality weakening: integrand (|ln(h)'| + |k^2-h^2|/h) / 2.
BoundResult bound_basic_weak(const EnergySlice& slice, const TrialFunction& h,
                             const QuadratureConfig& cfg = {});

/// The five closed-form special cases:
///  HConst         h = k_inf (symmetric asymptotics required)
///  MonotoneH      h monotone between k-inf and k+inf (defaults to k(x) when
///                 k is monotone and positive, else the tanh interpolant)
///  SingleExtremum h with one extremum (pass `h`; no default)
///  DeltaCut       h^2 = max{k^2, Delta^2}, params["delta"]
///  KMin           Delta -> k_min limit of DeltaCut, needs k^2_min > 0
BoundResult bound_special(const EnergySlice& slice, SpecialCase which,
                          const std::map<std::string, double>& params = {},
                          const TrialFunction* h = nullptr,
                          const QuadratureConfig& cfg = {});

/// The two-trial-function improved bound in its three equivalent forms;
/// f1 is h (forms hj/hJ) or H (form HJ), f2 is j or J.
BoundResult bound_improved(const EnergySlice& slice, ImprovedForm form,
                           const TrialFunction& f1, const TrialFunction& f2,
                           const QuadratureConfig& cfg = {});

/// theta = (1/2) integral |(1/sqrt k)(1/sqrt k)''|; needs a smooth profile,
/// k^2 > 0 everywhere and symmetric asymptotics.
BoundResult bound_schwartzian(const EnergySlice& slice, const QuadratureConfig& cfg = {});

/// theta = chi_max/k_inf + integral chi with chi = sqrt(k_inf^2 - k^2);
/// single-hump everywhere-positive potential, symmetric asymptotics.
BoundResult bound_low_energy(const EnergySlice& slice, const QuadratureConfig& cfg = {});

/// chi = 0 variant: theta = (1/2 k_inf) integral (k_inf^2 - k^2).
BoundResult bound_old_low_energy(const EnergySlice& slice, const QuadratureConfig& cfg = {});

/// theta = int_{k2<0} kappa + kappa_max/k_inf + k_inf L / 2
///         + int_{k2>0} |k_inf^2 - k^2| / (2 k_inf);
/// the four terms are recorded separately in diagnostics.
BoundResult bound_wkb_like(const EnergySlice& slice, const QuadratureConfig& cfg = {});

/// The semiclassical estimates (NOT bounds): sech^2{int kappa + ln 2} and
/// exp{-2 int kappa}. Both are 1 with no_barrier set when k^2 >= 0 everywhere.
struct WkbEstimate {
    double sech2_form = 1.0;
    double exp_form = 1.0;
    bool no_barrier = false;
    double penetration_integral = 0.0;
};
WkbEstimate wkb_estimate(const EnergySlice& slice, const QuadratureConfig& cfg = {});

/// theta = (1/2) ln(k+ k- / Delta^2) + (sqrt(Delta^2-k^2))_max / Delta
///         + int_{Delta^2 > k^2} sqrt(Delta^2 - k^2);
/// single-hump positive potential, 0 < Delta <= min{k-, k+}.
BoundResult bound_delta_mg(const EnergySlice& slice, double delta,
                           const QuadratureConfig& cfg = {});

/// N <= sinh^2(theta). Throws NumericError("DivergentBound") for flagged
/// results (no finite particle bound exists).
ParticleBound to_particle_bound(const BoundResult& b);

}  // namespace tbounds
