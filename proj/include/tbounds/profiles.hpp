#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tbounds/numerics.hpp"

namespace tbounds {

/// A 1D potential with finite (possibly different) asymptotic values.
/// Units convention throughout the library: 2m = hbar = 1, so k^2 = E - V.
struct PotentialProfile {
    std::string name;
    std::map<std::string, double> params;

    RealFn v;    ///< V(x)
    RealFn dv;   ///< V'(x); zero a.e. for the piecewise-constant profiles
    RealFn d2v;  ///< V''(x)

    double v_minus_inf = 0.0;
    double v_plus_inf = 0.0;

    /// Positions where V (or V') jumps; quadrature panels and solver segments
    /// are aligned to these.
    std::vector<double> breakpoints;

    /// True when dv/d2v are valid everywhere. Derivative-based bounds require
    /// this; the sharp square/step profiles set it to false.
    bool smooth = true;

    /// Window containing the structure of V; truncation grows tails from here.
    double window_lo = -1.0;
    double window_hi = 1.0;

    double v1(double x) const { return dv ? dv(x) : fd_derivative(v, x, 1); }
    double v2(double x) const { return d2v ? d2v(x) : fd_derivative(v, x, 2); }
};

/// Fixed-energy view of a profile: k^2(x) = E - V(x). Requires
/// E > max{V-inf, V+inf} so that a scattering problem is well posed.
struct EnergySlice {
    EnergySlice(PotentialProfile prof, double E);

    PotentialProfile profile;
    double energy;
    double k_minus_inf;  ///< sqrt(E - V(-inf))
    double k_plus_inf;   ///< sqrt(E - V(+inf))

    double k2(double x) const { return energy - profile.v(x); }
    bool symmetric_asymptotics() const;
};

/// Classically forbidden set {k^2 < 0} of a slice over a finite domain.
struct ForbiddenRegionSummary {
    std::vector<std::pair<double, double>> intervals;
    double kappa_max = 0.0;            ///< max sqrt(-k^2) over the intervals
    double total_width = 0.0;          ///< sum of interval lengths
    double penetration_integral = 0.0; ///< integral of kappa over the intervals
    bool empty() const { return intervals.empty(); }
};

/// Built-in potential corpus (default parameters). Names:
/// zero, square, smooth-square, sech2, step, smooth-step, gauss.
std::vector<PotentialProfile> make_corpus();
std::vector<std::string> corpus_names();

/// Corpus profile by name with parameter overrides; unknown names or keys
/// are UsageErrors.
PotentialProfile make_profile(const std::string& name,
                              const std::map<std::string, double>& overrides = {});

double k_squared(const EnergySlice& slice, double x);

ForbiddenRegionSummary forbidden_regions(const EnergySlice& slice,
                                         std::pair<double, double> domain,
                                         const QuadratureConfig& cfg = {});

}  // namespace tbounds
