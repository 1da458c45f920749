#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "tbounds/errors.hpp"

namespace tbounds {

using RealFn = std::function<double(double)>;

struct EnergySlice;  // profiles.hpp

/// Shared tolerances. All defaults centralized here and overridable.
struct QuadratureConfig {
    double abs_tol = 1e-10;   ///< absolute quadrature target
    double rel_tol = 1e-9;    ///< relative quadrature target
    int max_depth = 40;       ///< bisection depth cap per panel
    double tail_tol = 1e-12;  ///< asymptotic flatness threshold
    double root_tol = 1e-12;  ///< bisection position tolerance
    int n_scan = 2048;        ///< scan-grid density for roots/extrema/certitudes
};

inline constexpr double kRootTol = 1e-12;      // bisection position tolerance
inline constexpr int kDefaultScan = 2048;      // scan-grid density
inline constexpr double kWindowCap = 1e6;      // hard cap on window growth

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a,b].
/// The interval is pre-split at `split_points` (sorted/deduped/clipped
/// internally) so that no panel straddles a kink of |.|-type integrands.
/// Throws ToleranceNotMet (with the best estimate attached) if the error
/// estimate cannot be pushed below the tolerances.
double integrate(const RealFn& f, double a, double b,
                 std::vector<double> split_points = {},
                 const QuadratureConfig& cfg = {});

/// Sign changes of f on an n_scan grid over [a,b], each refined by bisection
/// to root_tol in position. Grid points where f vanishes exactly are returned
/// as-is. Blind spot: features narrower than (b-a)/n_scan are missed.
std::vector<double> bracket_roots(const RealFn& f, double a, double b,
                                  int n_scan = kDefaultScan, double root_tol = kRootTol);

/// Central finite differences with 4th-order stencils, order in {1,2}.
/// h_step <= 0 selects the default step (cbrt / 4th root of machine epsilon,
/// scaled by 1+|x|).
double fd_derivative(const RealFn& f, double x, int order, double h_step = 0.0);

/// Deterministic extremum search: best scan-grid point refined by
/// golden-section in the bracketing grid cell. Returns the extreme value;
/// the location is written to *arg when non-null.
double grid_min(const RealFn& f, double a, double b, int n_scan = kDefaultScan,
                double* arg = nullptr);
double grid_max(const RealFn& f, double a, double b, int n_scan = kDefaultScan,
                double* arg = nullptr);

/// Smallest window outside which |k^2(x) - k^2(±inf)| < tail_tol, grown by
/// doubling from the profile's structural window and shrunk back by
/// bisection. Throws NumericError("NoConvergence") past the hard cap.
std::pair<double, double> truncate_domain(const EnergySlice& slice, double tail_tol);

/// One-sided margin search used by truncate_domain and the bound-integral
/// window logic: smallest m such that |f(edge ± (m + probe))| < thresh for
/// probe offsets {0, 1, 2, 4} * (1 + m/4). `direction` is +1 (right tail) or
/// -1 (left tail). Returns the margin, or a negative value if the cap is hit.
double flat_tail_margin(const RealFn& f, double edge, int direction, double thresh,
                        double cap = kWindowCap);

/// Overflow-safe sech^2 / sinh^2.
double sech2(double t);
double sinh2(double t);

}  // namespace tbounds
