#pragma once

#include <complex>
#include <limits>

#include "tbounds/profiles.hpp"

namespace tbounds {

struct SolverConfig {
    /// Domain; NaN selects automatic truncation from the slice.
    double x_min = std::numeric_limits<double>::quiet_NaN();
    double x_max = std::numeric_limits<double>::quiet_NaN();
    int n_init = 256;         ///< initial segment count (>= 16)
    double refine_tol = 1e-9; ///< relative change in T between grid doublings
    int max_refine = 14;      ///< cap on doublings
    double tail_tol = 1e-12;  ///< flat-tail threshold for automatic truncation
};

struct ScatteringResult {
    std::complex<double> t_amp{};
    std::complex<double> r_amp{};
    double transmission = 0.0;     ///< flux-normalized (k+/k-) |t|^2
    double reflection = 0.0;       ///< |r|^2
    double unitarity_defect = 0.0; ///< |T + R - 1|
    long grid_size = 0;            ///< segments of the accepted grid
    double energy = 0.0;
};

/// Exact transmission/reflection for a slice: piecewise-constant k^2 on an
/// adaptively refined segment grid, segments composed with scattering-matrix
/// (Redheffer) products so evanescent stretches never overflow. Throws
/// NonConvergent if max_refine doublings do not stabilize T to refine_tol.
ScatteringResult transmission(const EnergySlice& slice, const SolverConfig& cfg = {});

/// Low-level entry: scattering for an arbitrary k^2 field that is flat
/// (k_minus^2 / k_plus^2) outside [x_min, x_max]. Segment boundaries are
/// aligned to `breakpoints`.
ScatteringResult scatter_k2(const RealFn& k2, double x_min, double x_max,
                            double k_minus, double k_plus,
                            const std::vector<double>& breakpoints,
                            const SolverConfig& cfg = {});

/// Closed-form transmission for the corpus families that have one:
/// zero, square (sin/sinh formulas), step (flux formula), sech2
/// (Poschl-Teller). Implemented independently of the numeric solver.
/// Throws NoOracle for other names.
double oracle_transmission(const std::string& name,
                           const std::map<std::string, double>& params, double energy);

}  // namespace tbounds
