#pragma once

#include "tbounds/solver.hpp"
#include "tbounds/trial.hpp"

namespace tbounds {

/// Image of a scattering problem under the change of variables
/// u(x) = U(X(x)) / sqrt(X'(x)): the K^2(X) field plus both coordinate maps.
struct TransformedProfile {
    RealFn X_of_x;
    RealFn x_of_X;
    RealFn k2_transformed;  ///< K^2 as a function of the new coordinate X
    double X_min = 0.0, X_max = 0.0;
    double x_lo = 0.0, x_hi = 0.0;  ///< construction window in the original coordinate
    double j_inf_minus = 1.0, j_inf_plus = 1.0;  ///< asymptotic X'
    double K_minus = 0.0, K_plus = 0.0;          ///< asymptotic wavenumbers of K^2
    std::vector<double> breakpoints_X;           ///< profile breakpoints mapped through X
};

/// sqrt(X') (1/sqrt(X'))'' = -X'''/(2X') + (3/4)(X''/X')^2 from the analytic
/// derivatives of Xprime. Throws NonPositive if Xprime(x) <= 0.
double schwartzian_term(const TrialFunction& Xprime, double x);

/// Transform with X' = j: K^2 = (1/j^2){k^2 - j''/(2j) + (3/4)(j'/j)^2},
/// X(x) = x_min + cumulative integral of j. Requires j > 0 and flat tails.
TransformedProfile transform_with_j(const EnergySlice& slice, const TrialFunction& j,
                                    const QuadratureConfig& cfg = {});

/// Transform with X' = J^-2: K^2 = J^4 {k^2 + J''/J}.
TransformedProfile transform_with_J(const EnergySlice& slice, const TrialFunction& J,
                                    const QuadratureConfig& cfg = {});

struct InvarianceReport {
    double t_original = 0.0;
    double t_transformed = 0.0;
    double difference = 0.0;
    long grid_original = 0;
    long grid_transformed = 0;
};

/// Solves the original and transformed problems and reports |delta T|.
/// `use_J_form` selects transform_with_J (the trial is then J, not j).
InvarianceReport verify_invariance(const EnergySlice& slice, const TrialFunction& trial,
                                   const SolverConfig& cfg = {}, bool use_J_form = false);

}  // namespace tbounds
