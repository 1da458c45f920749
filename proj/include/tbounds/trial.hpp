#pragma once

#include "tbounds/profiles.hpp"

namespace tbounds {

/// A positive trial function with first and second derivatives. Built-in
/// families carry analytic derivatives; `custom` falls back to central
/// finite differences. Piecewise families list their jump positions in
/// `breakpoints` so the bound integrals can account for them.
struct TrialFunction {
    RealFn value;
    RealFn d1;
    RealFn d2;
    std::string family;
    std::map<std::string, double> params;
    std::vector<double> breakpoints;

    double operator()(double x) const { return value(x); }

    static TrialFunction constant(double c);
    /// (l+r)/2 + (r-l)/2 tanh((x-center)/scale)
    static TrialFunction tanh_interpolant(double left, double right, double scale,
                                          double center = 0.0);
    /// base + amplitude * sech((x-center)/width); tends to `base` at infinity.
    static TrialFunction sech_bump(double base, double amplitude, double width,
                                   double center = 0.0);
    /// base * exp(c x); used to exercise the non-flattening error paths.
    static TrialFunction exponential(double base, double rate);
    /// Arbitrary value with explicit analytic derivatives.
    static TrialFunction make(RealFn v, RealFn d1, RealFn d2, std::string family = "custom");
    /// Arbitrary value, derivatives by finite differences.
    static TrialFunction custom(RealFn v, std::string family = "custom-sampled");
    /// h(x) = k(x) = sqrt(E - V(x)) of the slice; derivatives from V', V''.
    /// Requires k^2 > 0 wherever evaluated; inherits the profile breakpoints.
    static TrialFunction slice_k(const EnergySlice& slice);

    /// j = J^-2 (the coordinate-map density written in terms of J).
    static TrialFunction inverse_square(const TrialFunction& J);
    /// h = H J^2 (the substitution relating the improved-bound forms).
    static TrialFunction product_with_square(const TrialFunction& H, const TrialFunction& J);
};

/// Sampled positivity check over [lo,hi]; throws NonPositive on failure.
void check_positive(const TrialFunction& f, double lo, double hi, int n_scan = 512);

}  // namespace tbounds
