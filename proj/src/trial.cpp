#include "tbounds/trial.hpp"

#include <cmath>

namespace tbounds {

namespace {
double sech(double u) { return 1.0 / std::cosh(u); }
}

TrialFunction TrialFunction::constant(double c) {
    TrialFunction f;
    f.value = [c](double) { return c; };
    f.d1 = [](double) { return 0.0; };
    f.d2 = [](double) { return 0.0; };
    f.family = "constant";
    f.params = {{"c", c}};
    return f;
}

TrialFunction TrialFunction::tanh_interpolant(double left, double right, double scale,
                                              double center) {
    TrialFunction f;
    const double mid = 0.5 * (left + right), amp = 0.5 * (right - left);
    f.value = [mid, amp, scale, center](double x) {
        return mid + amp * std::tanh((x - center) / scale);
    };
    f.d1 = [amp, scale, center](double x) {
        const double s = sech((x - center) / scale);
        return amp / scale * s * s;
    };
    f.d2 = [amp, scale, center](double x) {
        const double u = (x - center) / scale, s = sech(u);
        return -2.0 * amp / (scale * scale) * s * s * std::tanh(u);
    };
    f.family = "tanh-interpolant";
    f.params = {{"left", left}, {"right", right}, {"scale", scale}, {"center", center}};
    return f;
}

TrialFunction TrialFunction::sech_bump(double base, double amplitude, double width,
                                       double center) {
    TrialFunction f;
    f.value = [base, amplitude, width, center](double x) {
        return base + amplitude * sech((x - center) / width);
    };
    f.d1 = [amplitude, width, center](double x) {
        const double u = (x - center) / width;
        return -amplitude / width * sech(u) * std::tanh(u);
    };
    f.d2 = [amplitude, width, center](double x) {
        const double u = (x - center) / width, s = sech(u), t = std::tanh(u);
        return amplitude / (width * width) * s * (t * t - s * s);
    };
    f.family = "sech-bump";
    f.params = {{"base", base}, {"amplitude", amplitude}, {"width", width}, {"center", center}};
    return f;
}

TrialFunction TrialFunction::exponential(double base, double rate) {
    TrialFunction f;
    f.value = [base, rate](double x) { return base * std::exp(rate * x); };
    f.d1 = [base, rate](double x) { return base * rate * std::exp(rate * x); };
    f.d2 = [base, rate](double x) { return base * rate * rate * std::exp(rate * x); };
    f.family = "exponential";
    f.params = {{"base", base}, {"rate", rate}};
    return f;
}

TrialFunction TrialFunction::make(RealFn v, RealFn d1, RealFn d2, std::string family) {
    TrialFunction f;
    f.value = std::move(v);
    f.d1 = std::move(d1);
    f.d2 = std::move(d2);
    f.family = std::move(family);
    return f;
}

TrialFunction TrialFunction::custom(RealFn v, std::string family) {
    TrialFunction f;
    f.value = v;
    f.d1 = [v](double x) { return fd_derivative(v, x, 1); };
    f.d2 = [v](double x) { return fd_derivative(v, x, 2); };
    f.family = std::move(family);
    return f;
}

TrialFunction TrialFunction::slice_k(const EnergySlice& slice) {
    TrialFunction f;
    const PotentialProfile prof = slice.profile;
    const double E = slice.energy;
    f.value = [prof, E](double x) { return std::sqrt(std::max(E - prof.v(x), 0.0)); };
    // k' = -V'/(2k), k'' = -V''/(2k) - V'^2/(4k^3)
    f.d1 = [prof, E](double x) {
        const double k = std::sqrt(std::max(E - prof.v(x), 0.0));
        return -prof.v1(x) / (2.0 * k);
    };
    f.d2 = [prof, E](double x) {
        const double k = std::sqrt(std::max(E - prof.v(x), 0.0));
        const double vp = prof.v1(x);
        return -prof.v2(x) / (2.0 * k) - vp * vp / (4.0 * k * k * k);
    };
    f.family = "slice-k";
    f.params = {{"energy", E}};
    f.breakpoints = prof.breakpoints;
    return f;
}

TrialFunction TrialFunction::inverse_square(const TrialFunction& J) {
    TrialFunction f;
    f.value = [J](double x) {
        const double v = J.value(x);
        return 1.0 / (v * v);
    };
    f.d1 = [J](double x) {
        const double v = J.value(x);
        return -2.0 * J.d1(x) / (v * v * v);
    };
    f.d2 = [J](double x) {
        const double v = J.value(x), p = J.d1(x);
        return (6.0 * p * p - 2.0 * v * J.d2(x)) / (v * v * v * v);
    };
    f.family = J.family + "^-2";
    f.params = J.params;
    f.breakpoints = J.breakpoints;
    return f;
}

TrialFunction TrialFunction::product_with_square(const TrialFunction& H,
                                                 const TrialFunction& J) {
    TrialFunction f;
    f.value = [H, J](double x) {
        const double j = J.value(x);
        return H.value(x) * j * j;
    };
    f.d1 = [H, J](double x) {
        const double j = J.value(x);
        return H.d1(x) * j * j + 2.0 * H.value(x) * j * J.d1(x);
    };
    f.d2 = [H, J](double x) {
        const double j = J.value(x), jp = J.d1(x);
        return H.d2(x) * j * j + 4.0 * H.d1(x) * j * jp +
               2.0 * H.value(x) * (jp * jp + j * J.d2(x));
    };
    f.family = H.family + "*" + J.family + "^2";
    f.breakpoints = H.breakpoints;
    f.breakpoints.insert(f.breakpoints.end(), J.breakpoints.begin(), J.breakpoints.end());
    return f;
}

void check_positive(const TrialFunction& f, double lo, double hi, int n_scan) {
    for (int i = 0; i <= n_scan; ++i) {
        const double x = lo + (hi - lo) * i / n_scan;
        const double v = f.value(x);
        if (!(v > 0.0))
            throw_non_positive("trial function '" + f.family + "' is not positive at x=" +
                               std::to_string(x) + " (value " + std::to_string(v) + ")");
    }
}

}  // namespace tbounds
