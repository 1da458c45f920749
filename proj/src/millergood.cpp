#include "tbounds/millergood.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace tbounds {

namespace {

// 7-point Gauss-Legendre on [a,b]; exact enough for the short smooth
// subintervals of the coordinate map.
double gauss7(const RealFn& f, double a, double b) {
    static const double xs[4] = {0.000000000000000, 0.405845151377397, 0.741531185599394,
                                 0.949107912342759};
    static const double ws[4] = {0.417959183673469, 0.381830050505119, 0.279705391489277,
                                 0.129484966168870};
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double acc = ws[0] * f(c);
    for (int i = 1; i < 4; ++i) acc += ws[i] * (f(c + h * xs[i]) + f(c - h * xs[i]));
    return acc * h;
}

// Monotone cumulative map X(x) tabulated on a dense uniform x-grid. The
// inverse is a Hermite cubic per table cell (slopes dx/dX = 1/density are
// known at the nodes), which keeps solver-side queries cheap.
struct CoordinateMap {
    double lo = 0, hi = 0, h = 0;
    std::vector<double> X;    // X[i] = X(lo + i h)
    std::vector<double> den;  // density(lo + i h) = X'(x_i)
    RealFn density;

    void build(double a, double b, int n, RealFn dens) {
        lo = a;
        hi = b;
        h = (b - a) / n;
        density = std::move(dens);
        X.resize(n + 1);
        den.resize(n + 1);
        X[0] = a;  // anchor X(x_min) = x_min
        den[0] = density(a);
        for (int i = 0; i < n; ++i) {
            const double xi = a + i * h;
            X[i + 1] = X[i] + gauss7(density, xi, xi + h);
            den[i + 1] = density(xi + h);
        }
    }

    double forward(double x) const {
        if (x <= lo) return X.front() + den.front() * (x - lo);
        if (x >= hi) return X.back() + den.back() * (x - hi);
        const size_t i = std::min(X.size() - 2, size_t((x - lo) / h));
        return X[i] + gauss7(density, lo + i * h, x);
    }

    double inverse(double Xq) const {
        if (Xq <= X.front()) return lo + (Xq - X.front()) / den.front();
        if (Xq >= X.back()) return hi + (Xq - X.back()) / den.back();
        const size_t i = std::upper_bound(X.begin(), X.end(), Xq) - X.begin() - 1;
        const double dX = X[i + 1] - X[i];
        const double t = (Xq - X[i]) / dX;
        const double x0 = lo + i * h, x1 = x0 + h;
        const double m0 = dX / den[i], m1 = dX / den[i + 1];
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * x0 + (t3 - 2 * t2 + t) * m0 +
               (-2 * t3 + 3 * t2) * x1 + (t3 - t2) * m1;
    }
};

TransformedProfile build_transform(const EnergySlice& slice, const TrialFunction& trial,
                                   bool use_J_form, const QuadratureConfig& cfg) {
    // Window: potential tails flat, then extended until the trial flattens too
    // (slope and curvature below the tail threshold).
    auto [lo, hi] = truncate_domain(slice, cfg.tail_tol);
    const double scale = 1.0 + std::abs(trial.value(lo)) + std::abs(trial.value(hi));
    auto trial_variation = [&trial, scale](double x) {
        return (std::abs(trial.d1(x)) + std::abs(trial.d2(x))) / scale;
    };
    const double ml = flat_tail_margin(trial_variation, lo, -1, cfg.tail_tol);
    const double mr = flat_tail_margin(trial_variation, hi, +1, cfg.tail_tol);
    if (ml < 0 || mr < 0)
        throw_divergent_asymptotics("transform: trial '" + trial.family +
                                    "' does not flatten within the window cap");
    lo -= ml;
    hi += mr;
    check_positive(trial, lo, hi, kDefaultScan);

    const TrialFunction tf = trial;
    RealFn density;
    if (use_J_form) {
        density = [tf](double x) {
            const double J = tf.value(x);
            return 1.0 / (J * J);
        };
    } else {
        density = [tf](double x) { return tf.value(x); };
    }

    auto map = std::make_shared<CoordinateMap>();
    map->build(lo, hi, 16384, density);

    TransformedProfile out;
    out.x_lo = lo;
    out.x_hi = hi;
    out.X_min = map->X.front();
    out.X_max = map->X.back();
    out.X_of_x = [map](double x) { return map->forward(x); };
    out.x_of_X = [map](double X) { return map->inverse(X); };
    out.j_inf_minus = map->den.front();
    out.j_inf_plus = map->den.back();
    out.K_minus = slice.k_minus_inf / out.j_inf_minus;
    out.K_plus = slice.k_plus_inf / out.j_inf_plus;

    const PotentialProfile prof = slice.profile;
    const double E = slice.energy;
    RealFn k2_of_x;
    if (use_J_form) {
        // K^2 = J^4 (k^2 + J''/J)
        k2_of_x = [prof, E, tf](double x) {
            const double J = tf.value(x);
            return J * J * J * J * (E - prof.v(x) + tf.d2(x) / J);
        };
    } else {
        // K^2 = (1/j^2){k^2 - j''/(2j) + (3/4)(j'/j)^2}
        k2_of_x = [prof, E, tf](double x) {
            const double j = tf.value(x), jp = tf.d1(x);
            return (E - prof.v(x) - 0.5 * tf.d2(x) / j + 0.75 * jp * jp / (j * j)) / (j * j);
        };
    }
    out.k2_transformed = [k2_of_x, map](double X) { return k2_of_x(map->inverse(X)); };

    for (double bp : prof.breakpoints)
        if (bp > lo && bp < hi) out.breakpoints_X.push_back(out.X_of_x(bp));

    // Reject transforms whose image is not asymptotically flat.
    const double flat_tol = 1e3 * cfg.tail_tol * (1.0 + out.K_minus * out.K_minus +
                                                  out.K_plus * out.K_plus);
    if (std::abs(out.k2_transformed(out.X_min) - out.K_minus * out.K_minus) > flat_tol ||
        std::abs(out.k2_transformed(out.X_max) - out.K_plus * out.K_plus) > flat_tol)
        throw_divergent_asymptotics("transform: K^2 not flat at the window boundary");
    return out;
}

}  // namespace

double schwartzian_term(const TrialFunction& Xprime, double x) {
    const double j = Xprime.value(x);
    if (!(j > 0.0))
        throw_non_positive("schwartzian_term: X' must be positive, got " + std::to_string(j));
    const double j1 = Xprime.d1(x);  // X''
    const double j2 = Xprime.d2(x);  // X'''
    return -0.5 * j2 / j + 0.75 * (j1 / j) * (j1 / j);
}

TransformedProfile transform_with_j(const EnergySlice& slice, const TrialFunction& j,
                                    const QuadratureConfig& cfg) {
    return build_transform(slice, j, false, cfg);
}

TransformedProfile transform_with_J(const EnergySlice& slice, const TrialFunction& J,
                                    const QuadratureConfig& cfg) {
    return build_transform(slice, J, true, cfg);
}

InvarianceReport verify_invariance(const EnergySlice& slice, const TrialFunction& trial,
                                   const SolverConfig& cfg, bool use_J_form) {
    const ScatteringResult original = transmission(slice, cfg);
    const TransformedProfile tp = use_J_form
                                      ? transform_with_J(slice, trial, {})
                                      : transform_with_j(slice, trial, {});
    SolverConfig tcfg = cfg;
    tcfg.x_min = tp.X_min;
    tcfg.x_max = tp.X_max;
    const ScatteringResult transformed = scatter_k2(tp.k2_transformed, tp.X_min, tp.X_max,
                                                    tp.K_minus, tp.K_plus,
                                                    tp.breakpoints_X, tcfg);
    InvarianceReport rep;
    rep.t_original = original.transmission;
    rep.t_transformed = transformed.transmission;
    rep.difference = std::abs(rep.t_original - rep.t_transformed);
    rep.grid_original = original.grid_size;
    rep.grid_transformed = transformed.grid_size;
    return rep;
}

}  // namespace tbounds
