#include "tbounds/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tbounds/profiles.hpp"

namespace tbounds {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1]. Column 0: |node|, column 1:
// Gauss weight (0 for Kronrod-only nodes), column 2: Kronrod weight.
constexpr double kGK[8][3] = {
    {0.000000000000000000000000000000000, 0.417959183673469387755102040816327, 0.209482141084727828012999174891714},
    {0.405845151377397166906606412076961, 0.381830050505118944950369775488975, 0.190350578064785409913256402421014},
    {0.741531185599394439863864773280788, 0.279705391489276667901467771423780, 0.140653259715525918745189590510238},
    {0.949107912342758524526189684047851, 0.129484966168869693270611432679082, 0.063092092629978553290700663189204},
    {0.207784955007898467600689403773245, 0.0, 0.204432940075298892414161999234649},
    {0.586087235467691130294144838258730, 0.0, 0.169004726639267902826583426598550},
    {0.864864423359769072789712788640926, 0.0, 0.104790010322250183839876322541518},
    {0.991455371120812639206854697526329, 0.0, 0.022935322010529224963732008058970},
};

struct PanelEstimate {
    double value;
    double error;
};

PanelEstimate gk15(const RealFn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(c);
    double g7 = kGK[0][1] * f0;
    double k15 = kGK[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kGK[i][0];
        const double fi = f(c + dx) + f(c - dx);
        g7 += kGK[i][1] * fi;
        k15 += kGK[i][2] * fi;
    }
    g7 *= h;
    k15 *= h;
    // Standard QUADPACK-style error sharpening.
    double err = std::abs(g7 - k15);
    err = 200.0 * err * std::sqrt(std::min(1.0, err));
    return {k15, err};
}

struct AdaptiveState {
    const RealFn* f;
    double abs_tol;
    double rel_tol;
    int max_depth;
    double whole_scale;  // |first whole-interval estimate|, for relative tol
    double total_span;
    double value = 0.0;
    double error = 0.0;
};

void adapt(AdaptiveState& st, double a, double b, const PanelEstimate& est, int depth) {
    const double frac = (b - a) / st.total_span;
    const double goal =
        std::max(st.abs_tol, st.rel_tol * st.whole_scale) * std::max(frac, 1e-6);
    if (est.error <= goal || depth >= st.max_depth || b - a < 1e-15 * st.total_span) {
        st.value += est.value;
        st.error += est.error;
        return;
    }
    const double m = 0.5 * (a + b);
    const PanelEstimate left = gk15(*st.f, a, m);
    const PanelEstimate right = gk15(*st.f, m, b);
    adapt(st, a, m, left, depth + 1);
    adapt(st, m, b, right, depth + 1);
}

double golden_refine(const RealFn& f, double a, double b, int sign, double* arg) {
    // minimizes sign*f on [a,b]; ~50 iterations pin the position to ~1e-10 span
    constexpr double invphi = 0.6180339887498949;
    double lo = a, hi = b;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = sign * f(x1), f2 = sign * f(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-12 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = sign * f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = sign * f(x2);
        }
    }
    const double xm = 0.5 * (lo + hi);
    if (arg) *arg = xm;
    return f(xm);
}

}  // namespace

double integrate(const RealFn& f, double a, double b,
                 std::vector<double> split_points, const QuadratureConfig& cfg) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw UsageError("integrate: requires a < b");
    }
    split_points.push_back(a);
    split_points.push_back(b);
    std::sort(split_points.begin(), split_points.end());
    std::vector<double> edges;
    for (double s : split_points) {
        if (s < a || s > b) continue;
        if (!edges.empty() && s - edges.back() < 1e-14 * (b - a)) continue;
        edges.push_back(s);
    }
    if (edges.back() < b) edges.push_back(b);

    AdaptiveState st{&f, cfg.abs_tol, cfg.rel_tol, cfg.max_depth, 0.0, b - a};
    // First pass over the top-level panels fixes the relative-tolerance scale.
    std::vector<PanelEstimate> top;
    double whole = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        top.push_back(gk15(f, edges[i], edges[i + 1]));
        whole += top.back().value;
    }
    st.whole_scale = std::abs(whole);
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        adapt(st, edges[i], edges[i + 1], top[i], 0);

    if (st.error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(st.value)) * 10.0)
        throw ToleranceNotMet("integrate: error estimate above tolerance", st.value, st.error);
    return st.value;
}

std::vector<double> bracket_roots(const RealFn& f, double a, double b, int n_scan,
                                  double root_tol) {
    std::vector<double> roots;
    if (!(a < b) || n_scan < 2) return roots;
    const double h = (b - a) / n_scan;
    double x0 = a;
    double f0 = f(x0);
    for (int i = 1; i <= n_scan; ++i) {
        const double x1 = (i == n_scan) ? b : a + i * h;
        const double f1 = f(x1);
        if (f0 == 0.0) {
            roots.push_back(x0);
        } else if (f1 != 0.0 && std::signbit(f0) != std::signbit(f1)) {
            double lo = x0, hi = x1, flo = f0;
            while (hi - lo > root_tol) {
                const double m = 0.5 * (lo + hi);
                const double fm = f(m);
                if (fm == 0.0) {
                    lo = hi = m;
                    break;
                }
                if (std::signbit(fm) == std::signbit(flo)) {
                    lo = m;
                    flo = fm;
                } else {
                    hi = m;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    if (f0 == 0.0) roots.push_back(x0);
    return roots;
}

double fd_derivative(const RealFn& f, double x, int order, double h_step) {
    const double eps = std::numeric_limits<double>::epsilon();
    if (order == 1) {
        const double h = h_step > 0 ? h_step : std::cbrt(eps) * (1.0 + std::abs(x));
        return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
    }
    if (order == 2) {
        const double h = h_step > 0 ? h_step : std::pow(eps, 0.25) * (1.0 + std::abs(x));
        return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
               (12 * h * h);
    }
    throw UsageError("fd_derivative: order must be 1 or 2");
}

double grid_min(const RealFn& f, double a, double b, int n_scan, double* arg) {
    double best = std::numeric_limits<double>::infinity();
    int besti = 0;
    for (int i = 0; i <= n_scan; ++i) {
        const double x = a + (b - a) * i / n_scan;
        const double v = f(x);
        if (v < best) {
            best = v;
            besti = i;
        }
    }
    const double h = (b - a) / n_scan;
    const double lo = std::max(a, a + (besti - 1) * h);
    const double hi = std::min(b, a + (besti + 1) * h);
    double xarg = 0.0;
    const double refined = golden_refine(f, lo, hi, +1, &xarg);
    if (refined < best) {
        if (arg) *arg = xarg;
        return refined;
    }
    if (arg) *arg = a + besti * h;
    return best;
}

double grid_max(const RealFn& f, double a, double b, int n_scan, double* arg) {
    const double m = grid_min([&f](double x) { return -f(x); }, a, b, n_scan, arg);
    return -m;
}

double flat_tail_margin(const RealFn& f, double edge, int direction, double thresh,
                        double cap) {
    auto flat_at = [&](double m) {
        const double probe_scale = 1.0 + 0.25 * m;
        for (double p : {0.0, 1.0, 2.0, 4.0}) {
            if (std::abs(f(edge + direction * (m + p * probe_scale))) >= thresh) return false;
        }
        return true;
    };
    if (flat_at(0.0)) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (!flat_at(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > cap) return -1.0;
    }
    for (int it = 0; it < 60 && hi - lo > 1e-3 * (1.0 + hi); ++it) {
        const double m = 0.5 * (lo + hi);
        (flat_at(m) ? hi : lo) = m;
    }
    return hi;
}

std::pair<double, double> truncate_domain(const EnergySlice& slice, double tail_tol) {
    const PotentialProfile& p = slice.profile;
    const double vm = p.v_minus_inf, vp = p.v_plus_inf;
    const double left =
        flat_tail_margin([&p, vm](double x) { return p.v(x) - vm; }, p.window_lo, -1, tail_tol);
    const double right =
        flat_tail_margin([&p, vp](double x) { return p.v(x) - vp; }, p.window_hi, +1, tail_tol);
    if (left < 0 || right < 0)
        throw NumericError("NoConvergence",
                           "truncate_domain: tails of '" + p.name + "' not flat within cap");
    return {p.window_lo - left, p.window_hi + right};
}

double sech2(double t) {
    const double e = std::exp(-std::abs(t));
    const double s = 2.0 * e / (1.0 + e * e);
    return s * s;
}

double sinh2(double t) {
    const double s = std::sinh(t);
    return s * s;
}

}  // namespace tbounds
