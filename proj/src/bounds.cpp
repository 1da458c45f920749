#include "tbounds/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace tbounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Window {
    double lo = 0.0, hi = 0.0;
    bool divergent = false;
};

// Truncate to the potential's flat tails, then keep doubling outward until the
// bound integrand itself is below threshold at and beyond the edges. A trial
// that never flattens trips the cap and marks the bound divergent.
Window integration_window(const EnergySlice& slice, const RealFn& integrand,
                          const QuadratureConfig& cfg) {
    auto [lo, hi] = truncate_domain(slice, cfg.tail_tol);
    const double thresh =
        cfg.tail_tol * std::max(1.0, slice.k_minus_inf * slice.k_plus_inf);
    const double ml = flat_tail_margin(integrand, lo, -1, thresh);
    const double mr = flat_tail_margin(integrand, hi, +1, thresh);
    if (ml < 0 || mr < 0) return {lo, hi, true};
    return {lo - ml, hi + mr, false};
}

// Quadrature split points: sign changes of g (kinks of |g|) plus any
// registered discontinuities of the profile / trial inside the window.
std::vector<double> kink_splits(const EnergySlice& slice, const RealFn& g, double lo,
                                double hi, const QuadratureConfig& cfg,
                                const std::vector<double>& trial_breaks = {}) {
    std::vector<double> splits = bracket_roots(g, lo, hi, cfg.n_scan, cfg.root_tol);
    for (double b : slice.profile.breakpoints)
        if (b > lo && b < hi) splits.push_back(b);
    for (double b : trial_breaks)
        if (b > lo && b < hi) splits.push_back(b);
    return splits;
}

// |Delta ln h| / 2 summed over the registered jumps of a piecewise trial;
// the limit of the |ln(h)'| contribution of a steep smooth interpolation.
double log_jump_term(const TrialFunction& h, double lo, double hi) {
    double sum = 0.0;
    for (double b : h.breakpoints) {
        if (b <= lo || b >= hi) continue;
        const double d = 1e-7 * (1.0 + std::abs(b));
        const double hm = h.value(b - d), hp = h.value(b + d);
        if (!(hm > 0.0) || !(hp > 0.0))
            throw_non_positive("trial function not positive across a jump");
        sum += 0.5 * std::abs(std::log(hp / hm));
    }
    return sum;
}

BoundResult finish(std::string family, double theta, std::map<std::string, double> params,
                   std::map<std::string, double> diagnostics) {
    BoundResult b;
    b.family = std::move(family);
    b.theta = std::max(theta, 0.0);
    b.bound = sech2(b.theta);
    b.params = std::move(params);
    b.diagnostics = std::move(diagnostics);
    return b;
}

BoundResult divergent_result(std::string family, std::map<std::string, double> params) {
    BoundResult b;
    b.family = std::move(family);
    b.theta = kInf;
    b.bound = 0.0;
    b.params = std::move(params);
    b.divergent = true;
    return b;
}

void require_symmetric(const EnergySlice& slice, const std::string& family) {
    if (!slice.symmetric_asymptotics())
        throw_asymmetric(family + ": requires k(-inf) = k(+inf), got " +
                         std::to_string(slice.k_minus_inf) + " vs " +
                         std::to_string(slice.k_plus_inf));
}

// Collapsed derivative-sign sequence of k^2 samples must be all '-' before
// all '+': one minimum (possibly a plateau, possibly at the boundary, or no
// variation at all). This certifies the paper-style "single hump" shape.
void require_single_minimum(const EnergySlice& slice, double lo, double hi,
                            const QuadratureConfig& cfg, const std::string& family) {
    const int n = cfg.n_scan;
    std::vector<double> vals(n + 1);
    double vmax = -kInf, vmin = kInf;
    for (int i = 0; i <= n; ++i) {
        vals[i] = slice.k2(lo + (hi - lo) * i / n);
        vmax = std::max(vmax, vals[i]);
        vmin = std::min(vmin, vals[i]);
    }
    const double tol = 1e-10 * (vmax - vmin) + 1e-300;
    bool seen_up = false;
    for (int i = 0; i < n; ++i) {
        const double d = vals[i + 1] - vals[i];
        if (d > tol) seen_up = true;
        else if (d < -tol && seen_up)
            throw_precondition(family + ": multiple minima of k^2 detected");
    }
}

void require_positive_potential(const EnergySlice& slice, double lo, double hi,
                                const QuadratureConfig& cfg, const std::string& family) {
    const double kref2 =
        std::min(slice.k_minus_inf * slice.k_minus_inf, slice.k_plus_inf * slice.k_plus_inf);
    const double maxk2 = grid_max([&slice](double x) { return slice.k2(x); }, lo, hi,
                                  cfg.n_scan);
    if (maxk2 > kref2 + 1e-9 * (1.0 + kref2))
        throw_precondition(family + ": potential dips below its asymptote "
                           "(k^2 exceeds k_inf^2 somewhere)");
}

double min_k2(const EnergySlice& slice, double lo, double hi, const QuadratureConfig& cfg,
              double* arg = nullptr) {
    return grid_min([&slice](double x) { return slice.k2(x); }, lo, hi, cfg.n_scan, arg);
}

// theta = integral over the classically allowed part of |k_inf^2 - k^2|/(2 k_inf),
// shared by HConst (exclude == nullptr) and the WKB-like bound so that the
// no-forbidden-region reduction is exact term by term.
double allowed_deviation_theta(const EnergySlice& slice,
                               const ForbiddenRegionSummary* exclude,
                               const QuadratureConfig& cfg, Window* wout) {
    const double kinf = slice.k_minus_inf;
    const double kinf2 = kinf * kinf;
    auto integrand = [&slice, kinf, kinf2](double x) {
        return std::abs(kinf2 - slice.k2(x)) / (2.0 * kinf);
    };
    const Window w = integration_window(slice, integrand, cfg);
    if (wout) *wout = w;
    if (w.divergent) return kInf;
    auto dev = [&slice, kinf2](double x) { return kinf2 - slice.k2(x); };

    std::vector<std::pair<double, double>> pieces;
    double cursor = w.lo;
    if (exclude) {
        for (const auto& iv : exclude->intervals) {
            pieces.emplace_back(cursor, iv.first);
            cursor = iv.second;
        }
    }
    pieces.emplace_back(cursor, w.hi);

    double theta = 0.0;
    for (const auto& [a, b] : pieces) {
        if (!(a < b)) continue;
        theta += integrate(integrand, a, b, kink_splits(slice, dev, a, b, cfg), cfg);
    }
    return theta;
}

}  // namespace

RealFn theta_integrand(const EnergySlice& slice, const TrialFunction& h) {
    const TrialFunction trial = h;
    const EnergySlice s = slice;
    return [s, trial](double x) {
        const double hv = trial.value(x);
        if (!(hv > 0.0))
            throw_non_positive("theta integrand: h(x) <= 0 at x = " + std::to_string(x));
        const double hp = trial.d1(x);
        const double dev = s.k2(x) - hv * hv;
        return std::sqrt(hp * hp + dev * dev) / (2.0 * hv);
    };
}

BoundResult bound_basic(const EnergySlice& slice, const TrialFunction& h,
                        const QuadratureConfig& cfg) {
    const RealFn integrand = theta_integrand(slice, h);
    std::map<std::string, double> params = h.params;
    const Window w = integration_window(slice, integrand, cfg);
    if (w.divergent) return divergent_result("basic[" + h.family + "]", params);
    check_positive(h, w.lo, w.hi, cfg.n_scan);

    auto dev = [&slice, &h](double x) {
        const double hv = h.value(x);
        return slice.k2(x) - hv * hv;
    };
    const double integral =
        integrate(integrand, w.lo, w.hi, kink_splits(slice, dev, w.lo, w.hi, cfg, h.breakpoints),
                  cfg);
    const double jump = log_jump_term(h, w.lo, w.hi);
    return finish("basic[" + h.family + "]", integral + jump, params,
                  {{"integral", integral}, {"jump_term", jump}});
}

BoundResult bound_basic_weak(const EnergySlice& slice, const TrialFunction& h,
                             const QuadratureConfig& cfg) {
    const TrialFunction trial = h;
    const EnergySlice s = slice;
    auto integrand = [s, trial](double x) {
        const double hv = trial.value(x);
        if (!(hv > 0.0))
            throw_non_positive("weak integrand: h(x) <= 0 at x = " + std::to_string(x));
        return 0.5 * (std::abs(trial.d1(x)) + std::abs(s.k2(x) - hv * hv)) / hv;
    };
    std::map<std::string, double> params = h.params;
    const Window w = integration_window(slice, integrand, cfg);
    if (w.divergent) return divergent_result("basic-weak[" + h.family + "]", params);
    check_positive(h, w.lo, w.hi, cfg.n_scan);

    auto dev = [&slice, &h](double x) {
        const double hv = h.value(x);
        return slice.k2(x) - hv * hv;
    };
    std::vector<double> splits = kink_splits(slice, dev, w.lo, w.hi, cfg, h.breakpoints);
    // |h'| has its own kinks where h' changes sign.
    for (double r : bracket_roots(h.d1, w.lo, w.hi, cfg.n_scan, cfg.root_tol))
        splits.push_back(r);
    const double integral = integrate(integrand, w.lo, w.hi, splits, cfg);
    const double jump = log_jump_term(h, w.lo, w.hi);
    return finish("basic-weak[" + h.family + "]", integral + jump, params,
                  {{"integral", integral}, {"jump_term", jump}});
}

BoundResult bound_special(const EnergySlice& slice, SpecialCase which,
                          const std::map<std::string, double>& params,
                          const TrialFunction* h, const QuadratureConfig& cfg) {
    const double km = slice.k_minus_inf, kp = slice.k_plus_inf;

    switch (which) {
        case SpecialCase::HConst: {
            require_symmetric(slice, "HConst");
            const double theta = allowed_deviation_theta(slice, nullptr, cfg, nullptr);
            if (std::isinf(theta)) return divergent_result("hconst", {{"h", km}});
            return finish("hconst", theta, {{"h", km}}, {{"integral", theta}});
        }

        case SpecialCase::MonotoneH: {
            TrialFunction trial;
            const auto base = truncate_domain(slice, cfg.tail_tol);
            if (h) {
                trial = *h;
            } else {
                // Prefer h = k(x) (saturates monotone profiles); fall back to
                // the tanh interpolant when k is not positive or not monotone.
                const double mink2 = min_k2(slice, base.first, base.second, cfg);
                bool monotone_k = mink2 > 0.0;
                if (monotone_k) {
                    double prev = slice.k2(base.first);
                    bool up = false, down = false;
                    for (int i = 1; i <= cfg.n_scan; ++i) {
                        const double cur =
                            slice.k2(base.first + (base.second - base.first) * i / cfg.n_scan);
                        const double tol = 1e-12 * (1.0 + std::abs(cur));
                        if (cur > prev + tol) up = true;
                        if (cur < prev - tol) down = true;
                        prev = cur;
                    }
                    monotone_k = !(up && down);
                }
                trial = monotone_k ? TrialFunction::slice_k(slice)
                                   : TrialFunction::tanh_interpolant(km, kp, 1.0);
            }

            const TrialFunction tf = trial;
            const EnergySlice s = slice;
            auto integrand = [s, tf](double x) {
                const double hv = tf.value(x);
                if (!(hv > 0.0)) throw_non_positive("MonotoneH: h(x) <= 0");
                return 0.5 * std::abs(s.k2(x) - hv * hv) / hv;
            };
            const Window w = integration_window(slice, integrand, cfg);
            if (w.divergent) return divergent_result("monotone-h", {});
            check_positive(trial, w.lo, w.hi, cfg.n_scan);

            // Monotonicity and asymptotic interpolation are what make the
            // closed-form log term equal int |ln h'| / 2; reject otherwise.
            bool up = false, down = false;
            double prev = trial.value(w.lo);
            for (int i = 1; i <= cfg.n_scan; ++i) {
                const double cur = trial.value(w.lo + (w.hi - w.lo) * i / cfg.n_scan);
                const double tol = 1e-12 * (1.0 + std::abs(cur));
                if (cur > prev + tol) up = true;
                if (cur < prev - tol) down = true;
                prev = cur;
            }
            if (up && down)
                throw_precondition("MonotoneH: trial function is not monotone");
            const double atol = 1e-6;
            if (std::abs(trial.value(w.lo) - km) > atol * (1.0 + km) ||
                std::abs(trial.value(w.hi) - kp) > atol * (1.0 + kp))
                throw_precondition("MonotoneH: trial does not interpolate k(-inf) -> k(+inf)");

            auto dev = [&slice, &tf](double x) {
                const double hv = tf.value(x);
                return slice.k2(x) - hv * hv;
            };
            const double log_term = 0.5 * std::abs(std::log(kp / km));
            const double integral =
                integrate(integrand, w.lo, w.hi,
                          kink_splits(slice, dev, w.lo, w.hi, cfg, trial.breakpoints), cfg);
            return finish("monotone-h", log_term + integral, {},
                          {{"log_term", log_term}, {"integral", integral}});
        }

        case SpecialCase::SingleExtremum: {
            if (!h)
                throw UsageError("SingleExtremum requires an explicit trial function h");
            const TrialFunction trial = *h;
            const EnergySlice s = slice;
            auto integrand = [s, trial](double x) {
                const double hv = trial.value(x);
                if (!(hv > 0.0)) throw_non_positive("SingleExtremum: h(x) <= 0");
                return 0.5 * std::abs(s.k2(x) - hv * hv) / hv;
            };
            const Window w = integration_window(slice, integrand, cfg);
            if (w.divergent) return divergent_result("single-extremum", {});
            check_positive(trial, w.lo, w.hi, cfg.n_scan);

            // Exactly one extremum: derivative changes sign exactly once.
            int transitions = 0;
            double prev = trial.value(w.lo);
            int last_sign = 0;
            for (int i = 1; i <= cfg.n_scan; ++i) {
                const double cur = trial.value(w.lo + (w.hi - w.lo) * i / cfg.n_scan);
                const double tol = 1e-12 * (1.0 + std::abs(cur));
                const int sign = cur > prev + tol ? 1 : (cur < prev - tol ? -1 : 0);
                if (sign != 0) {
                    if (last_sign != 0 && sign != last_sign) ++transitions;
                    last_sign = sign;
                }
                prev = cur;
            }
            if (transitions != 1)
                throw_precondition("SingleExtremum: trial has " + std::to_string(transitions) +
                                   " derivative sign changes, expected exactly 1");
            const double atol = 1e-6;
            if (std::abs(trial.value(w.lo) - km) > atol * (1.0 + km) ||
                std::abs(trial.value(w.hi) - kp) > atol * (1.0 + kp))
                throw_precondition(
                    "SingleExtremum: trial does not interpolate k(-inf) -> k(+inf)");

            auto hval = [&trial](double x) { return trial.value(x); };
            const double h_ext = last_sign > 0 ? grid_max(hval, w.lo, w.hi, cfg.n_scan)
                                               : grid_min(hval, w.lo, w.hi, cfg.n_scan);
            auto dev = [&slice, &trial](double x) {
                const double hv = trial.value(x);
                return slice.k2(x) - hv * hv;
            };
            const double log_term = 0.5 * std::abs(std::log(kp * km / (h_ext * h_ext)));
            const double integral =
                integrate(integrand, w.lo, w.hi,
                          kink_splits(slice, dev, w.lo, w.hi, cfg, trial.breakpoints), cfg);
            return finish("single-extremum", log_term + integral, {{"h_ext", h_ext}},
                          {{"log_term", log_term}, {"integral", integral}});
        }

        case SpecialCase::DeltaCut: {
            auto it = params.find("delta");
            if (it == params.end()) throw UsageError("DeltaCut requires params[\"delta\"]");
            const double delta = it->second;
            const auto base = truncate_domain(slice, cfg.tail_tol);
            require_single_minimum(slice, base.first, base.second, cfg, "DeltaCut");
            const double k2min = min_k2(slice, base.first, base.second, cfg);
            const double d2 = delta * delta;
            if (!(delta > 0.0) || d2 > std::min(km * km, kp * kp) * (1.0 + 1e-12) ||
                d2 < k2min - 1e-12 * (1.0 + std::abs(k2min)))
                throw_invalid_delta("DeltaCut needs k^2_min <= Delta^2 <= k_inf^2, got Delta=" +
                                    std::to_string(delta));

            auto excess = [&slice, d2](double x) { return d2 - slice.k2(x); };
            auto integrand = [excess, delta](double x) {
                return std::max(excess(x), 0.0) / (2.0 * delta);
            };
            const Window w = integration_window(slice, integrand, cfg);
            if (w.divergent) return divergent_result("delta-cut", {{"delta", delta}});
            const double log_term = 0.5 * std::log(kp * km / d2);
            const double integral =
                integrate(integrand, w.lo, w.hi, kink_splits(slice, excess, w.lo, w.hi, cfg),
                          cfg);
            return finish("delta-cut", log_term + integral, {{"delta", delta}},
                          {{"log_term", log_term}, {"integral", integral}});
        }

        case SpecialCase::KMin: {
            const auto base = truncate_domain(slice, cfg.tail_tol);
            require_single_minimum(slice, base.first, base.second, cfg, "KMin");
            const double k2min = min_k2(slice, base.first, base.second, cfg);
            if (!(k2min > 0.0))
                throw_precondition("KMin: requires 0 < k^2_min, got k^2_min = " +
                                   std::to_string(k2min));
            const double theta = 0.5 * std::log(kp * km / k2min);
            return finish("kmin", theta, {{"k2_min", k2min}}, {{"log_term", theta}});
        }
    }
    throw UsageError("bound_special: unknown case");
}

BoundResult bound_improved(const EnergySlice& slice, ImprovedForm form,
                           const TrialFunction& f1, const TrialFunction& f2,
                           const QuadratureConfig& cfg) {
    const TrialFunction a = f1, b = f2;
    const EnergySlice s = slice;

    // The bracketed combination whose sign changes are quadrature kinks.
    RealFn bracket;
    RealFn integrand;
    std::string name;
    switch (form) {
        case ImprovedForm::hj:
            name = "improved-hj";
            bracket = [s, a, b](double x) {
                const double j = b.value(x), jp = b.d1(x), h = a.value(x);
                return (s.k2(x) - 0.5 * b.d2(x) / j + 0.75 * jp * jp / (j * j)) / j -
                       j * h * h;
            };
            integrand = [s, a, b, br = bracket](double x) {
                const double h = a.value(x);
                if (!(h > 0.0) || !(b.value(x) > 0.0))
                    throw_non_positive("improved bound: trial <= 0");
                const double hp = a.d1(x);
                const double B = br(x);
                return std::sqrt(hp * hp + B * B) / (2.0 * h);
            };
            break;
        case ImprovedForm::hJ:
            name = "improved-hJ";
            bracket = [s, a, b](double x) {
                const double J = b.value(x), h = a.value(x);
                return J * J * (s.k2(x) + b.d2(x) / J) - h * h / (J * J);
            };
            integrand = [s, a, b, br = bracket](double x) {
                const double h = a.value(x);
                if (!(h > 0.0) || !(b.value(x) > 0.0))
                    throw_non_positive("improved bound: trial <= 0");
                const double hp = a.d1(x);
                const double B = br(x);
                return std::sqrt(hp * hp + B * B) / (2.0 * h);
            };
            break;
        case ImprovedForm::HJ:
            name = "improved-HJ";
            bracket = [s, b](double x) {
                const double J = b.value(x);
                return s.k2(x) + b.d2(x) / J;
            };
            integrand = [s, a, b](double x) {
                const double H = a.value(x), J = b.value(x);
                if (!(H > 0.0) || !(J > 0.0))
                    throw_non_positive("improved bound: trial <= 0");
                const double A = a.d1(x) + 2.0 * H * b.d1(x) / J;
                const double B = s.k2(x) + b.d2(x) / J - H * H;
                return std::sqrt(A * A + B * B) / (2.0 * H);
            };
            // For HJ the kinks follow the full bracket including -H^2.
            bracket = [s, a, b](double x) {
                const double H = a.value(x), J = b.value(x);
                return s.k2(x) + b.d2(x) / J - H * H;
            };
            break;
    }

    const Window w = integration_window(slice, integrand, cfg);
    if (w.divergent) return divergent_result(name, {});
    check_positive(f1, w.lo, w.hi, cfg.n_scan);
    check_positive(f2, w.lo, w.hi, cfg.n_scan);

    std::vector<double> trial_breaks = f1.breakpoints;
    trial_breaks.insert(trial_breaks.end(), f2.breakpoints.begin(), f2.breakpoints.end());
    const double integral = integrate(
        integrand, w.lo, w.hi, kink_splits(slice, bracket, w.lo, w.hi, cfg, trial_breaks), cfg);
    const double jump = log_jump_term(f1, w.lo, w.hi);
    return finish(name, integral + jump, {},
                  {{"integral", integral}, {"jump_term", jump}});
}

BoundResult bound_schwartzian(const EnergySlice& slice, const QuadratureConfig& cfg) {
    require_symmetric(slice, "schwartzian");
    if (!slice.profile.smooth)
        throw_not_differentiable("schwartzian: profile '" + slice.profile.name +
                                 "' has no continuous derivatives");
    const auto base = truncate_domain(slice, cfg.tail_tol);
    const double k2min = min_k2(slice, base.first, base.second, cfg);
    if (!(k2min > 0.0))
        throw_forbidden_region("schwartzian: k^2 <= 0 somewhere (min k^2 = " +
                               std::to_string(k2min) + ")");

    // (1/sqrt k)(1/sqrt k)'' = (5/16) V'^2 (E-V)^{-5/2} + (1/4) V'' (E-V)^{-3/2}
    const PotentialProfile prof = slice.profile;
    const double E = slice.energy;
    auto combo = [prof, E](double x) {
        const double g = E - prof.v(x);
        const double vp = prof.v1(x);
        return (5.0 / 16.0) * vp * vp / (g * g * std::sqrt(g)) +
               0.25 * prof.v2(x) / (g * std::sqrt(g));
    };
    auto integrand = [combo](double x) { return 0.5 * std::abs(combo(x)); };

    const Window w = integration_window(slice, integrand, cfg);
    if (w.divergent) return divergent_result("schwartzian", {});
    const double theta =
        integrate(integrand, w.lo, w.hi, kink_splits(slice, combo, w.lo, w.hi, cfg), cfg);
    return finish("schwartzian", theta, {}, {{"integral", theta}});
}

BoundResult bound_low_energy(const EnergySlice& slice, const QuadratureConfig& cfg) {
    require_symmetric(slice, "low-energy");
    const auto base = truncate_domain(slice, cfg.tail_tol);
    require_positive_potential(slice, base.first, base.second, cfg, "low-energy");
    require_single_minimum(slice, base.first, base.second, cfg, "low-energy");

    const double kinf = slice.k_minus_inf;
    const double kinf2 = kinf * kinf;
    auto excess = [&slice, kinf2](double x) { return kinf2 - slice.k2(x); };
    auto chi = [excess](double x) { return std::sqrt(std::max(excess(x), 0.0)); };

    const Window w = integration_window(slice, chi, cfg);
    if (w.divergent) return divergent_result("low-energy", {});
    const double chi_max = std::sqrt(std::max(grid_max(excess, w.lo, w.hi, cfg.n_scan), 0.0));
    const double peak_term = chi_max / kinf;
    const double integral =
        integrate(chi, w.lo, w.hi, kink_splits(slice, excess, w.lo, w.hi, cfg), cfg);
    return finish("low-energy", peak_term + integral, {},
                  {{"peak_term", peak_term}, {"integral", integral}});
}

BoundResult bound_old_low_energy(const EnergySlice& slice, const QuadratureConfig& cfg) {
    require_symmetric(slice, "old-low-energy");
    const auto base = truncate_domain(slice, cfg.tail_tol);
    require_positive_potential(slice, base.first, base.second, cfg, "old-low-energy");
    const double theta = allowed_deviation_theta(slice, nullptr, cfg, nullptr);
    if (std::isinf(theta)) return divergent_result("old-low-energy", {});
    return finish("old-low-energy", theta, {}, {{"integral", theta}});
}

BoundResult bound_wkb_like(const EnergySlice& slice, const QuadratureConfig& cfg) {
    require_symmetric(slice, "wkb-like");
    const auto base = truncate_domain(slice, cfg.tail_tol);
    require_single_minimum(slice, base.first, base.second, cfg, "wkb-like");

    const double kinf = slice.k_minus_inf;
    const ForbiddenRegionSummary fr = forbidden_regions(slice, base, cfg);
    const double t_penetration = fr.penetration_integral;
    const double t_kappa = fr.kappa_max / kinf;
    const double t_width = 0.5 * kinf * fr.total_width;
    const double t_allowed = allowed_deviation_theta(slice, &fr, cfg, nullptr);
    if (std::isinf(t_allowed)) return divergent_result("wkb-like", {});
    return finish("wkb-like", t_penetration + t_kappa + t_width + t_allowed, {},
                  {{"term_penetration", t_penetration},
                   {"term_kappa_max", t_kappa},
                   {"term_width", t_width},
                   {"term_allowed", t_allowed}});
}

WkbEstimate wkb_estimate(const EnergySlice& slice, const QuadratureConfig& cfg) {
    const auto base = truncate_domain(slice, cfg.tail_tol);
    const ForbiddenRegionSummary fr = forbidden_regions(slice, base, cfg);
    WkbEstimate est;
    if (fr.empty()) {
        est.no_barrier = true;
        return est;
    }
    est.penetration_integral = fr.penetration_integral;
    est.sech2_form = sech2(fr.penetration_integral + std::log(2.0));
    est.exp_form = std::exp(-2.0 * fr.penetration_integral);
    return est;
}

BoundResult bound_delta_mg(const EnergySlice& slice, double delta,
                           const QuadratureConfig& cfg) {
    const double km = slice.k_minus_inf, kp = slice.k_plus_inf;
    if (!(delta > 0.0) || delta > std::min(km, kp) * (1.0 + 1e-12))
        throw_invalid_delta("delta-mg needs 0 < Delta <= min{k-, k+}, got Delta = " +
                            std::to_string(delta));
    const auto base = truncate_domain(slice, cfg.tail_tol);
    require_positive_potential(slice, base.first, base.second, cfg, "delta-mg");
    require_single_minimum(slice, base.first, base.second, cfg, "delta-mg");

    const double d2 = delta * delta;
    auto excess = [&slice, d2](double x) { return d2 - slice.k2(x); };
    auto integrand = [excess](double x) { return std::sqrt(std::max(excess(x), 0.0)); };

    const Window w = integration_window(slice, integrand, cfg);
    if (w.divergent) return divergent_result("delta-mg", {{"delta", delta}});
    const double log_term = 0.5 * std::log(kp * km / d2);
    const double peak =
        std::sqrt(std::max(grid_max(excess, w.lo, w.hi, cfg.n_scan), 0.0)) / delta;
    const double integral =
        integrate(integrand, w.lo, w.hi, kink_splits(slice, excess, w.lo, w.hi, cfg), cfg);
    return finish("delta-mg", log_term + peak + integral, {{"delta", delta}},
                  {{"term_log", log_term}, {"term_peak", peak}, {"term_integral", integral}});
}

ParticleBound to_particle_bound(const BoundResult& b) {
    if (b.divergent)
        throw NumericError("DivergentBound",
                           "no finite particle-production bound for a divergent result");
    return {sinh2(b.theta), b.theta};
}

}  // namespace tbounds
