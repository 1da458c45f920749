#include "tbounds/optimize.hpp"

#include <algorithm>
#include <cmath>

namespace tbounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct DeltaEvaluator {
    const EnergySlice& slice;
    DeltaFamily family;
    const QuadratureConfig& cfg;
    OptimizationReport* rep;
    BoundResult best;
    double best_theta = kInf;
    double best_delta = 0.0;

    double operator()(double delta) {
        double theta = kInf;
        try {
            BoundResult b = family == DeltaFamily::DeltaCut
                                ? bound_special(slice, SpecialCase::DeltaCut,
                                                {{"delta", delta}}, nullptr, cfg)
                                : bound_delta_mg(slice, delta, cfg);
            theta = b.theta;
            if (theta < best_theta) {
                best_theta = theta;
                best_delta = delta;
                best = std::move(b);
            }
        } catch (const PreconditionError&) {
            // infeasible Delta; leave theta = inf
        }
        rep->trace.push_back({{{"delta", delta}}, theta});
        ++rep->evaluations;
        return theta;
    }
};

}  // namespace

OptimizationReport optimize_delta(const EnergySlice& slice, DeltaFamily family,
                                  const QuadratureConfig& cfg) {
    const double hi = std::min(slice.k_minus_inf, slice.k_plus_inf);
    const auto base = truncate_domain(slice, cfg.tail_tol);
    const double k2min =
        grid_min([&slice](double x) { return slice.k2(x); }, base.first, base.second,
                 cfg.n_scan);
    const double lo =
        family == DeltaFamily::DeltaCut ? std::sqrt(std::max(k2min, 0.0)) : 0.0;
    if (!(hi > 0.0) || lo > hi * (1.0 + 1e-12))
        throw_precondition("optimize_delta: empty valid Delta interval");

    OptimizationReport rep;
    DeltaEvaluator eval{slice, family, cfg, &rep, {}, kInf, 0.0};

    if (hi - lo <= 1e-12 * hi) {
        // Degenerate interval: the asymptotic value is the only candidate.
        eval(hi);
    } else {
        // 64-point scan (endpoints included, lower end nudged inside), then
        // golden-section inside the bracketing cells around the best point.
        const int n_grid = 64;
        const double eps = 1e-9 * (hi - lo);
        std::vector<double> ds(n_grid), th(n_grid);
        for (int i = 0; i < n_grid; ++i) {
            ds[i] = lo + (hi - lo) * double(i) / double(n_grid - 1);
            if (i == 0) ds[i] += eps;
            th[i] = eval(ds[i]);
        }
        int ibest = int(std::min_element(th.begin(), th.end()) - th.begin());
        double a = ds[std::max(0, ibest - 1)];
        double b = ds[std::min(n_grid - 1, ibest + 1)];
        constexpr double invphi = 0.6180339887498949;
        double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
        double f1 = eval(x1), f2 = eval(x2);
        for (int it = 0; it < 60 && b - a > 1e-9 * (hi - lo); ++it) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - invphi * (b - a);
                f1 = eval(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + invphi * (b - a);
                f2 = eval(x2);
            }
        }
    }

    if (!std::isfinite(eval.best_theta))
        throw_precondition("optimize_delta: no feasible Delta in the valid interval");
    rep.best_params = {{"delta", eval.best_delta}};
    rep.best_bound = eval.best;
    return rep;
}

TrialSearchSpec hj_bump_family(const EnergySlice& slice) {
    if (!slice.symmetric_asymptotics())
        throw_asymmetric("hj_bump_family: H = k_inf needs symmetric asymptotics");
    const double kinf = slice.k_minus_inf;
    TrialSearchSpec spec;
    spec.name = "hj-bump";
    spec.param_names = {"amplitude", "width"};
    spec.box = {{-0.75, 3.0}, {0.2, 8.0}};
    spec.start = {0.0, 1.0};
    spec.evaluate = [kinf](const EnergySlice& s, const std::vector<double>& p,
                           const QuadratureConfig& c) {
        const TrialFunction H = TrialFunction::constant(kinf);
        const TrialFunction J = TrialFunction::sech_bump(1.0, p[0], p[1]);
        return bound_improved(s, ImprovedForm::HJ, H, J, c);
    };
    return spec;
}

OptimizationReport optimize_trial(const EnergySlice& slice, const TrialSearchSpec& family,
                                  long budget, const QuadratureConfig& cfg) {
    const size_t dim = family.box.size();
    OptimizationReport rep;
    BoundResult best;
    double best_theta = kInf;
    std::vector<double> best_p;

    auto clamp = [&family](std::vector<double> p) {
        for (size_t d = 0; d < p.size(); ++d)
            p[d] = std::clamp(p[d], family.box[d].first, family.box[d].second);
        return p;
    };
    auto as_params = [&family](const std::vector<double>& p) {
        std::map<std::string, double> m;
        for (size_t d = 0; d < p.size(); ++d) m[family.param_names[d]] = p[d];
        return m;
    };
    auto eval = [&](const std::vector<double>& p) -> double {
        double theta = kInf;
        try {
            BoundResult b = family.evaluate(slice, p, cfg);
            theta = b.theta;
            if (theta < best_theta) {
                best_theta = theta;
                best = std::move(b);
                best_p = p;
            }
        } catch (const PreconditionError&) {
        }
        rep.trace.push_back({as_params(p), theta});
        ++rep.evaluations;
        return theta;
    };

    std::vector<double> p = clamp(family.start);
    std::vector<double> step(dim);
    for (size_t d = 0; d < dim; ++d)
        step[d] = 0.25 * (family.box[d].second - family.box[d].first);

    double fp = eval(p);
    bool budget_hit = rep.evaluations >= budget;
    while (!budget_hit) {
        double max_rel_step = 0.0;
        for (size_t d = 0; d < dim; ++d)
            max_rel_step = std::max(
                max_rel_step, step[d] / (family.box[d].second - family.box[d].first));
        if (max_rel_step < 1e-3) break;

        // Evaluate the full compass stencil, move to the best improving point.
        std::vector<double> cand = p;
        double fc = fp;
        for (size_t d = 0; d < dim && !budget_hit; ++d) {
            for (double dir : {+1.0, -1.0}) {
                std::vector<double> q = clamp([&] {
                    auto t = p;
                    t[d] += dir * step[d];
                    return t;
                }());
                if (q[d] == p[d]) continue;
                const double fq = eval(q);
                budget_hit = rep.evaluations >= budget;
                if (fq < fc) {
                    fc = fq;
                    cand = q;
                }
                if (budget_hit) break;
            }
        }
        if (fc < fp - 1e-15) {
            p = cand;
            fp = fc;
        } else {
            for (auto& st : step) st *= 0.5;
        }
    }

    rep.budget_exhausted = budget_hit;
    if (!std::isfinite(best_theta))
        throw_precondition("optimize_trial: no feasible point evaluated");
    rep.best_params = as_params(best_p);
    rep.best_bound = best;
    return rep;
}

BoundResult best_bound(const EnergySlice& slice, const QuadratureConfig& cfg,
                       bool include_trial_search, long trial_budget) {
    std::vector<std::pair<std::string, BoundResult>> candidates;
    auto attempt = [&candidates](const std::string& name, auto&& fn) {
        try {
            candidates.emplace_back(name, fn());
        } catch (const PreconditionError&) {
            BoundResult failed;
            failed.family = name;
            failed.theta = std::numeric_limits<double>::quiet_NaN();
            failed.bound = std::numeric_limits<double>::quiet_NaN();
            failed.divergent = true;
            candidates.emplace_back(name, std::move(failed));
        }
    };

    attempt("hconst", [&] { return bound_special(slice, SpecialCase::HConst, {}, nullptr, cfg); });
    attempt("monotone-h",
            [&] { return bound_special(slice, SpecialCase::MonotoneH, {}, nullptr, cfg); });
    attempt("kmin", [&] { return bound_special(slice, SpecialCase::KMin, {}, nullptr, cfg); });
    attempt("low-energy", [&] { return bound_low_energy(slice, cfg); });
    attempt("old-low-energy", [&] { return bound_old_low_energy(slice, cfg); });
    attempt("wkb-like", [&] { return bound_wkb_like(slice, cfg); });
    attempt("schwartzian", [&] { return bound_schwartzian(slice, cfg); });
    attempt("delta-cut",
            [&] { return optimize_delta(slice, DeltaFamily::DeltaCut, cfg).best_bound; });
    attempt("delta-mg",
            [&] { return optimize_delta(slice, DeltaFamily::DeltaMG, cfg).best_bound; });
    if (include_trial_search)
        attempt("hj-bump", [&] {
            return optimize_trial(slice, hj_bump_family(slice), trial_budget, cfg).best_bound;
        });

    const BoundResult* winner = nullptr;
    for (const auto& [name, b] : candidates) {
        if (std::isnan(b.bound) || b.divergent) continue;
        if (!winner || b.bound > winner->bound) winner = &b;
    }

    BoundResult out;
    if (winner) {
        out = *winner;
        out.family = "best[" + out.family + "]";
    } else {
        out.family = "best[none]";
        out.theta = std::numeric_limits<double>::infinity();
        out.bound = 0.0;
        out.divergent = true;
    }
    for (const auto& [name, b] : candidates) out.diagnostics["cand_" + name] = b.bound;
    return out;
}

}  // namespace tbounds
