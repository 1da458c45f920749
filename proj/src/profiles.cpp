#include "tbounds/profiles.hpp"

#include <algorithm>
#include <cmath>

namespace tbounds {

namespace {

double sech(double u) { return 1.0 / std::cosh(u); }

std::map<std::string, double> merge_params(const std::string& name,
                                           const std::map<std::string, double>& defaults,
                                           const std::map<std::string, double>& overrides) {
    std::map<std::string, double> p = defaults;
    for (const auto& [key, value] : overrides) {
        auto it = p.find(key);
        if (it == p.end())
            throw UsageError("unknown parameter '" + key + "' for potential '" + name + "'");
        it->second = value;
    }
    return p;
}

PotentialProfile build(const std::string& name, const std::map<std::string, double>& overrides) {
    PotentialProfile prof;
    prof.name = name;

    if (name == "zero") {
        prof.params = merge_params(name, {}, overrides);
        prof.v = [](double) { return 0.0; };
        prof.dv = [](double) { return 0.0; };
        prof.d2v = [](double) { return 0.0; };
        return prof;
    }
    if (name == "square") {
        prof.params = merge_params(name, {{"V0", 1.0}, {"L", 1.0}}, overrides);
        const double V0 = prof.params.at("V0"), L = prof.params.at("L");
        prof.v = [V0, L](double x) { return (x > 0.0 && x < L) ? V0 : 0.0; };
        prof.dv = [](double) { return 0.0; };
        prof.d2v = [](double) { return 0.0; };
        prof.breakpoints = {0.0, L};
        prof.smooth = false;
        prof.window_lo = -1.0;
        prof.window_hi = L + 1.0;
        return prof;
    }
    if (name == "smooth-square") {
        prof.params = merge_params(name, {{"V0", 1.0}, {"L", 1.0}, {"s", 8.0}}, overrides);
        const double V0 = prof.params.at("V0"), L = prof.params.at("L"), s = prof.params.at("s");
        prof.v = [V0, L, s](double x) {
            return 0.5 * V0 * (std::tanh(s * x) - std::tanh(s * (x - L)));
        };
        prof.dv = [V0, L, s](double x) {
            const double a = sech(s * x), b = sech(s * (x - L));
            return 0.5 * V0 * s * (a * a - b * b);
        };
        prof.d2v = [V0, L, s](double x) {
            const double a = sech(s * x), ta = std::tanh(s * x);
            const double b = sech(s * (x - L)), tb = std::tanh(s * (x - L));
            return V0 * s * s * (b * b * tb - a * a * ta);
        };
        prof.window_lo = -1.0;
        prof.window_hi = L + 1.0;
        return prof;
    }
    if (name == "sech2") {
        prof.params = merge_params(name, {{"V0", 1.0}, {"a", 1.0}}, overrides);
        const double V0 = prof.params.at("V0"), a = prof.params.at("a");
        prof.v = [V0, a](double x) {
            const double s = sech(x / a);
            return V0 * s * s;
        };
        prof.dv = [V0, a](double x) {
            const double u = x / a, s = sech(u);
            return -2.0 * V0 / a * s * s * std::tanh(u);
        };
        prof.d2v = [V0, a](double x) {
            const double u = x / a, s = sech(u), t = std::tanh(u);
            return V0 / (a * a) * (4.0 * s * s * t * t - 2.0 * s * s * s * s);
        };
        prof.window_lo = -2.0 * a;
        prof.window_hi = 2.0 * a;
        return prof;
    }
    if (name == "step") {
        prof.params = merge_params(name, {{"Vp", 1.0}}, overrides);
        const double Vp = prof.params.at("Vp");
        prof.v = [Vp](double x) { return x > 0.0 ? Vp : 0.0; };
        prof.dv = [](double) { return 0.0; };
        prof.d2v = [](double) { return 0.0; };
        prof.breakpoints = {0.0};
        prof.smooth = false;
        prof.v_plus_inf = Vp;
        return prof;
    }
    if (name == "smooth-step") {
        prof.params = merge_params(name, {{"Vp", 1.0}, {"a", 1.0}}, overrides);
        const double Vp = prof.params.at("Vp"), a = prof.params.at("a");
        prof.v = [Vp, a](double x) { return 0.5 * Vp * (1.0 + std::tanh(x / a)); };
        prof.dv = [Vp, a](double x) {
            const double s = sech(x / a);
            return 0.5 * Vp / a * s * s;
        };
        prof.d2v = [Vp, a](double x) {
            const double u = x / a, s = sech(u);
            return -Vp / (a * a) * s * s * std::tanh(u);
        };
        prof.v_plus_inf = Vp;
        prof.window_lo = -2.0 * a;
        prof.window_hi = 2.0 * a;
        return prof;
    }
    if (name == "gauss") {
        prof.params = merge_params(name, {{"V0", 1.0}, {"a", 1.0}}, overrides);
        const double V0 = prof.params.at("V0"), a = prof.params.at("a");
        prof.v = [V0, a](double x) { return V0 * std::exp(-x * x / (a * a)); };
        prof.dv = [V0, a](double x) {
            return V0 * (-2.0 * x / (a * a)) * std::exp(-x * x / (a * a));
        };
        prof.d2v = [V0, a](double x) {
            const double a2 = a * a;
            return V0 * (4.0 * x * x / (a2 * a2) - 2.0 / a2) * std::exp(-x * x / a2);
        };
        prof.window_lo = -2.0 * a;
        prof.window_hi = 2.0 * a;
        return prof;
    }
    throw UsageError("unknown potential '" + name + "'");
}

}  // namespace

std::vector<std::string> corpus_names() {
    return {"zero", "square", "smooth-square", "sech2", "step", "smooth-step", "gauss"};
}

std::vector<PotentialProfile> make_corpus() {
    std::vector<PotentialProfile> corpus;
    for (const auto& name : corpus_names()) corpus.push_back(build(name, {}));
    return corpus;
}

PotentialProfile make_profile(const std::string& name,
                              const std::map<std::string, double>& overrides) {
    return build(name, overrides);
}

EnergySlice::EnergySlice(PotentialProfile prof, double E)
    : profile(std::move(prof)), energy(E) {
    const double vmax = std::max(profile.v_minus_inf, profile.v_plus_inf);
    if (!(E > vmax))
        throw_invalid_energy("scattering requires E > max{V-inf, V+inf} = " +
                             std::to_string(vmax) + ", got E = " + std::to_string(E));
    k_minus_inf = std::sqrt(E - profile.v_minus_inf);
    k_plus_inf = std::sqrt(E - profile.v_plus_inf);
}

bool EnergySlice::symmetric_asymptotics() const {
    return std::abs(profile.v_minus_inf - profile.v_plus_inf) <=
           1e-12 * (1.0 + std::abs(profile.v_minus_inf) + std::abs(profile.v_plus_inf));
}

double k_squared(const EnergySlice& slice, double x) { return slice.k2(x); }

ForbiddenRegionSummary forbidden_regions(const EnergySlice& slice,
                                         std::pair<double, double> domain,
                                         const QuadratureConfig& cfg) {
    const auto [a, b] = domain;
    const int n_scan = cfg.n_scan;
    auto k2 = [&slice](double x) { return slice.k2(x); };
    ForbiddenRegionSummary out;

    std::vector<double> roots = bracket_roots(k2, a, b, n_scan, cfg.root_tol);
    if (k2(a) < 0 || k2(b) < 0)
        throw_precondition("forbidden_regions: k^2 < 0 at the domain boundary; "
                           "domain must contain all sign changes");
    if (roots.size() % 2 != 0)
        throw NumericError("NonConvergent",
                           "forbidden_regions: unpaired turning point (feature narrower "
                           "than the scan step?)");

    auto kappa = [&k2](double x) { return std::sqrt(std::max(-k2(x), 0.0)); };
    for (size_t i = 0; i + 1 < roots.size(); i += 2) {
        const double lo = roots[i], hi = roots[i + 1];
        // Midpoint sign decides whether [lo,hi] is forbidden or allowed.
        if (k2(0.5 * (lo + hi)) >= 0) continue;
        out.intervals.emplace_back(lo, hi);
        out.total_width += hi - lo;
        std::vector<double> splits;
        for (double bp : slice.profile.breakpoints)
            if (bp > lo && bp < hi) splits.push_back(bp);
        out.penetration_integral += integrate(kappa, lo, hi, splits, cfg);
        out.kappa_max = std::max(out.kappa_max, grid_max(kappa, lo, hi, n_scan));
    }
    return out;
}

}  // namespace tbounds
