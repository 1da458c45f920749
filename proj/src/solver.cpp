#include "tbounds/solver.hpp"

#include <algorithm>
#include <cmath>

namespace tbounds {

namespace {

using Cplx = std::complex<double>;

// Two-port scattering matrix: b = r a + tp d, c = t a + rp d for incoming
// amplitudes a (from the left) and d (from the right).
struct SMatrix {
    Cplx r, t, rp, tp;
};

// Redheffer star product: A on the left, B on the right.
inline SMatrix star(const SMatrix& A, const SMatrix& B) {
    const Cplx d = 1.0 / (1.0 - A.rp * B.r);
    return {A.r + A.tp * B.r * A.t * d, B.t * A.t * d, B.rp + B.t * A.rp * B.tp * d,
            A.tp * B.tp * d};
}

// Wavenumber branch with Im k >= 0, so the propagation factor e^{ikw} decays
// through forbidden segments.
inline Cplx wavenumber(double k2) {
    if (k2 == 0.0) k2 = 1e-200;  // degenerate turning-point segment
    return k2 > 0 ? Cplx(std::sqrt(k2), 0.0) : Cplx(0.0, std::sqrt(-k2));
}

// Interface from medium k1 into k2 followed by propagation over width w in k2,
// fused into one scattering matrix: {r1, p t1, p^2 r1', p t1'}.
inline SMatrix segment(Cplx k1, Cplx k2, double w) {
    const Cplx s = 1.0 / (k1 + k2);
    const Cplx p = k2.imag() == 0.0
                       ? Cplx(std::cos(k2.real() * w), std::sin(k2.real() * w))
                       : Cplx(std::exp(-k2.imag() * w), 0.0);
    return {(k1 - k2) * s, p * (2.0 * k1 * s), p * p * ((k2 - k1) * s), p * (2.0 * k2 * s)};
}

struct SolveOnce {
    double T, R;
    Cplx t, r;
};

SolveOnce solve_grid(const RealFn& k2, double a, double b, double k_minus, double k_plus,
                     const std::vector<double>& bps, long n) {
    // March left to right over the uniform grid, splitting segments at the
    // (sorted) breakpoints so piecewise-constant potentials are exact.
    const double span = b - a;
    const double tiny = 1e-15 * span;
    Cplx k_prev(k_minus, 0.0);
    SMatrix S{0.0, 1.0, 0.0, 1.0};

    auto emit = [&](double lo, double hi) {
        const Cplx k = wavenumber(k2(0.5 * (lo + hi)));
        S = star(S, segment(k_prev, k, hi - lo));
        k_prev = k;
    };

    size_t bi = 0;
    while (bi < bps.size() && bps[bi] <= a + tiny) ++bi;
    double x = a;
    for (long i = 1; i <= n; ++i) {
        const double xe = (i == n) ? b : a + span * double(i) / double(n);
        while (bi < bps.size() && bps[bi] < xe - tiny) {
            if (bps[bi] > x + tiny) {
                emit(x, bps[bi]);
                x = bps[bi];
            }
            ++bi;
        }
        if (xe > x + tiny) {
            emit(x, xe);
            x = xe;
        }
    }
    S = star(S, SMatrix{(k_prev - k_plus) / (k_prev + k_plus), 2.0 * k_prev / (k_prev + k_plus),
                        (k_plus - k_prev) / (k_prev + k_plus),
                        2.0 * k_plus / (k_prev + k_plus)});

    SolveOnce out;
    out.t = S.t;
    out.r = S.r;
    out.T = (k_plus / k_minus) * std::norm(S.t);
    out.R = std::norm(S.r);
    return out;
}

}  // namespace

ScatteringResult scatter_k2(const RealFn& k2, double x_min, double x_max, double k_minus,
                            double k_plus, const std::vector<double>& breakpoints,
                            const SolverConfig& cfg) {
    if (!(x_min < x_max)) throw UsageError("scatter_k2: requires x_min < x_max");
    if (cfg.n_init < 16) throw UsageError("scatter_k2: n_init must be >= 16");
    if (!(k_minus > 0.0) || !(k_plus > 0.0))
        throw_invalid_energy("scatter_k2: asymptotic wavenumbers must be positive");

    std::vector<double> bps = breakpoints;
    std::sort(bps.begin(), bps.end());

    long n = cfg.n_init;
    SolveOnce prev = solve_grid(k2, x_min, x_max, k_minus, k_plus, bps, n);
    for (int r = 1; r <= cfg.max_refine; ++r) {
        n *= 2;
        const SolveOnce cur = solve_grid(k2, x_min, x_max, k_minus, k_plus, bps, n);
        const double change = std::abs(cur.T - prev.T) / std::max(std::abs(cur.T), 1e-300);
        if (change < cfg.refine_tol) {
            ScatteringResult res;
            res.t_amp = cur.t;
            res.r_amp = cur.r;
            res.transmission = cur.T;
            res.reflection = cur.R;
            res.unitarity_defect = std::abs(cur.T + cur.R - 1.0);
            res.grid_size = n;
            return res;
        }
        prev = cur;
    }
    throw_non_convergent("scatter_k2: transmission did not stabilize to refine_tol=" +
                         std::to_string(cfg.refine_tol) + " within " +
                         std::to_string(cfg.max_refine) + " grid doublings");
}

ScatteringResult transmission(const EnergySlice& slice, const SolverConfig& cfg) {
    double a = cfg.x_min, b = cfg.x_max;
    if (std::isnan(a) || std::isnan(b)) {
        const auto window = truncate_domain(slice, cfg.tail_tol);
        if (std::isnan(a)) a = window.first;
        if (std::isnan(b)) b = window.second;
    }
    auto k2 = [&slice](double x) { return slice.k2(x); };
    ScatteringResult res = scatter_k2(k2, a, b, slice.k_minus_inf, slice.k_plus_inf,
                                      slice.profile.breakpoints, cfg);
    res.energy = slice.energy;
    return res;
}

double oracle_transmission(const std::string& name,
                           const std::map<std::string, double>& params, double energy) {
    auto get = [&params](const std::string& key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };

    if (name == "zero") {
        if (!(energy > 0)) throw_invalid_energy("oracle: zero potential needs E > 0");
        return 1.0;
    }
    if (name == "square") {
        const double V0 = get("V0", 1.0), L = get("L", 1.0);
        if (!(energy > 0)) throw_invalid_energy("oracle: square barrier needs E > 0");
        // T^-1 = 1 + (V0^2 / 4E) s(L)^2 with s = sin(k2 L)/k2 above the barrier
        // and sinh(kappa L)/kappa below; both tend to L at E = V0.
        double s;
        if (energy > V0) {
            const double k2 = std::sqrt(energy - V0);
            s = std::sin(k2 * L) / k2;
        } else if (energy < V0) {
            const double kap = std::sqrt(V0 - energy);
            s = std::sinh(kap * L) / kap;
        } else {
            s = L;
        }
        return 1.0 / (1.0 + V0 * V0 * s * s / (4.0 * energy));
    }
    if (name == "step") {
        const double Vp = get("Vp", 1.0);
        if (!(energy > std::max(Vp, 0.0)))
            throw_invalid_energy("oracle: step needs E > max{Vp, 0}");
        const double km = std::sqrt(energy), kp = std::sqrt(energy - Vp);
        return 4.0 * km * kp / ((km + kp) * (km + kp));
    }
    if (name == "sech2") {
        const double V0 = get("V0", 1.0), a = get("a", 1.0);
        if (!(energy > 0)) throw_invalid_energy("oracle: sech2 barrier needs E > 0");
        // Poschl-Teller: T = sinh^2(pi k a) / (sinh^2(pi k a) + c^2) where
        // c = cos(pi/2 sqrt(1 - 4 V0 a^2)), turning into cosh for 4 V0 a^2 > 1.
        const double k = std::sqrt(energy);
        const double disc = 1.0 - 4.0 * V0 * a * a;
        const double c = disc >= 0 ? std::cos(0.5 * M_PI * std::sqrt(disc))
                                   : std::cosh(0.5 * M_PI * std::sqrt(-disc));
        const double s2 = sinh2(M_PI * k * a);
        return s2 / (s2 + c * c);
    }
    throw_no_oracle("no closed-form transmission for potential '" + name + "'");
}

}  // namespace tbounds
