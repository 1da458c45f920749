// tbounds command-line front end: energy sweeps, single-bound reports,
// transformation invariance checks and corpus listing, with deterministic
// CSV/JSON emission.
//
// Exit codes: 0 ok, 1 numeric failure, 2 usage, 3 violated precondition.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tbounds/millergood.hpp"
#include "tbounds/optimize.hpp"

using ojson = nlohmann::ordered_json;
using namespace tbounds;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Settings {
    QuadratureConfig quad{};
    int n_init = 256;
    double refine_tol = 1e-9;
    int max_refine = 14;
    long opt_budget = 200;
};

SolverConfig solver_config(const Settings& s) {
    SolverConfig cfg;
    cfg.n_init = s.n_init;
    cfg.refine_tol = s.refine_tol;
    cfg.max_refine = s.max_refine;
    cfg.tail_tol = s.quad.tail_tol;
    return cfg;
}

// Scientific notation, 12 significant digits; anything non-finite is the
// NaN sentinel so CSV rows stay aligned.
std::string fmt(double v) {
    if (!std::isfinite(v)) return "NaN";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

std::map<std::string, double> parse_kv(const std::string& text, const char* what) {
    std::map<std::string, double> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw UsageError(std::string(what) + ": expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        try {
            size_t used = 0;
            const double val = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("");
            out[key] = val;
        } catch (const std::exception&) {
            throw UsageError(std::string(what) + ": bad numeric value in '" + item + "'");
        }
    }
    return out;
}

void apply_config_file(Settings& s, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string t) {
            const auto b = t.find_first_not_of(" \t\r");
            const auto e = t.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        double val = 0;
        try {
            val = std::stod(trim(line.substr(eq + 1)));
        } catch (const std::exception&) {
            throw UsageError("config line " + std::to_string(lineno) + ": bad value");
        }
        if (key == "abs_tol") s.quad.abs_tol = val;
        else if (key == "rel_tol") s.quad.rel_tol = val;
        else if (key == "max_depth") s.quad.max_depth = int(val);
        else if (key == "tail_tol") s.quad.tail_tol = val;
        else if (key == "root_tol") s.quad.root_tol = val;
        else if (key == "n_scan") s.quad.n_scan = int(val);
        else if (key == "n_init") s.n_init = int(val);
        else if (key == "refine_tol") s.refine_tol = val;
        else if (key == "max_refine") s.max_refine = int(val);
        else if (key == "opt_budget") s.opt_budget = long(val);
        else throw UsageError("config: unknown key '" + key + "'");
    }
}

TrialFunction build_trial(const std::string& name, std::map<std::string, double> tp,
                          const EnergySlice& slice) {
    auto get = [&tp](const std::string& key, double dflt) {
        auto it = tp.find(key);
        if (it == tp.end()) return dflt;
        const double v = it->second;
        tp.erase(it);
        return v;
    };
    TrialFunction f;
    if (name == "constant" || name == "identity") {
        f = TrialFunction::constant(get("c", name == "identity" ? 1.0 : slice.k_minus_inf));
    } else if (name == "interp") {
        const double l = get("left", slice.k_minus_inf), r = get("right", slice.k_plus_inf);
        f = TrialFunction::tanh_interpolant(l, r, get("scale", 1.0), get("center", 0.0));
    } else if (name == "bump") {
        f = TrialFunction::sech_bump(get("base", 1.0), get("amplitude", 0.5),
                                     get("width", 1.0), get("center", 0.0));
    } else if (name == "slice-k") {
        f = TrialFunction::slice_k(slice);
    } else if (name == "exp") {
        f = TrialFunction::exponential(get("base", 1.0), get("rate", 0.1));
    } else {
        throw UsageError("unknown trial family '" + name +
                         "' (expected constant|identity|interp|bump|slice-k|exp)");
    }
    if (!tp.empty())
        throw UsageError("unknown trial parameter '" + tp.begin()->first + "' for family '" +
                         name + "'");
    return f;
}

TrialFunction default_h(const EnergySlice& slice) {
    return slice.symmetric_asymptotics()
               ? TrialFunction::constant(slice.k_minus_inf)
               : TrialFunction::tanh_interpolant(slice.k_minus_inf, slice.k_plus_inf, 1.0);
}

ojson to_json(const std::map<std::string, double>& m) {
    ojson j = ojson::object();
    for (const auto& [k, v] : m) j[k] = v;
    return j;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
    double E = kNaN, T = kNaN, R = kNaN, defect = kNaN;
    double b_hconst = kNaN, b_low = kNaN, b_wkb = kNaN, b_dmg = kNaN, b_schw = kNaN,
           b_best = kNaN;
    double n_exact = kNaN, n_best = kNaN;
};

const char* kSweepHeader =
    "E,T_exact,R_exact,unitarity_defect,b_hconst,b_low_energy,b_wkb_like,"
    "b_delta_mg,b_schwartzian,b_best,N_exact,N_bound_best";

SweepRow compute_row(const PotentialProfile& prof, double E, const Settings& s,
                     bool trial_search, bool keep_going) {
    SweepRow row;
    row.E = E;
    EnergySlice slice(prof, E);
    try {
        const ScatteringResult res = transmission(slice, solver_config(s));
        row.T = res.transmission;
        row.R = res.reflection;
        row.defect = res.unitarity_defect;
        row.n_exact = (1.0 - row.T) / row.T;
    } catch (const NumericError& e) {
        if (!keep_going) throw;
        std::cerr << "warning: E=" << fmt(E) << ": " << e.what() << "\n";
        return row;
    }

    auto attempt = [](auto&& fn) -> double {
        try {
            const BoundResult b = fn();
            return b.divergent ? kNaN : b.bound;
        } catch (const PreconditionError&) {
            return kNaN;
        }
    };
    row.b_hconst =
        attempt([&] { return bound_special(slice, SpecialCase::HConst, {}, nullptr, s.quad); });
    row.b_low = attempt([&] { return bound_low_energy(slice, s.quad); });
    row.b_wkb = attempt([&] { return bound_wkb_like(slice, s.quad); });
    row.b_dmg = attempt(
        [&] { return optimize_delta(slice, DeltaFamily::DeltaMG, s.quad).best_bound; });
    row.b_schw = attempt([&] { return bound_schwartzian(slice, s.quad); });
    try {
        const BoundResult best = best_bound(slice, s.quad, trial_search, s.opt_budget);
        if (!best.divergent && std::isfinite(best.bound)) {
            row.b_best = best.bound;
            row.n_best = sinh2(best.theta);
            if (!std::isfinite(row.n_best)) row.n_best = kNaN;
        }
    } catch (const PreconditionError&) {
    }
    return row;
}

int cmd_sweep(const std::string& pot, const std::string& params_text, double emin,
              double emax, int n, bool log_spacing, const std::string& format,
              bool keep_going, bool trial_search, const Settings& s) {
    const PotentialProfile prof = make_profile(pot, parse_kv(params_text, "--params"));
    const double vmax = std::max(prof.v_minus_inf, prof.v_plus_inf);
    if (n < 2) throw UsageError("sweep: need n >= 2");
    if (!(emin > vmax))
        throw UsageError("sweep: emin must exceed max{V-inf, V+inf} = " + fmt(vmax));
    if (!(emax >= emin)) throw UsageError("sweep: need emax >= emin");
    if (log_spacing && !(emin > 0)) throw UsageError("sweep: log spacing needs emin > 0");
    if (format != "csv" && format != "json")
        throw UsageError("sweep: --format must be csv or json");

    std::vector<double> energies(n);
    for (int i = 0; i < n; ++i) {
        const double t = double(i) / double(n - 1);
        energies[i] = log_spacing ? std::exp(std::log(emin) + t * (std::log(emax) - std::log(emin)))
                                  : emin + t * (emax - emin);
    }

    std::vector<SweepRow> rows;
    rows.reserve(n);
    for (double E : energies) rows.push_back(compute_row(prof, E, s, trial_search, keep_going));

    if (format == "csv") {
        std::string out = kSweepHeader;
        out += '\n';
        for (const SweepRow& r : rows) {
            out += fmt(r.E) + ',' + fmt(r.T) + ',' + fmt(r.R) + ',' + fmt(r.defect) + ',' +
                   fmt(r.b_hconst) + ',' + fmt(r.b_low) + ',' + fmt(r.b_wkb) + ',' +
                   fmt(r.b_dmg) + ',' + fmt(r.b_schw) + ',' + fmt(r.b_best) + ',' +
                   fmt(r.n_exact) + ',' + fmt(r.n_best) + '\n';
        }
        std::fwrite(out.data(), 1, out.size(), stdout);
    } else {
        ojson doc;
        doc["command"] = "sweep";
        doc["potential"] = prof.name;
        doc["params"] = to_json(prof.params);
        doc["rows"] = ojson::array();
        for (const SweepRow& r : rows) {
            ojson jr;
            jr["E"] = r.E;
            jr["T_exact"] = r.T;
            jr["R_exact"] = r.R;
            jr["unitarity_defect"] = r.defect;
            jr["b_hconst"] = r.b_hconst;
            jr["b_low_energy"] = r.b_low;
            jr["b_wkb_like"] = r.b_wkb;
            jr["b_delta_mg"] = r.b_dmg;
            jr["b_schwartzian"] = r.b_schw;
            jr["b_best"] = r.b_best;
            jr["N_exact"] = r.n_exact;
            jr["N_bound_best"] = r.n_best;
            doc["rows"].push_back(std::move(jr));
        }
        std::cout << doc.dump(2) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// bound

int cmd_bound(const std::string& family, const std::string& pot,
              const std::string& params_text, double energy, double delta, bool optimize,
              const std::string& trial_name, const std::string& trial_params,
              bool trial_search, const Settings& s) {
    const PotentialProfile prof = make_profile(pot, parse_kv(params_text, "--params"));
    const EnergySlice slice(prof, energy);

    auto trial = [&]() {
        return trial_name.empty()
                   ? default_h(slice)
                   : build_trial(trial_name, parse_kv(trial_params, "--trial-params"), slice);
    };

    ojson doc;
    doc["command"] = "bound";
    doc["potential"] = prof.name;
    doc["params"] = to_json(prof.params);
    doc["energy"] = energy;
    doc["family"] = family;

    if (family == "wkb-estimate") {
        const WkbEstimate est = wkb_estimate(slice, s.quad);
        doc["kind"] = "estimate (not a bound)";
        doc["sech2_form"] = est.sech2_form;
        doc["exp_form"] = est.exp_form;
        doc["no_barrier"] = est.no_barrier;
        doc["penetration_integral"] = est.penetration_integral;
        std::cout << doc.dump(2) << "\n";
        return 0;
    }

    BoundResult b;
    ojson opt_info;
    if (family == "basic") {
        b = bound_basic(slice, trial(), s.quad);
    } else if (family == "basic-weak") {
        b = bound_basic_weak(slice, trial(), s.quad);
    } else if (family == "hconst") {
        b = bound_special(slice, SpecialCase::HConst, {}, nullptr, s.quad);
    } else if (family == "monotone-h") {
        if (trial_name.empty()) {
            b = bound_special(slice, SpecialCase::MonotoneH, {}, nullptr, s.quad);
        } else {
            const TrialFunction h = trial();
            b = bound_special(slice, SpecialCase::MonotoneH, {}, &h, s.quad);
        }
    } else if (family == "single-extremum") {
        if (trial_name.empty())
            throw UsageError("single-extremum requires --trial");
        const TrialFunction h = trial();
        b = bound_special(slice, SpecialCase::SingleExtremum, {}, &h, s.quad);
    } else if (family == "kmin") {
        b = bound_special(slice, SpecialCase::KMin, {}, nullptr, s.quad);
    } else if (family == "delta-cut" || family == "delta-mg") {
        const DeltaFamily fam =
            family == "delta-cut" ? DeltaFamily::DeltaCut : DeltaFamily::DeltaMG;
        if (optimize) {
            const OptimizationReport rep = optimize_delta(slice, fam, s.quad);
            b = rep.best_bound;
            opt_info["optimized_delta"] = rep.best_params.at("delta");
            opt_info["evaluations"] = rep.evaluations;
        } else {
            if (std::isnan(delta)) throw UsageError(family + " requires --delta or --optimize");
            b = fam == DeltaFamily::DeltaCut
                    ? bound_special(slice, SpecialCase::DeltaCut, {{"delta", delta}}, nullptr,
                                    s.quad)
                    : bound_delta_mg(slice, delta, s.quad);
        }
    } else if (family == "schwartzian") {
        b = bound_schwartzian(slice, s.quad);
    } else if (family == "low-energy") {
        b = bound_low_energy(slice, s.quad);
    } else if (family == "old-low-energy") {
        b = bound_old_low_energy(slice, s.quad);
    } else if (family == "wkb-like") {
        b = bound_wkb_like(slice, s.quad);
    } else if (family == "best") {
        b = best_bound(slice, s.quad, trial_search, s.opt_budget);
    } else {
        throw UsageError("unknown bound family '" + family + "'");
    }

    doc["theta"] = std::isfinite(b.theta) ? ojson(b.theta) : ojson(nullptr);
    doc["bound"] = b.bound;
    doc["divergent"] = b.divergent;
    doc["bound_params"] = to_json(b.params);
    doc["diagnostics"] = to_json(b.diagnostics);
    if (!opt_info.is_null()) doc["optimization"] = opt_info;
    if (!b.divergent) {
        const double nb = sinh2(b.theta);
        doc["n_bound"] = std::isfinite(nb) ? ojson(nb) : ojson(nullptr);
    } else {
        doc["n_bound"] = nullptr;
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// invariance

int cmd_invariance(const std::string& pot, const std::string& params_text, double energy,
                   const std::string& j_name, const std::string& j_params, bool use_J,
                   double tol, const Settings& s) {
    const PotentialProfile prof = make_profile(pot, parse_kv(params_text, "--params"));
    const EnergySlice slice(prof, energy);
    const TrialFunction trial =
        build_trial(j_name, parse_kv(j_params, "--jparams"), slice);
    const InvarianceReport rep = verify_invariance(slice, trial, solver_config(s), use_J);
    std::printf("T_original    = %s\n", fmt(rep.t_original).c_str());
    std::printf("T_transformed = %s\n", fmt(rep.t_transformed).c_str());
    std::printf("delta_T       = %s\n", fmt(rep.difference).c_str());
    return rep.difference < tol ? 0 : 1;
}

// ---------------------------------------------------------------------------
// corpus

int cmd_corpus(const std::string& format) {
    const auto corpus = make_corpus();
    if (format == "json") {
        ojson doc = ojson::array();
        for (const auto& p : corpus) {
            ojson jp;
            jp["name"] = p.name;
            jp["params"] = to_json(p.params);
            jp["v_minus_inf"] = p.v_minus_inf;
            jp["v_plus_inf"] = p.v_plus_inf;
            jp["smooth"] = p.smooth;
            doc.push_back(std::move(jp));
        }
        std::cout << doc.dump(2) << "\n";
        return 0;
    }
    if (format != "text") throw UsageError("corpus: --format must be text or json");
    std::printf("%-14s %-28s %10s %10s %7s\n", "name", "params", "V(-inf)", "V(+inf)",
                "smooth");
    for (const auto& p : corpus) {
        std::string ps;
        for (const auto& [k, v] : p.params) {
            if (!ps.empty()) ps += ", ";
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%s=%g", k.c_str(), v);
            ps += buf;
        }
        if (ps.empty()) ps = "-";
        std::printf("%-14s %-28s %10g %10g %7s\n", p.name.c_str(), ps.c_str(), p.v_minus_inf,
                    p.v_plus_inf, p.smooth ? "yes" : "no");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tbounds: exact 1D quantum transmission probabilities and the catalog of "
                 "rigorous sech^2-type lower bounds"};
    app.require_subcommand(1);

    Settings settings;
    std::string config_path;
    double flag_tail_tol = kNaN, flag_refine_tol = kNaN, flag_abs_tol = kNaN,
           flag_rel_tol = kNaN;
    int flag_n_init = -1, flag_n_scan = -1;
    long flag_budget = -1;
    app.add_option("--config", config_path, "config file with key = value overrides");
    app.add_option("--tail-tol", flag_tail_tol, "asymptotic flatness threshold");
    app.add_option("--refine-tol", flag_refine_tol, "solver grid-refinement tolerance");
    app.add_option("--abs-tol", flag_abs_tol, "quadrature absolute tolerance");
    app.add_option("--rel-tol", flag_rel_tol, "quadrature relative tolerance");
    app.add_option("--n-init", flag_n_init, "initial solver segment count");
    app.add_option("--n-scan", flag_n_scan, "scan-grid density");
    app.add_option("--budget", flag_budget, "trial-search evaluation budget");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "energy sweep: exact T plus every bound column");
    std::string sw_pot = "square", sw_params, sw_format = "csv";
    double sw_emin = 0, sw_emax = 0;
    int sw_n = 0;
    bool sw_log = false, sw_keep = false, sw_trial = false;
    sweep->add_option("--potential", sw_pot, "corpus potential name")->required();
    sweep->add_option("--params", sw_params, "potential parameters k1=v1,k2=v2");
    sweep->add_option("--emin", sw_emin, "lowest energy")->required();
    sweep->add_option("--emax", sw_emax, "highest energy")->required();
    sweep->add_option("--n", sw_n, "number of energies")->required();
    sweep->add_flag("--log", sw_log, "log-spaced energies");
    sweep->add_option("--format", sw_format, "csv or json");
    sweep->add_flag("--keep-going", sw_keep, "NaN row on solver failure instead of aborting");
    sweep->add_flag("--trial-search", sw_trial, "include the trial-function search in b_best");

    // bound
    auto* bound = app.add_subcommand("bound", "evaluate one bound family at one energy");
    std::string bd_family, bd_pot = "square", bd_params, bd_trial, bd_trial_params;
    double bd_energy = 0, bd_delta = kNaN;
    bool bd_optimize = false, bd_trial_search = false;
    bound->add_option("--family", bd_family, "bound family")->required();
    bound->add_option("--potential", bd_pot, "corpus potential name")->required();
    bound->add_option("--params", bd_params, "potential parameters");
    bound->add_option("--energy", bd_energy, "energy E")->required();
    bound->add_option("--delta", bd_delta, "Delta for the delta-cut / delta-mg families");
    bound->add_flag("--optimize", bd_optimize, "optimize Delta before reporting");
    bound->add_option("--trial", bd_trial, "trial family (constant|interp|bump|slice-k|exp)");
    bound->add_option("--trial-params", bd_trial_params, "trial parameters k=v,...");
    bound->add_flag("--trial-search", bd_trial_search, "include trial search in 'best'");

    // invariance
    auto* inv = app.add_subcommand("invariance",
                                   "check transmission invariance under the coordinate map");
    std::string in_pot = "square", in_params, in_j = "identity", in_jparams;
    double in_energy = 0, in_tol = 1e-6;
    bool in_useJ = false;
    inv->add_option("--potential", in_pot, "corpus potential name")->required();
    inv->add_option("--params", in_params, "potential parameters");
    inv->add_option("--energy", in_energy, "energy E")->required();
    inv->add_option("--j", in_j, "map density family (identity|constant|bump|interp|exp)");
    inv->add_option("--jparams", in_jparams, "map density parameters");
    inv->add_flag("--use-J", in_useJ, "interpret the trial as J (X' = J^-2)");
    inv->add_option("--tol", in_tol, "pass/fail threshold on |delta T|");

    // corpus
    auto* corpus = app.add_subcommand("corpus", "list built-in potentials");
    std::string co_format = "text";
    corpus->add_option("--format", co_format, "text or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) apply_config_file(settings, config_path);
        if (!std::isnan(flag_tail_tol)) settings.quad.tail_tol = flag_tail_tol;
        if (!std::isnan(flag_refine_tol)) settings.refine_tol = flag_refine_tol;
        if (!std::isnan(flag_abs_tol)) settings.quad.abs_tol = flag_abs_tol;
        if (!std::isnan(flag_rel_tol)) settings.quad.rel_tol = flag_rel_tol;
        if (flag_n_init > 0) settings.n_init = flag_n_init;
        if (flag_n_scan > 0) settings.quad.n_scan = flag_n_scan;
        if (flag_budget > 0) settings.opt_budget = flag_budget;

        if (sweep->parsed())
            return cmd_sweep(sw_pot, sw_params, sw_emin, sw_emax, sw_n, sw_log, sw_format,
                             sw_keep, sw_trial, settings);
        if (bound->parsed())
            return cmd_bound(bd_family, bd_pot, bd_params, bd_energy, bd_delta, bd_optimize,
                             bd_trial, bd_trial_params, bd_trial_search, settings);
        if (inv->parsed())
            return cmd_invariance(in_pot, in_params, in_energy, in_j, in_jparams, in_useJ,
                                  in_tol, settings);
        if (corpus->parsed()) return cmd_corpus(co_format);
        throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
