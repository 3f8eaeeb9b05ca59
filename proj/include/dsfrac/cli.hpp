#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dsfrac/fixed_point.hpp"
#include "dsfrac/io.hpp"
#include "dsfrac/reports.hpp"
#include "dsfrac/scenarios.hpp"
#include "dsfrac/verification.hpp"

namespace dsfrac {

// Exit codes: 0 success, 1 verification/internal-check failure,
// 2 configuration error, 3 assumption violation, 4 non-convergence.

struct RunConfig {
    std::string command = "solve";
    std::string scenario_name = "gauss-quadratic";
    std::map<std::string, std::string> scenario_overrides;
    std::optional<int> n_override;
    std::optional<double> box_override;
    std::optional<double> eps; // default: eps_max / 2 for nonlinear scenarios
    double rho = 1.0;
    double c_e = 1.0;
    double tol = 1e-10;
    int max_iters = 100;
    double tol_orth = 1e-8;
    double interval_slack = 0.01;
    std::string ball_policy = "warn"; // warn | reject
    int sweep_points = 8;
    int probe_trials = 20;
    int sequence_count = 8;
    std::uint64_t seed = 2026;
    std::filesystem::path out_dir = "runs/out";
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse '" + value +
                          "' as a real number");
    }
}

inline long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse '" + value +
                          "' as an integer");
    }
}

inline std::uint64_t parse_uint64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse '" + value +
                          "' as an unsigned integer");
    }
}

inline Regime parse_regime(const std::string& value) {
    if (value == "nonlinear") return Regime::nonlinear;
    if (value == "linear-a") return Regime::linear_a;
    if (value == "linear-b") return Regime::linear_b;
    throw ConfigError("unknown regime '" + value +
                      "' (expected nonlinear, linear-a, or linear-b)");
}

} // namespace detail

// Flat key = value file with '#' comments. Keys are the RunConfig fields plus
// one nesting level of scenario parameters (scenario.f_width = 0.8, ...).
inline void apply_config_entry(RunConfig& cfg, const std::string& key,
                               const std::string& value) {
    if (key.rfind("scenario.", 0) == 0) {
        cfg.scenario_overrides[key.substr(9)] = value;
        return;
    }
    if (key == "command") {
        cfg.command = value;
    } else if (key == "scenario") {
        cfg.scenario_name = value;
    } else if (key == "eps") {
        cfg.eps = detail::parse_double(key, value);
    } else if (key == "rho") {
        cfg.rho = detail::parse_double(key, value);
    } else if (key == "c_e") {
        cfg.c_e = detail::parse_double(key, value);
    } else if (key == "tol") {
        cfg.tol = detail::parse_double(key, value);
    } else if (key == "max_iters") {
        cfg.max_iters = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "tol_orth") {
        cfg.tol_orth = detail::parse_double(key, value);
    } else if (key == "interval_slack") {
        cfg.interval_slack = detail::parse_double(key, value);
    } else if (key == "ball_policy") {
        if (value != "warn" && value != "reject") {
            throw ConfigError("ball_policy must be warn or reject, got '" + value + "'");
        }
        cfg.ball_policy = value;
    } else if (key == "sweep_points") {
        cfg.sweep_points = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "probe_trials") {
        cfg.probe_trials = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "sequence_count") {
        cfg.sequence_count = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "seed") {
        cfg.seed = detail::parse_uint64(key, value);
    } else if (key == "out") {
        cfg.out_dir = value;
    } else if (key == "n") {
        cfg.n_override = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "box") {
        cfg.box_override = detail::parse_double(key, value);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

inline void load_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = detail::trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected key = value");
        }
        std::string key = detail::trim(stripped.substr(0, eq));
        std::string value = detail::trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": empty key");
        }
        apply_config_entry(cfg, key, value);
    }
}

inline void apply_scenario_override(ScenarioSpec& spec, const std::string& key,
                                    const std::string& value) {
    auto field_key = [&](FieldDef& def, const std::string& sub) {
        if (sub == "family") {
            def.family = value;
        } else if (sub == "amplitude") {
            def.amplitude = detail::parse_double(key, value);
        } else if (sub == "width") {
            def.width = detail::parse_double(key, value);
        } else if (sub == "center_x") {
            def.center[0] = detail::parse_double(key, value);
        } else if (sub == "center_y") {
            def.center[1] = detail::parse_double(key, value);
        } else if (sub == "center_z") {
            def.center[2] = detail::parse_double(key, value);
        } else {
            throw ConfigError("unknown scenario field key 'scenario." + key + "'");
        }
    };
    if (key == "name") {
        spec.name = value;
    } else if (key.rfind("f_", 0) == 0) {
        field_key(spec.f_def, key.substr(2));
    } else if (key.rfind("k_", 0) == 0) {
        field_key(spec.kernel_def, key.substr(2));
    } else if (key == "g") {
        spec.g_name = value;
    } else if (key == "s1") {
        spec.s1 = detail::parse_double(key, value);
    } else if (key == "s2") {
        spec.s2 = detail::parse_double(key, value);
    } else if (key == "regime") {
        spec.regime = detail::parse_regime(value);
    } else if (key == "n") {
        spec.n = static_cast<int>(detail::parse_int(key, value));
    } else if (key == "box") {
        spec.box_length = detail::parse_double(key, value);
    } else {
        throw ConfigError("unknown scenario key 'scenario." + key + "'");
    }
}

inline ScenarioSpec scenario_from_config(const RunConfig& cfg) {
    ScenarioSpec spec = scenario_by_name(cfg.scenario_name);
    for (const auto& [key, value] : cfg.scenario_overrides) {
        apply_scenario_override(spec, key, value);
    }
    if (!cfg.scenario_overrides.empty() && !cfg.scenario_overrides.count("name")) {
        spec.name += "+custom";
    }
    if (cfg.n_override) spec.n = *cfg.n_override;
    if (cfg.box_override) spec.box_length = *cfg.box_override;
    return spec;
}

// --- JSON report pieces ---

inline nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["command"] = cfg.command;
    j["scenario"] = cfg.scenario_name;
    nlohmann::json overrides = nlohmann::json::object();
    for (const auto& [key, value] : cfg.scenario_overrides) overrides[key] = value;
    j["scenario_overrides"] = overrides;
    j["eps"] = cfg.eps ? nlohmann::json(*cfg.eps) : nlohmann::json(nullptr);
    j["rho"] = cfg.rho;
    j["c_e"] = cfg.c_e;
    j["tol"] = cfg.tol;
    j["max_iters"] = cfg.max_iters;
    j["tol_orth"] = cfg.tol_orth;
    j["interval_slack"] = cfg.interval_slack;
    j["ball_policy"] = cfg.ball_policy;
    j["sweep_points"] = cfg.sweep_points;
    j["probe_trials"] = cfg.probe_trials;
    j["sequence_count"] = cfg.sequence_count;
    j["seed"] = cfg.seed;
    j["out"] = cfg.out_dir.string();
    if (cfg.n_override) j["n"] = *cfg.n_override;
    if (cfg.box_override) j["box"] = *cfg.box_override;
    return j;
}

inline nlohmann::json scenario_json(const Scenario& sc) {
    nlohmann::json j;
    j["name"] = sc.spec.name;
    j["description"] = sc.spec.description;
    j["s1"] = sc.exps.s1;
    j["s2"] = sc.exps.s2;
    j["regime"] = regime_name(sc.exps.regime);
    j["n"] = sc.grid.n;
    j["box_length"] = sc.grid.box_length;
    j["g"] = sc.g.label;
    j["f"] = {{"family", sc.spec.f_def.family},
              {"amplitude", sc.spec.f_def.amplitude},
              {"width", sc.spec.f_def.width},
              {"center", sc.spec.f_def.center}};
    j["kernel"] = {{"family", sc.spec.kernel_def.family},
                   {"amplitude", sc.spec.kernel_def.amplitude},
                   {"width", sc.spec.kernel_def.width},
                   {"center", sc.spec.kernel_def.center}};
    return j;
}

inline nlohmann::json norms_json(const NormReport& r) {
    nlohmann::json j;
    j["l1"] = r.l1;
    j["l2"] = r.l2;
    j["linf"] = r.linf;
    j["h2"] = r.h2;
    j["h2s2"] = r.h2s2;
    j["moment_l1"] = r.moment_l1;
    j["lp_frs"] = r.lp_frs ? nlohmann::json(*r.lp_frs) : nlohmann::json(nullptr);
    j["frs_exponent"] =
        r.frs_exponent ? nlohmann::json(*r.frs_exponent) : nlohmann::json(nullptr);
    return j;
}

inline nlohmann::json bounds_json(const BoundsReport& b) {
    auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    nlohmann::json j;
    j["u0_h2"] = b.u0_h2;
    j["kernel_l1"] = b.kernel_l1;
    j["q"] = b.q;
    j["m"] = opt(b.m);
    j["interval_halfwidth"] = opt(b.interval_halfwidth);
    j["h_constant"] = opt(b.h_constant);
    j["eps_max"] = opt(b.eps_max);
    j["sigma"] = opt(b.sigma);
    j["continuity_rhs_per_unit_c2_gap"] = opt(b.continuity_rhs);
    j["rho"] = b.rho;
    j["c_e"] = b.c_e;
    j["eps"] = b.eps;
    return j;
}

inline std::vector<std::string> scenario_warnings(const Scenario& sc) {
    std::vector<std::string> warnings;
    double f_scale = max_abs(sc.f);
    double k_scale = max_abs(sc.kernel);
    if (sc.boundary_f > 1e-8 * f_scale) {
        warnings.push_back("forcing does not decay at the box boundary (boundary max " +
                           format_g17(sc.boundary_f) + "); enlarge the box");
    }
    if (sc.boundary_kernel > 1e-8 * k_scale) {
        warnings.push_back("kernel does not decay at the box boundary (boundary max " +
                           format_g17(sc.boundary_kernel) + "); enlarge the box");
    }
    if (sc.exps.regime == Regime::linear_b && !sc.u0_report.orthogonality_satisfied) {
        warnings.push_back("regime linear-b requires (f, 1) = 0; zero-mode mass " +
                           format_g17(sc.u0_report.zero_mode_mass) +
                           " exceeds tol_orth (solvability condition violated)");
    }
    return warnings;
}

namespace detail {

struct CommandContext {
    RunConfig cfg;
    Scenario scenario;
    FixedPointConfig fp;
    double eps_effective = 0.0;
    nlohmann::json report;
};

inline CommandContext make_context(const RunConfig& cfg) {
    CommandContext ctx{cfg, {}, {}, 0.0, {}};
    ScenarioSpec spec = scenario_from_config(cfg);
    ctx.scenario = build_scenario(spec, cfg.rho, cfg.c_e, cfg.eps.value_or(0.0),
                                  cfg.tol_orth);
    double eps_default = 0.0;
    if (ctx.scenario.bounds.eps_max) eps_default = *ctx.scenario.bounds.eps_max / 2.0;
    ctx.eps_effective = cfg.eps.value_or(eps_default);
    if (ctx.eps_effective < 0.0) throw ConfigError("eps must be nonnegative");

    ctx.fp.eps = ctx.eps_effective;
    ctx.fp.rho = cfg.rho;
    ctx.fp.tol = cfg.tol;
    ctx.fp.max_iters = cfg.max_iters;
    ctx.fp.ball_policy = cfg.ball_policy == "reject" ? BallPolicy::reject : BallPolicy::warn;
    ctx.fp.interval_slack = cfg.interval_slack;
    ctx.fp.tol_orth = cfg.tol_orth;

    ctx.report["command"] = cfg.command;
    ctx.report["config"] = config_json(cfg);
    ctx.report["scenario"] = scenario_json(ctx.scenario);
    ctx.report["bounds"] = bounds_json(ctx.scenario.bounds);
    ctx.report["warnings"] = scenario_warnings(ctx.scenario);
    return ctx;
}

inline void write_report(const CommandContext& ctx) {
    atomic_write(ctx.cfg.out_dir / "report.json", ctx.report.dump(2) + "\n");
}

inline void print_warnings(const CommandContext& ctx) {
    for (const auto& w : ctx.report["warnings"]) {
        std::cerr << "warning: " << w.get<std::string>() << "\n";
    }
}

} // namespace detail

// --- commands ---

inline int run_solve(detail::CommandContext& ctx) {
    PicardTrace trace = picard_solve(ctx.scenario, ctx.fp);
    trace_table(trace).write(ctx.cfg.out_dir / "trace.csv");

    nlohmann::json results;
    results["eps"] = ctx.fp.eps;
    if (ctx.scenario.bounds.sigma) {
        results["eps_sigma"] = ctx.fp.eps * *ctx.scenario.bounds.sigma;
    }
    results["converged"] = trace.converged;
    results["iterations"] = trace.iterations.size();
    results["residual_h2"] = trace.residual_h2;
    results["equation_residual_l2"] = trace.equation_residual_l2;
    results["in_ball"] = trace.in_ball;
    results["u_p_norms"] = norms_json(compute_norms(trace.u_p, ctx.scenario.exps));
    results["u_norms"] = norms_json(compute_norms(trace.u, ctx.scenario.exps));
    ctx.report["results"] = results;
    detail::write_report(ctx);

    std::cout << "solve: eps = " << format_g17(ctx.fp.eps) << ", "
              << (trace.converged ? "converged" : "did NOT converge") << " in "
              << trace.iterations.size() << " iterations, ||u_p||_H2 = "
              << format_g17(h2_norm(trace.u_p)) << "\n";
    std::cout << "wrote " << (ctx.cfg.out_dir / "trace.csv").string() << ", report.json\n";
    return trace.converged ? 0 : 4;
}

inline int run_linear(detail::CommandContext& ctx) {
    const Scenario& sc = ctx.scenario;
    OrthogonalityCheck orth = check_orthogonality(sc.f, ctx.cfg.tol_orth);
    double identity_resid = operator_identity_residual(sc);

    nlohmann::json results;
    results["residual_l2"] = sc.u0_report.residual_l2;
    results["zero_mode_mass"] = sc.u0_report.zero_mode_mass;
    results["solver_regime"] = regime_name(sc.u0_report.regime);
    results["orthogonality_satisfied"] = sc.u0_report.orthogonality_satisfied;
    results["orthogonality_inner_product"] = orth.inner_product;
    results["operator_identity_residual_l2"] = identity_resid;
    results["f_norms"] = norms_json(compute_norms(sc.f, sc.exps));
    results["u0_norms"] = norms_json(compute_norms(sc.u0, sc.exps));
    ctx.report["results"] = results;
    detail::write_report(ctx);

    std::cout << "linear: residual_l2 = " << format_g17(sc.u0_report.residual_l2)
              << ", zero_mode_mass = " << format_g17(sc.u0_report.zero_mode_mass)
              << ", identity residual = " << format_g17(identity_resid) << "\n";
    std::cout << "wrote " << (ctx.cfg.out_dir / "report.json").string() << "\n";
    return 0;
}

inline int run_bounds(detail::CommandContext& ctx) {
    nlohmann::json results = bounds_json(ctx.scenario.bounds);
    if (ctx.scenario.exps.s1 < 0.75) {
        nlohmann::json table = nlohmann::json::array();
        for (double alpha : {0.1, 1.0, 10.0}) {
            MinimizerResult m = profile_minimizer({ctx.scenario.exps.s1, alpha});
            table.push_back(
                {{"s1", ctx.scenario.exps.s1}, {"alpha", alpha}, {"r_star", m.r_star},
                 {"phi_min", m.phi_min}});
        }
        results["minimizer_table"] = table;
    }
    ctx.report["results"] = results;
    detail::write_report(ctx);

    const BoundsReport& b = ctx.scenario.bounds;
    std::cout << "bounds: u0_h2 = " << format_g17(b.u0_h2) << ", q = " << format_g17(b.q);
    if (b.eps_max) {
        std::cout << ", m = " << format_g17(*b.m) << ", H = " << format_g17(*b.h_constant)
                  << ", eps_max = " << format_g17(*b.eps_max)
                  << ", sigma = " << format_g17(*b.sigma);
    }
    std::cout << "\nwrote " << (ctx.cfg.out_dir / "report.json").string() << "\n";
    return 0;
}

inline int run_sweep_command(detail::CommandContext& ctx) {
    std::vector<SweepRow> rows = run_sweep(ctx.scenario, ctx.fp, ctx.cfg.sweep_points);
    sweep_table(rows).write(ctx.cfg.out_dir / "sweep.csv");

    FixedPointConfig probe_cfg = ctx.fp;
    probe_cfg.eps = *ctx.scenario.bounds.eps_max;
    auto pairs = contraction_probe(ctx.scenario, probe_cfg, ctx.cfg.probe_trials,
                                   ctx.cfg.seed);
    probe_table(pairs, probe_cfg.eps).write(ctx.cfg.out_dir / "contraction.csv");

    bool all_converged = true;
    nlohmann::json points = nlohmann::json::array();
    for (const auto& r : rows) {
        all_converged = all_converged && r.converged;
        points.push_back({{"eps", r.eps},
                          {"iterations", r.iterations},
                          {"converged", r.converged},
                          {"up_h2", r.up_h2},
                          {"up_h2_over_eps", r.up_h2_over_eps},
                          {"max_picard_ratio", r.max_picard_ratio},
                          {"bound", r.bound}});
    }
    double worst_probe = 0.0;
    for (const auto& p : pairs) worst_probe = std::max(worst_probe, p.ratio);

    nlohmann::json results;
    results["points"] = points;
    results["probe_trials"] = ctx.cfg.probe_trials;
    results["probe_eps"] = probe_cfg.eps;
    results["probe_max_ratio"] = worst_probe;
    results["probe_bound"] = pairs.front().bound;
    ctx.report["results"] = results;
    detail::write_report(ctx);

    std::cout << "sweep: " << rows.size() << " eps points, max probe ratio "
              << format_g17(worst_probe) << " vs bound "
              << format_g17(pairs.front().bound) << "\n";
    std::cout << "wrote sweep.csv, contraction.csv, report.json under "
              << ctx.cfg.out_dir.string() << "\n";
    return all_converged ? 0 : 4;
}

inline int run_sequences_command(detail::CommandContext& ctx) {
    std::vector<Field> perts =
        geometric_perturbations(ctx.scenario.grid, ctx.cfg.sequence_count);
    auto rows = sequences_experiment(ctx.scenario.f, perts, ctx.scenario.exps,
                                     ctx.cfg.tol_orth);
    sequences_table(rows).write(ctx.cfg.out_dir / "sequences.csv");

    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& r : rows) {
        jrows.push_back({{"index", r.index},
                         {"f_gap_l2", r.f_gap_l2},
                         {"f_gap_l1", r.f_gap_l1},
                         {"u_gap_h2s2", r.u_gap_h2s2},
                         {"spectral_gap_l2", r.spectral_gap_l2},
                         {"orthogonality_ok", r.orthogonality_ok}});
    }
    ctx.report["results"] = {{"rows", jrows}};
    detail::write_report(ctx);

    std::cout << "sequences: " << rows.size() << " perturbations, final u gap "
              << format_g17(rows.back().u_gap_h2s2) << "\n";
    std::cout << "wrote sequences.csv, report.json under " << ctx.cfg.out_dir.string()
              << "\n";
    return 0;
}

inline int run_verify_command(const RunConfig& cfg) {
    VerifyOptions opts;
    opts.seed = cfg.seed;
    opts.work_dir = cfg.out_dir / "determinism";
    std::vector<CriterionResult> results = run_acceptance(opts);

    nlohmann::json report;
    report["command"] = "verify";
    report["config"] = config_json(cfg);
    nlohmann::json jres = nlohmann::json::array();
    bool all_passed = true;
    for (const auto& r : results) {
        std::cout << "criterion " << r.id << ": " << (r.passed ? "PASS" : "FAIL") << " - "
                  << r.name << " - " << r.details << "\n";
        all_passed = all_passed && r.passed;
        jres.push_back(
            {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"details", r.details}});
    }
    report["results"] = jres;
    report["all_passed"] = all_passed;
    atomic_write(cfg.out_dir / "report.json", report.dump(2) + "\n");
    std::cout << (all_passed ? "all criteria passed" : "ACCEPTANCE FAILURE") << "\n";
    return all_passed ? 0 : 1;
}

// Dispatch and map errors to exit codes. Reports and CSVs land in
// cfg.out_dir.
inline int execute_command(const RunConfig& cfg) {
    try {
        if (cfg.command == "verify") return run_verify_command(cfg);

        detail::CommandContext ctx = detail::make_context(cfg);
        detail::print_warnings(ctx);
        if (cfg.command == "solve") return run_solve(ctx);
        if (cfg.command == "linear") return run_linear(ctx);
        if (cfg.command == "bounds") return run_bounds(ctx);
        if (cfg.command == "sweep") return run_sweep_command(ctx);
        if (cfg.command == "sequences") return run_sequences_command(ctx);
        throw ConfigError("unknown command '" + cfg.command +
                          "' (expected solve, linear, bounds, sweep, sequences, verify)");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const AssumptionError& e) {
        std::cerr << "assumption violation: " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 4;
    } catch (const CheckError& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 1;
    }
}

} // namespace dsfrac
