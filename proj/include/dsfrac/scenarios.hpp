#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "dsfrac/analysis.hpp"
#include "dsfrac/linear_solver.hpp"
#include "dsfrac/nonlinearity.hpp"

namespace dsfrac {

// Declarative scenario description: analytic field families plus exponents
// and grid. Materialization samples the fields, solves for u0, and evaluates
// every certified constant.

struct FieldDef {
    std::string family = "gaussian"; // gaussian | odd-gaussian
    double amplitude = 1.0;
    double width = 1.0;
    std::array<double, 3> center = {0.0, 0.0, 0.0};
};

struct ScenarioSpec {
    std::string name;
    std::string description;
    FieldDef f_def;
    FieldDef kernel_def;
    std::string g_name = "quadratic";
    double s1 = 0.5;
    double s2 = 0.75;
    Regime regime = Regime::nonlinear;
    int n = 32;
    double box_length = 20.0;
};

struct BoundsReport {
    double u0_h2 = 0.0;
    double kernel_l1 = 0.0;
    double q = 0.0;
    // Populated in the nonlinear regime only.
    std::optional<double> m;
    std::optional<double> interval_halfwidth;
    std::optional<double> h_constant;
    std::optional<double> eps_max;
    std::optional<double> sigma;
    // Continuity bound per unit ||g1 - g2||_{C^2(I)} at the configured eps;
    // defined only when eps * sigma < 1.
    std::optional<double> continuity_rhs;
    // Inputs the bounds were evaluated at.
    double rho = 1.0;
    double c_e = 1.0;
    double eps = 0.0;
};

struct Scenario {
    ScenarioSpec spec;
    GridSpec grid;
    FracExponents exps;
    Field f;
    Field kernel;
    Field u0;
    NonlinearityDef g;
    LinearSolveReport u0_report;
    BoundsReport bounds;
    double boundary_f = 0.0;      // max |f| on the outermost sample shells
    double boundary_kernel = 0.0; // same for the kernel
};

inline Field materialize_field(const GridSpec& grid, const FieldDef& def) {
    const double w2 = def.width * def.width;
    if (def.family == "gaussian") {
        return sample_field(grid, [&](double x, double y, double z) {
            double dx = x - def.center[0], dy = y - def.center[1], dz = z - def.center[2];
            return def.amplitude * std::exp(-(dx * dx + dy * dy + dz * dz) / (2.0 * w2));
        });
    }
    if (def.family == "odd-gaussian") {
        return sample_field(grid, [&](double x, double y, double z) {
            double dx = x - def.center[0], dy = y - def.center[1], dz = z - def.center[2];
            return def.amplitude * dx *
                   std::exp(-(dx * dx + dy * dy + dz * dz) / (2.0 * w2));
        });
    }
    throw ConfigError("unknown field family '" + def.family +
                      "' (expected gaussian or odd-gaussian)");
}

inline NonlinearityDef nonlinearity_by_name(const std::string& name) {
    if (name == "quadratic") return quadratic_nonlinearity();
    if (name == "cubic") return cubic_nonlinearity();
    if (name == "identity") return identity_nonlinearity();
    throw ConfigError("unknown nonlinearity '" + name +
                      "' (expected quadratic, cubic, or identity)");
}

inline double boundary_max_abs(const Field& f) {
    const GridSpec& g = f.grid;
    double worst = 0.0;
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
            for (int k = 0; k < g.n; ++k) {
                bool boundary = i == 0 || i == g.n - 1 || j == 0 || j == g.n - 1 ||
                                k == 0 || k == g.n - 1;
                if (boundary) worst = std::max(worst, std::abs(f.at(i, j, k)));
            }
        }
    }
    return worst;
}

// Materialize and validate a scenario. Structural violations (zero kernel,
// inadmissible g, bad exponent windows) throw AssumptionError listing every
// failed clause; soft conditions (orthogonality in linear-b, boundary decay)
// are recorded in the reports for the caller to surface.
inline Scenario build_scenario(const ScenarioSpec& spec, double rho = 1.0,
                               double c_e = 1.0, double eps = 0.0,
                               double tol_orth = 1e-8) {
    Scenario sc;
    sc.spec = spec;
    sc.grid = make_grid(spec.n, spec.box_length);
    sc.exps = make_exponents(spec.s1, spec.s2, spec.regime);
    sc.f = materialize_field(sc.grid, spec.f_def);
    sc.kernel = materialize_field(sc.grid, spec.kernel_def);
    sc.g = nonlinearity_by_name(spec.g_name);

    std::vector<std::string> bad;
    if (max_abs(sc.f) == 0.0) bad.push_back("forcing f is identically zero");
    if (max_abs(sc.kernel) == 0.0) bad.push_back("kernel is identically zero");
    if (spec.regime == Regime::nonlinear) {
        for (auto& clause : nonlinearity_violations(sc.g)) bad.push_back(clause);
    }
    if (!(rho > 0.0 && rho <= 1.0))
        bad.push_back("rho must lie in (0, 1], got " + std::to_string(rho));
    if (!(c_e > 0.0)) bad.push_back("c_e must be positive");
    if (!(eps >= 0.0)) bad.push_back("eps must be nonnegative");
    if (!bad.empty()) throw AssumptionError(bad);

    sc.boundary_f = boundary_max_abs(sc.f);
    sc.boundary_kernel = boundary_max_abs(sc.kernel);

    sc.u0_report = solve_poisson(sc.f, sc.exps, tol_orth);
    sc.u0 = sc.u0_report.solution;

    BoundsReport& b = sc.bounds;
    b.rho = rho;
    b.c_e = c_e;
    b.eps = eps;
    b.u0_h2 = h2_norm(sc.u0);
    b.kernel_l1 = l1_norm(sc.kernel);
    b.q = compute_q(sc.kernel, sc.exps);
    if (spec.regime == Regime::nonlinear) {
        IntervalBudget budget = interval_and_m(sc.g, b.u0_h2, c_e);
        b.interval_halfwidth = budget.halfwidth;
        b.m = budget.m;
        ContractionThreshold thr =
            contraction_threshold(b.q, budget.m, b.u0_h2, b.kernel_l1, sc.exps, rho);
        b.h_constant = thr.h_constant;
        b.eps_max = thr.eps_max;
        SigmaReport sig = sigma_and_continuity(b.q, budget.m, b.u0_h2, b.kernel_l1,
                                               sc.exps, 0.0, 0.0);
        b.sigma = sig.sigma;
        if (eps > 0.0 && eps * sig.sigma < 1.0) {
            b.continuity_rhs = sigma_and_continuity(b.q, budget.m, b.u0_h2, b.kernel_l1,
                                                    sc.exps, eps, 1.0)
                                   .continuity_rhs;
        }
    }
    return sc;
}

inline std::vector<ScenarioSpec> list_scenarios() {
    std::vector<ScenarioSpec> out;
    {
        ScenarioSpec s;
        s.name = "gauss-quadratic";
        s.description = "Gaussian forcing and kernel, quadratic nonlinearity";
        s.f_def = {"gaussian", 1.0, 1.0, {0.0, 0.0, 0.0}};
        s.kernel_def = {"gaussian", 1.0, 0.8, {0.0, 0.0, 0.0}};
        s.g_name = "quadratic";
        s.s1 = 0.5;
        s.s2 = 0.75;
        s.regime = Regime::nonlinear;
        s.n = 32;
        s.box_length = 20.0;
        out.push_back(s);
    }
    {
        ScenarioSpec s = out[0];
        s.name = "gauss-cubic";
        s.description = "Gaussian forcing and kernel, cubic nonlinearity";
        s.g_name = "cubic";
        out.push_back(s);
    }
    {
        ScenarioSpec s = out[0];
        s.name = "narrow-kernel";
        s.description = "Sharply peaked kernel against the Gaussian forcing";
        s.kernel_def.width = 0.3;
        out.push_back(s);
    }
    {
        ScenarioSpec s;
        s.name = "regime-b-linear";
        s.description = "Linear solve in regime b with mean-zero odd forcing";
        s.f_def = {"odd-gaussian", 1.0, 1.0, {0.0, 0.0, 0.0}};
        s.kernel_def = {"gaussian", 1.0, 0.8, {0.0, 0.0, 0.0}};
        s.g_name = "quadratic";
        s.s1 = 0.8;
        s.s2 = 0.9;
        s.regime = Regime::linear_b;
        s.n = 32;
        s.box_length = 20.0;
        out.push_back(s);
    }
    return out;
}

inline ScenarioSpec scenario_by_name(const std::string& name) {
    auto all = list_scenarios();
    for (const auto& s : all) {
        if (s.name == name) return s;
    }
    std::string msg = "unknown scenario '" + name + "'; available:";
    for (const auto& s : all) msg += " " + s.name;
    throw ConfigError(msg);
}

} // namespace dsfrac
