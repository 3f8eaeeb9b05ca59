#include <cmath>

#include <gtest/gtest.h>

#include "dsfrac/reports.hpp"
#include "dsfrac/scenarios.hpp"

using namespace dsfrac;

TEST(Presets, AllListedScenariosBuild) {
    for (const ScenarioSpec& spec : list_scenarios()) {
        Scenario sc = build_scenario(spec);
        EXPECT_EQ(sc.spec.name, spec.name);
        EXPECT_GT(sc.bounds.u0_h2, 0.0);
        EXPECT_GT(sc.bounds.q, 0.0);
        EXPECT_GT(sc.bounds.kernel_l1, 0.0);
        // Fields must have decayed by the box edge for the periodic surrogate
        // to stand in for the whole-space problem.
        EXPECT_LE(sc.boundary_f, 1e-8 * max_abs(sc.f));
        EXPECT_LE(sc.boundary_kernel, 1e-8 * max_abs(sc.kernel));
        if (spec.regime == Regime::nonlinear) {
            ASSERT_TRUE(sc.bounds.eps_max.has_value());
            ASSERT_TRUE(sc.bounds.sigma.has_value());
            EXPECT_GT(*sc.bounds.eps_max, 0.0);
            EXPECT_LT(*sc.bounds.eps_max * *sc.bounds.sigma, 1.0);
            EXPECT_GT(*sc.bounds.m, 0.0);
            EXPECT_GT(*sc.bounds.interval_halfwidth, 1.0);
        } else {
            EXPECT_FALSE(sc.bounds.eps_max.has_value());
            EXPECT_FALSE(sc.bounds.sigma.has_value());
            EXPECT_FALSE(sc.bounds.m.has_value());
            EXPECT_FALSE(sc.bounds.continuity_rhs.has_value());
        }
    }
}

TEST(Presets, QuadraticBudgetMatchesClosedForm) {
    Scenario sc = build_scenario(scenario_by_name("gauss-quadratic"));
    double hw = *sc.bounds.interval_halfwidth;
    EXPECT_DOUBLE_EQ(hw, sc.bounds.u0_h2 + 1.0);
    EXPECT_NEAR(*sc.bounds.m, hw * hw + 2.0 * hw + 2.0, 1e-12 * *sc.bounds.m);
}

TEST(Presets, RegimeBSatisfiesOrthogonality) {
    Scenario sc = build_scenario(scenario_by_name("regime-b-linear"));
    EXPECT_EQ(sc.exps.regime, Regime::linear_b);
    EXPECT_TRUE(sc.u0_report.orthogonality_satisfied);
    EXPECT_LE(sc.u0_report.zero_mode_mass, 1e-8);
}

TEST(Presets, NarrowKernelShrinksQAndMass) {
    // At fixed peak amplitude both the mass and the derivative norm scale
    // with the width (Q proportional to sqrt(width) in closed form).
    Scenario wide = build_scenario(scenario_by_name("gauss-quadratic"));
    Scenario narrow = build_scenario(scenario_by_name("narrow-kernel"));
    EXPECT_LT(narrow.bounds.q, wide.bounds.q);
    EXPECT_LT(narrow.bounds.kernel_l1, wide.bounds.kernel_l1);
}

TEST(Presets, BuildIsDeterministic) {
    Scenario a = build_scenario(scenario_by_name("gauss-quadratic"));
    Scenario b = build_scenario(scenario_by_name("gauss-quadratic"));
    EXPECT_EQ(a.bounds.u0_h2, b.bounds.u0_h2);
    EXPECT_EQ(*a.bounds.eps_max, *b.bounds.eps_max);
    for (std::size_t i = 0; i < a.u0.samples.size(); ++i) {
        ASSERT_EQ(a.u0.samples[i], b.u0.samples[i]);
    }
}

TEST(Presets, ContinuityBoundOnlyWithContractiveEps) {
    ScenarioSpec spec = scenario_by_name("gauss-quadratic");
    spec.n = 16;
    Scenario plain = build_scenario(spec);
    EXPECT_FALSE(plain.bounds.continuity_rhs.has_value());
    double eps = *plain.bounds.eps_max / 2.0;
    Scenario with_eps = build_scenario(spec, 1.0, 1.0, eps);
    ASSERT_TRUE(with_eps.bounds.continuity_rhs.has_value());
    EXPECT_GT(*with_eps.bounds.continuity_rhs, 0.0);
    double eps_bad = 2.0 / *plain.bounds.sigma;
    Scenario beyond = build_scenario(spec, 1.0, 1.0, eps_bad);
    EXPECT_FALSE(beyond.bounds.continuity_rhs.has_value());
}

TEST(Validation, CollectsEveryFailedClause) {
    ScenarioSpec spec = scenario_by_name("gauss-quadratic");
    spec.g_name = "identity";
    spec.kernel_def.amplitude = 0.0;
    try {
        build_scenario(spec, 1.5);
        FAIL() << "expected AssumptionError";
    } catch (const AssumptionError& e) {
        ASSERT_GE(e.clauses().size(), 3u);
    }
}

TEST(Validation, RejectsZeroForcing) {
    ScenarioSpec spec = scenario_by_name("gauss-quadratic");
    spec.f_def.amplitude = 0.0;
    EXPECT_THROW(build_scenario(spec), AssumptionError);
}

TEST(Validation, UnknownNamesGiveConfigErrors) {
    EXPECT_THROW(scenario_by_name("missing"), ConfigError);
    try {
        scenario_by_name("missing");
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("gauss-quadratic"), std::string::npos);
    }
    ScenarioSpec spec = scenario_by_name("gauss-quadratic");
    spec.f_def.family = "ring";
    EXPECT_THROW(build_scenario(spec), ConfigError);
    spec = scenario_by_name("gauss-quadratic");
    spec.g_name = "quartic";
    EXPECT_THROW(build_scenario(spec), ConfigError);
}

TEST(Identity, HoldsForProjectedForcing) {
    // [-Delta + (-Delta)^{1 + s2 - s1}] u0 = (-Delta)^{1 - s1} P0 f holds
    // exactly at grid level because both sides share the same symbol algebra.
    ScenarioSpec spec = scenario_by_name("gauss-quadratic");
    spec.n = 16;
    Scenario sc = build_scenario(spec);
    double residual = operator_identity_residual(sc);
    EXPECT_LE(residual, 1e-9);
}

TEST(Identity, HoldsInRegimeB) {
    ScenarioSpec spec = scenario_by_name("regime-b-linear");
    spec.n = 16;
    Scenario sc = build_scenario(spec);
    EXPECT_LE(operator_identity_residual(sc), 1e-9);
}
