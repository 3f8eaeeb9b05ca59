#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dsfrac/analysis.hpp"
#include "dsfrac/rng.hpp"
#include "dsfrac/verification.hpp"
#include "oracles.hpp"

using namespace dsfrac;

namespace {

Field unit_gaussian(const GridSpec& grid, double width = 1.0) {
    return sample_field(grid, [width](double x, double y, double z) {
        return std::exp(-(x * x + y * y + z * z) / (2.0 * width * width));
    });
}

Field random_field(const GridSpec& grid, Rng& rng) {
    Field f = zero_field(grid);
    for (double& s : f.samples) s = rng.normal();
    return f;
}

const FracExponents kNonlinear = make_exponents(0.5, 0.75, Regime::nonlinear);

} // namespace

TEST(Norms, UnitGaussianAnalyticValues) {
    GridSpec g = make_grid(32, 20.0);
    Field f = unit_gaussian(g);
    const double pi = std::numbers::pi;
    // integral exp(-|x|^2/2) dx = (2 pi)^{3/2}; L2^2 = pi^{3/2};
    // integral |x| exp(-|x|^2/2) dx = 8 pi.
    EXPECT_NEAR(l1_norm(f), std::pow(2.0 * pi, 1.5), 1e-6 * std::pow(2.0 * pi, 1.5));
    EXPECT_NEAR(l1_norm(f), 15.7496, 1e-3);
    EXPECT_NEAR(l2_norm(f), std::pow(pi, 0.75), 1e-8 * std::pow(pi, 0.75));
    EXPECT_DOUBLE_EQ(linf_norm(f), 1.0);
    // |x| has a kink at the origin, so this quadrature converges only
    // algebraically; 0.5% is what n = 32 delivers.
    EXPECT_NEAR(moment_l1(f), 8.0 * pi, 5e-3 * 8.0 * pi);
    // ||f||_{H2}^2 = integral (1 + |p|^4) exp(-|p|^2) dp = (19/4) pi^{3/2}.
    EXPECT_NEAR(h2_norm(f), std::sqrt(4.75 * std::pow(pi, 1.5)), 1e-6);
}

TEST(Norms, ReportInvariants) {
    GridSpec g = make_grid(16, 10.0);
    Rng rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        Field f = random_field(g, rng);
        NormReport r = compute_norms(f, kNonlinear);
        EXPECT_GE(r.l1, 0.0);
        EXPECT_GE(r.l2, 0.0);
        EXPECT_GE(r.linf, 0.0);
        EXPECT_GE(r.h2, r.l2);
        EXPECT_GE(r.h2s2, r.l2);
        ASSERT_TRUE(r.lp_frs.has_value());
        EXPECT_DOUBLE_EQ(*r.frs_exponent, 6.0);
        EXPECT_GT(*r.lp_frs, 0.0);
    }
}

TEST(Norms, FrsExponentUndefinedForSmallS1) {
    GridSpec g = make_grid(8, 4.0);
    Field f = unit_gaussian(g);
    FracExponents exps = make_exponents(0.2, 0.5, Regime::linear_a);
    NormReport r = compute_norms(f, exps);
    EXPECT_FALSE(r.lp_frs.has_value());
    EXPECT_FALSE(r.frs_exponent.has_value());
}

TEST(Norms, TruncationIsMonotone) {
    GridSpec g = make_grid(8, 4.0);
    Rng rng(5);
    Field f = random_field(g, rng);
    SpectralField spec = forward_transform(f);
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
            for (int k = 0; k < g.n; ++k) {
                int si = std::abs(g.signed_index(i));
                int sj = std::abs(g.signed_index(j));
                int sk = std::abs(g.signed_index(k));
                if (si > 2 || sj > 2 || sk > 2) spec.at(i, j, k) = 0.0;
            }
        }
    }
    Field truncated = inverse_transform(spec);
    EXPECT_LE(l2_norm(truncated), l2_norm(f) + 1e-12);
    EXPECT_LE(h2_norm(truncated), h2_norm(f) + 1e-12);
}

TEST(KernelConstant, UnitWidthGaussianAnalyticValue) {
    // Q^2 = integral |p|^2 exp(-|p|^2) dp = (3/2) pi^{3/2} for s1 = 1/2.
    GridSpec g = make_grid(32, 20.0);
    Field kernel = unit_gaussian(g);
    double q = compute_q(kernel, kNonlinear);
    double expected = std::sqrt(1.5 * std::pow(std::numbers::pi, 1.5));
    EXPECT_NEAR(q, expected, 1e-6);
}

TEST(KernelConstant, RejectsDegenerateKernels) {
    GridSpec g = make_grid(8, 4.0);
    EXPECT_THROW(compute_q(zero_field(g), kNonlinear), AssumptionError);
    Field constant = sample_field(g, [](double, double, double) { return 1.0; });
    EXPECT_THROW(compute_q(constant, kNonlinear), AssumptionError);
}

TEST(Minimizer, HandComputedCases) {
    MinimizerResult a = profile_minimizer({0.5, 2.0});
    EXPECT_NEAR(a.r_star, 1.0, 1e-12);
    EXPECT_NEAR(a.phi_min, 3.0, 1e-12);
    MinimizerResult b = profile_minimizer({0.375, 1.0});
    EXPECT_NEAR(b.r_star, 1.0, 1e-12);
    EXPECT_NEAR(b.phi_min, 2.0, 1e-12);
}

TEST(Minimizer, MatchesBruteForce) {
    Rng rng(2029);
    for (int trial = 0; trial < 20; ++trial) {
        double s1 = rng.uniform(0.26, 0.74);
        double alpha = std::pow(10.0, rng.uniform(-2.0, 2.0));
        MinimizerResult closed = profile_minimizer({s1, alpha});
        auto brute = dsfrac::detail::brute_force_phi_minimum(s1, alpha);
        EXPECT_NEAR(closed.r_star, brute.r, 1e-9 * brute.r);
        EXPECT_NEAR(closed.phi_min, brute.phi, 1e-9 * brute.phi);
    }
}

TEST(Minimizer, IsGlobalMinimumOnSampledRay) {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        MinimizationProblem prob{rng.uniform(0.26, 0.74),
                                 std::pow(10.0, rng.uniform(-2.0, 2.0))};
        MinimizerResult res = profile_minimizer(prob);
        EXPECT_LE(res.phi_min, phi_profile(prob, res.r_star * 1.01));
        EXPECT_LE(res.phi_min, phi_profile(prob, res.r_star * 0.99));
        for (int i = 0; i < 40; ++i) {
            double r = 1e-3 * std::pow(10.0, 6.0 * i / 39.0);
            EXPECT_LE(res.phi_min, phi_profile(prob, r) * (1.0 + 1e-12));
        }
    }
}

TEST(Minimizer, RejectsOutOfRangeInputs) {
    EXPECT_THROW(profile_minimizer({0.75, 1.0}), std::invalid_argument);
    EXPECT_THROW(profile_minimizer({0.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(profile_minimizer({0.5, 0.0}), std::invalid_argument);
    EXPECT_THROW(profile_minimizer({0.5, -2.0}), std::invalid_argument);
}

TEST(IntervalBudget, QuadraticHandValues) {
    // g = z^2 on [-hw, hw]: M = hw^2 + 2 hw + 2, exact because the dense
    // sample includes the endpoints.
    IntervalBudget b = interval_and_m(quadratic_nonlinearity(), 1.0, 1.0);
    EXPECT_DOUBLE_EQ(b.halfwidth, 2.0);
    EXPECT_NEAR(b.m, 10.0, 1e-12);
    IntervalBudget unit = interval_and_m(quadratic_nonlinearity(), 0.0, 1.0);
    EXPECT_DOUBLE_EQ(unit.halfwidth, 1.0);
    EXPECT_NEAR(unit.m, 5.0, 1e-12);
}

TEST(IntervalBudget, RejectsVanishingNonlinearity) {
    NonlinearityDef zero{"zero", [](double) { return 0.0; }, [](double) { return 0.0; },
                         [](double) { return 0.0; }};
    EXPECT_THROW(interval_and_m(zero, 1.0, 1.0), AssumptionError);
}

TEST(Threshold, UnitBracketHandCase) {
    // kernel_l1 = 0 and q = 2 make the bracket exactly 1, so
    // H = 2 m (u0_h2 + 1)^2 and eps_max = rho / H.
    ContractionThreshold t = contraction_threshold(2.0, 1.0, 0.0, 0.0, kNonlinear, 1.0);
    EXPECT_NEAR(t.h_constant, 2.0, 1e-12);
    EXPECT_NEAR(t.eps_max, 0.5, 1e-12);
    ContractionThreshold half = contraction_threshold(2.0, 1.0, 0.0, 0.0, kNonlinear, 0.5);
    EXPECT_NEAR(half.eps_max, 0.25, 1e-12);
}

TEST(Threshold, MatchesIndependentTranscription) {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        double s1 = rng.uniform(0.26, 0.74);
        FracExponents exps = make_exponents(s1, 0.5 + 0.5 * s1, Regime::nonlinear);
        double q = rng.uniform(0.5, 5.0);
        double m = rng.uniform(0.5, 20.0);
        double u0h2 = rng.uniform(0.0, 4.0);
        double kl1 = rng.uniform(0.0, 20.0);
        ContractionThreshold t = contraction_threshold(q, m, u0h2, kl1, exps, 1.0);
        double expected = oracles::h_constant_alt(q, m, u0h2, kl1, s1);
        EXPECT_NEAR(t.h_constant, expected, 1e-10 * expected);
    }
}

TEST(Threshold, RejectsBadInputs) {
    FracExponents linb = make_exponents(0.8, 0.9, Regime::linear_b);
    EXPECT_THROW(contraction_threshold(1.0, 1.0, 1.0, 1.0, linb, 1.0), AssumptionError);
    EXPECT_THROW(contraction_threshold(0.0, 1.0, 1.0, 1.0, kNonlinear, 1.0), AssumptionError);
    EXPECT_THROW(contraction_threshold(1.0, 0.0, 1.0, 1.0, kNonlinear, 1.0), AssumptionError);
    EXPECT_THROW(contraction_threshold(1.0, 1.0, 1.0, 1.0, kNonlinear, 0.0), AssumptionError);
    EXPECT_THROW(contraction_threshold(1.0, 1.0, 1.0, 1.0, kNonlinear, 1.5), AssumptionError);
}

TEST(Sigma, MatchesIndependentTranscription) {
    Rng rng(103);
    for (int trial = 0; trial < 20; ++trial) {
        double s1 = rng.uniform(0.26, 0.74);
        FracExponents exps = make_exponents(s1, 0.5 + 0.5 * s1, Regime::nonlinear);
        double q = rng.uniform(0.5, 5.0);
        double m = rng.uniform(0.5, 20.0);
        double u0h2 = rng.uniform(0.0, 4.0);
        double kl1 = rng.uniform(0.0, 20.0);
        SigmaReport s = sigma_and_continuity(q, m, u0h2, kl1, exps, 0.0, 0.0);
        double expected = oracles::sigma_alt(q, m, u0h2, kl1, s1);
        EXPECT_NEAR(s.sigma, expected, 1e-10 * expected);

        double eps = 0.5 / s.sigma;
        double gap = rng.uniform(0.0, 2.0);
        SigmaReport with_eps = sigma_and_continuity(q, m, u0h2, kl1, exps, eps, gap);
        double expected_rhs = oracles::continuity_rhs_alt(q, m, u0h2, kl1, s1, eps, gap);
        EXPECT_NEAR(with_eps.continuity_rhs, expected_rhs,
                    1e-10 * std::max(1.0, expected_rhs));
    }
}

TEST(Sigma, ZeroEpsGivesZeroContinuityBound) {
    SigmaReport s = sigma_and_continuity(1.0, 2.0, 1.0, 3.0, kNonlinear, 0.0, 1.0);
    EXPECT_GT(s.sigma, 0.0);
    EXPECT_DOUBLE_EQ(s.continuity_rhs, 0.0);
}

TEST(Sigma, SignalsNonContractiveEps) {
    SigmaReport s = sigma_and_continuity(1.0, 2.0, 1.0, 3.0, kNonlinear, 0.0, 0.0);
    double eps_bad = 1.5 / s.sigma;
    EXPECT_THROW(sigma_and_continuity(1.0, 2.0, 1.0, 3.0, kNonlinear, eps_bad, 1.0),
                 NonContractiveError);
}

TEST(SobolevRatio, ScaleInvariant) {
    GridSpec g = make_grid(16, 10.0);
    Field f = unit_gaussian(g);
    double base = sobolev_ratio(f, kNonlinear);
    Field scaled = f;
    for (double& v : scaled.samples) v *= 2.5;
    EXPECT_NEAR(sobolev_ratio(scaled, kNonlinear), base, 1e-12 * base);
    EXPECT_GT(base, 0.0);
}

TEST(SobolevRatio, RejectsDegenerateInputs) {
    GridSpec g = make_grid(8, 4.0);
    EXPECT_THROW(sobolev_ratio(zero_field(g), kNonlinear), std::invalid_argument);
    FracExponents small_s1 = make_exponents(0.2, 0.5, Regime::linear_a);
    EXPECT_THROW(sobolev_ratio(unit_gaussian(g), small_s1), std::invalid_argument);
}

TEST(EmbeddingRatio, PositiveAndScaleInvariant) {
    GridSpec g = make_grid(16, 10.0);
    Field f = unit_gaussian(g);
    double base = embedding_ratio(f);
    EXPECT_GT(base, 0.0);
    Field scaled = f;
    for (double& v : scaled.samples) v *= 0.3;
    EXPECT_NEAR(embedding_ratio(scaled), base, 1e-12 * base);
    EXPECT_THROW(embedding_ratio(zero_field(g)), std::invalid_argument);
}
