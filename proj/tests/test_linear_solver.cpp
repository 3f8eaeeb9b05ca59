#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dsfrac/linear_solver.hpp"
#include "dsfrac/reports.hpp"
#include "dsfrac/rng.hpp"

using namespace dsfrac;

namespace {

const FracExponents kExps = make_exponents(0.5, 0.75, Regime::nonlinear);

Field gaussian(const GridSpec& grid, double width = 1.0) {
    return sample_field(grid, [width](double x, double y, double z) {
        return std::exp(-(x * x + y * y + z * z) / (2.0 * width * width));
    });
}

Field odd_gaussian(const GridSpec& grid) {
    return sample_field(grid, [](double x, double y, double z) {
        return x * std::exp(-0.5 * (x * x + y * y + z * z));
    });
}

Field smooth_random(const GridSpec& grid, std::uint64_t seed) {
    Rng rng(seed);
    Field noise = zero_field(grid);
    for (double& s : noise.samples) s = rng.normal();
    SpectralField spec = forward_transform(noise);
    for (int i = 0; i < grid.n; ++i) {
        for (int j = 0; j < grid.n; ++j) {
            for (int k = 0; k < grid.n; ++k) {
                spec.at(i, j, k) *= std::exp(-0.25 * p_squared(grid, i, j, k));
            }
        }
    }
    spec.at(0, 0, 0) = 0.0;
    return inverse_transform(spec);
}

double field_mean(const Field& f) {
    double acc = 0.0;
    for (double v : f.samples) acc += v;
    return acc / static_cast<double>(f.grid.num_samples());
}

} // namespace

TEST(Solver, RecoversManufacturedSolution) {
    GridSpec grid = make_grid(16, 10.0);
    Field u = gaussian(grid, 1.2);
    double mean = field_mean(u);
    for (double& v : u.samples) v -= mean;
    Field f = apply_mixed_operator(u, kExps);
    LinearSolveReport rep = solve_poisson(f, kExps);
    double gap = 0.0;
    for (std::size_t i = 0; i < u.samples.size(); ++i) {
        gap = std::max(gap, std::abs(rep.solution.samples[i] - u.samples[i]));
    }
    EXPECT_LE(gap, 1e-10 * max_abs(u));
    EXPECT_LE(rep.residual_l2, 1e-10 * l2_norm(f));
}

TEST(Solver, ZeroRightSideGivesZeroSolution) {
    GridSpec grid = make_grid(8, 4.0);
    LinearSolveReport rep = solve_poisson(zero_field(grid), kExps);
    EXPECT_DOUBLE_EQ(max_abs(rep.solution), 0.0);
    EXPECT_DOUBLE_EQ(rep.residual_l2, 0.0);
    EXPECT_DOUBLE_EQ(rep.zero_mode_mass, 0.0);
}

TEST(Solver, PlaneWaveDividesBySymbol) {
    GridSpec grid = make_grid(16, 4.0 * std::numbers::pi);
    double p = 2.0 * std::numbers::pi / grid.box_length;
    Field f = sample_field(grid, [p](double x, double, double) { return std::cos(p * x); });
    LinearSolveReport rep = solve_poisson(f, kExps);
    double sym = std::pow(p * p, kExps.s1) + std::pow(p * p, kExps.s2);
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        EXPECT_NEAR(rep.solution.samples[i], f.samples[i] / sym, 1e-12);
    }
}

TEST(Solver, IsLinearInRightSide) {
    GridSpec grid = make_grid(16, 10.0);
    Field f1 = smooth_random(grid, 11);
    Field f2 = smooth_random(grid, 12);
    Field sum = f1;
    for (std::size_t i = 0; i < sum.samples.size(); ++i) sum.samples[i] += f2.samples[i];
    Field u1 = solve_poisson(f1, kExps).solution;
    Field u2 = solve_poisson(f2, kExps).solution;
    Field usum = solve_poisson(sum, kExps).solution;
    double gap = 0.0;
    double scale = std::max(max_abs(u1), max_abs(u2));
    for (std::size_t i = 0; i < usum.samples.size(); ++i) {
        gap = std::max(gap, std::abs(usum.samples[i] - u1.samples[i] - u2.samples[i]));
    }
    EXPECT_LE(gap, 1e-12 * std::max(1.0, scale));
}

TEST(Solver, RecordsZeroModeMassAndProjects) {
    GridSpec grid = make_grid(16, 10.0);
    Field f = gaussian(grid);
    LinearSolveReport rep = solve_poisson(f, kExps);
    double expected_mass = two_pi_pow_neg_3_2 * l1_norm(f);
    EXPECT_NEAR(rep.zero_mode_mass, expected_mass, 1e-12 * expected_mass);
    EXPECT_LE(std::abs(field_mean(rep.solution)), 1e-14 * max_abs(rep.solution));
    EXPECT_LE(rep.residual_l2, 1e-10 * l2_norm(f));
}

TEST(Solver, FlagsOrthogonalityInRegimeB) {
    // Box 20 so the odd forcing's unpaired x = -L/2 plane carries no mass.
    GridSpec grid = make_grid(16, 20.0);
    FracExponents linb = make_exponents(0.8, 0.9, Regime::linear_b);
    LinearSolveReport bad = solve_poisson(gaussian(grid), linb);
    EXPECT_EQ(bad.regime, Regime::linear_b);
    EXPECT_FALSE(bad.orthogonality_satisfied);
    LinearSolveReport good = solve_poisson(odd_gaussian(grid), linb);
    EXPECT_TRUE(good.orthogonality_satisfied);
    LinearSolveReport lina = solve_poisson(gaussian(grid), kExps);
    EXPECT_EQ(lina.regime, Regime::linear_a);
    EXPECT_TRUE(lina.orthogonality_satisfied);
}

TEST(Solver, RejectsNonFiniteRightSide) {
    GridSpec grid = make_grid(8, 4.0);
    Field f = zero_field(grid);
    f.samples[7] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(solve_poisson(f, kExps), CheckError);
}

TEST(Orthogonality, QuadratureInnerProduct) {
    GridSpec grid = make_grid(32, 20.0);
    OrthogonalityCheck odd = check_orthogonality(odd_gaussian(grid));
    EXPECT_TRUE(odd.satisfied);
    OrthogonalityCheck even = check_orthogonality(gaussian(grid));
    EXPECT_FALSE(even.satisfied);
    EXPECT_NEAR(even.inner_product, std::pow(2.0 * std::numbers::pi, 1.5), 1e-6);
}

TEST(Sequences, GapsContractGeometrically) {
    GridSpec grid = make_grid(16, 10.0);
    Field f = gaussian(grid);
    std::vector<Field> perts = geometric_perturbations(grid, 6);
    auto rows = sequences_experiment(f, perts, kExps);
    ASSERT_EQ(rows.size(), 6u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].index, static_cast<int>(i));
        EXPECT_LE(rows[i].spectral_gap_l2, rows[i].f_gap_l2 + 1e-10);
        EXPECT_TRUE(rows[i].orthogonality_ok);
        if (i > 0) {
            EXPECT_NEAR(rows[i].f_gap_l2, 0.5 * rows[i - 1].f_gap_l2,
                        1e-12 * rows[i - 1].f_gap_l2);
            EXPECT_LT(rows[i].u_gap_h2s2, rows[i - 1].u_gap_h2s2);
            EXPECT_LT(rows[i].f_gap_l1, rows[i - 1].f_gap_l1);
        }
    }
}

TEST(Sequences, RejectsMismatchedPerturbationGrid) {
    GridSpec grid = make_grid(16, 10.0);
    GridSpec other = make_grid(8, 10.0);
    std::vector<Field> perts = {zero_field(other)};
    EXPECT_THROW(sequences_experiment(gaussian(grid), perts, kExps), ConfigError);
}
