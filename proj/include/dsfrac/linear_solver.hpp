#pragma once

#include <cmath>
#include <vector>

#include "dsfrac/analysis.hpp"
#include "dsfrac/grid.hpp"
#include "dsfrac/spectral.hpp"

namespace dsfrac {

// Direct spectral solve of [(-Delta)^{s1} + (-Delta)^{s2}] u = f by symbol
// division. The symbol vanishes at p = 0, so the zero mode of f cannot be
// inverted: it is projected out, its mass recorded, and u is fixed to have
// zero mean. In regime linear-b the projected mass must already be below
// tol_orth, and the report flags violations.
struct LinearSolveReport {
    Field solution;
    double residual_l2 = 0.0;
    double zero_mode_mass = 0.0;
    Regime regime = Regime::linear_a;
    bool orthogonality_satisfied = true;
};

struct OrthogonalityCheck {
    double inner_product = 0.0;
    bool satisfied = true;
};

// (f, 1)_{L^2} by quadrature.
inline OrthogonalityCheck check_orthogonality(const Field& f, double tol = 1e-8) {
    double acc = 0.0;
    for (double v : f.samples) acc += v;
    OrthogonalityCheck c;
    c.inner_product = acc * std::pow(f.grid.spacing(), 3);
    c.satisfied = std::abs(c.inner_product) <= tol;
    return c;
}

inline LinearSolveReport solve_poisson(const Field& f, const FracExponents& exps,
                                       double tol_orth = 1e-8) {
    if (!all_finite(f)) throw CheckError("solve_poisson: right side has non-finite samples");
    const GridSpec& g = f.grid;
    const double s1 = exps.s1;
    const double s2 = exps.s2;

    SpectralField fh = forward_transform(f);
    LinearSolveReport rep;
    rep.zero_mode_mass = std::abs(fh.at(0, 0, 0));
    fh.at(0, 0, 0) = 0.0;
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
            for (int k = 0; k < g.n; ++k) {
                if (i == 0 && j == 0 && k == 0) continue;
                double p2 = p_squared(g, i, j, k);
                fh.at(i, j, k) /= std::pow(p2, s1) + std::pow(p2, s2);
            }
        }
    }
    rep.solution = inverse_transform(fh);

    // The nonlinear regime rides on the linear-a mechanics (its s1 window is
    // contained in linear-a's).
    rep.regime = exps.regime == Regime::linear_b ? Regime::linear_b : Regime::linear_a;
    rep.orthogonality_satisfied =
        rep.regime != Regime::linear_b || rep.zero_mode_mass <= tol_orth;

    // Residual against the mean-projected right side, which is the part of f
    // the operator can reach.
    double mean = 0.0;
    for (double v : f.samples) mean += v;
    mean /= static_cast<double>(g.num_samples());
    Field lu = apply_mixed_operator(rep.solution, exps);
    for (std::size_t idx = 0; idx < lu.samples.size(); ++idx) {
        lu.samples[idx] -= f.samples[idx] - mean;
    }
    rep.residual_l2 = l2_norm(lu);
    return rep;
}

// One row of the approximation experiment: solve with f + perturbation and
// compare against the unperturbed solution. spectral_gap_l2 is
// ||(-Delta)^{s2}(u_n - u)||_{L^2}, which the symbol inequality bounds by
// ||f_n - f||_{L^2} pointwise in Fourier space.
struct SequenceGapRow {
    int index = 0;
    double f_gap_l2 = 0.0;
    double f_gap_l1 = 0.0;
    double u_gap_h2s2 = 0.0;
    double spectral_gap_l2 = 0.0;
    bool orthogonality_ok = true;
};

inline std::vector<SequenceGapRow> sequences_experiment(
    const Field& f_target, const std::vector<Field>& perturbations,
    const FracExponents& exps, double tol_orth = 1e-8) {
    LinearSolveReport base = solve_poisson(f_target, exps, tol_orth);
    std::vector<SequenceGapRow> rows;
    rows.reserve(perturbations.size());
    int index = 0;
    for (const Field& pert : perturbations) {
        if (!(pert.grid == f_target.grid)) {
            throw ConfigError("sequences_experiment: perturbation grid mismatch");
        }
        Field fn = f_target;
        for (std::size_t idx = 0; idx < fn.samples.size(); ++idx) {
            fn.samples[idx] += pert.samples[idx];
        }
        LinearSolveReport rep = solve_poisson(fn, exps, tol_orth);
        Field du = rep.solution;
        for (std::size_t idx = 0; idx < du.samples.size(); ++idx) {
            du.samples[idx] -= base.solution.samples[idx];
        }
        SequenceGapRow row;
        row.index = index++;
        row.f_gap_l2 = l2_norm(pert);
        row.f_gap_l1 = l1_norm(pert);
        row.u_gap_h2s2 = h2s2_norm(du, exps);
        row.spectral_gap_l2 = l2_norm(apply_fractional_laplacian(du, exps.s2));
        row.orthogonality_ok = rep.orthogonality_satisfied;
        rows.push_back(row);
    }
    return rows;
}

} // namespace dsfrac
