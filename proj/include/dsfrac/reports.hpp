#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dsfrac/fixed_point.hpp"
#include "dsfrac/io.hpp"
#include "dsfrac/linear_solver.hpp"
#include "dsfrac/scenarios.hpp"

namespace dsfrac {

inline CsvTable trace_table(const PicardTrace& trace) {
    CsvTable t;
    t.comments = {"picard iteration trace",
                  "columns: iter, ||v_k||_H2, ||v_k - v_{k-1}||_H2, distance ratio, "
                  "iterate inside B_rho"};
    t.header = {"iter", "h2_norm", "h2_distance", "contraction_ratio", "in_ball"};
    for (const auto& rec : trace.iterations) {
        t.rows.push_back({std::to_string(rec.iter), format_g17(rec.h2_norm),
                          format_g17(rec.h2_distance), format_g17(rec.contraction_ratio),
                          rec.in_ball ? "1" : "0"});
    }
    return t;
}

inline CsvTable probe_table(const std::vector<ProbePair>& pairs, double eps) {
    CsvTable t;
    t.comments = {"contraction probe: measured Lipschitz ratios of t_g on B_rho",
                  "bound column is the certified constant eps*sigma"};
    t.header = {"eps", "trial", "distance", "mapped_distance", "ratio", "bound"};
    int trial = 0;
    for (const auto& p : pairs) {
        t.rows.push_back({format_g17(eps), std::to_string(trial++), format_g17(p.distance),
                          format_g17(p.mapped_distance), format_g17(p.ratio),
                          format_g17(p.bound)});
    }
    return t;
}

inline CsvTable sequences_table(const std::vector<SequenceGapRow>& rows) {
    CsvTable t;
    t.comments = {"approximation-by-sequences experiment",
                  "spectral_gap_l2 = ||(-Delta)^{s2}(u_n - u)||_L2, bounded by f_gap_l2"};
    t.header = {"index", "f_gap_l2", "f_gap_l1", "u_gap_h2s2", "spectral_gap_l2",
                "orthogonality_ok"};
    for (const auto& r : rows) {
        t.rows.push_back({std::to_string(r.index), format_g17(r.f_gap_l2),
                          format_g17(r.f_gap_l1), format_g17(r.u_gap_h2s2),
                          format_g17(r.spectral_gap_l2), r.orthogonality_ok ? "1" : "0"});
    }
    return t;
}

struct SweepRow {
    double eps = 0.0;
    int iterations = 0;
    bool converged = false;
    double up_h2 = 0.0;
    double up_h2_over_eps = 0.0;
    double max_picard_ratio = 0.0;
    double bound = 0.0; // eps * sigma
};

// Picard solve across log-spaced eps values eps_max * 2^{-(points-1)} ...
// eps_max * scale_top.
inline std::vector<SweepRow> run_sweep(const Scenario& scenario,
                                       const FixedPointConfig& base_config, int points,
                                       double scale_top = 1.0) {
    if (!scenario.bounds.eps_max || !scenario.bounds.sigma) {
        throw AssumptionError("sweep requires a nonlinear scenario with certified eps_max");
    }
    if (points < 2) throw ConfigError("sweep needs at least 2 points");
    double eps_top = *scenario.bounds.eps_max * scale_top;
    std::vector<SweepRow> rows;
    rows.reserve(points);
    for (int j = 0; j < points; ++j) {
        FixedPointConfig config = base_config;
        config.eps = eps_top * std::pow(2.0, -(points - 1 - j));
        PicardTrace trace = picard_solve(scenario, config);
        SweepRow row;
        row.eps = config.eps;
        row.iterations = static_cast<int>(trace.iterations.size());
        row.converged = trace.converged;
        row.up_h2 = h2_norm(trace.u_p);
        row.up_h2_over_eps = row.up_h2 / config.eps;
        for (const auto& rec : trace.iterations) {
            row.max_picard_ratio = std::max(row.max_picard_ratio, rec.contraction_ratio);
        }
        row.bound = config.eps * *scenario.bounds.sigma;
        rows.push_back(row);
    }
    return rows;
}

inline CsvTable sweep_table(const std::vector<SweepRow>& rows) {
    CsvTable t;
    t.comments = {"eps sweep: fixed-point solve per eps",
                  "bound column is eps*sigma, the certified contraction constant"};
    t.header = {"eps", "iterations", "converged", "up_h2", "up_h2_over_eps",
                "max_picard_ratio", "bound"};
    for (const auto& r : rows) {
        t.rows.push_back({format_g17(r.eps), std::to_string(r.iterations),
                          r.converged ? "1" : "0", format_g17(r.up_h2),
                          format_g17(r.up_h2_over_eps), format_g17(r.max_picard_ratio),
                          format_g17(r.bound)});
    }
    return t;
}

// Residual of the exact symbol identity
//   [-Delta + (-Delta)^{1+s2-s1}] u0 = (-Delta)^{1-s1} f
// for the mean-projected forcing; zero up to roundoff because u0 is obtained
// by symbol division from the same f.
inline double operator_identity_residual(const Scenario& sc) {
    const double s1 = sc.exps.s1, s2 = sc.exps.s2;
    Field lhs = detail::apply_symbol(
        sc.u0, [&](double p2) { return p2 + std::pow(p2, 1.0 + s2 - s1); });
    Field fproj = sc.f;
    double mean = 0.0;
    for (double v : fproj.samples) mean += v;
    mean /= static_cast<double>(fproj.samples.size());
    for (double& v : fproj.samples) v -= mean;
    Field rhs = detail::apply_symbol(
        fproj, [&](double p2) { return std::pow(p2, 1.0 - s1); });
    for (std::size_t idx = 0; idx < lhs.samples.size(); ++idx) {
        lhs.samples[idx] -= rhs.samples[idx];
    }
    return l2_norm(lhs);
}

// Mean-zero perturbations phi_j = 2^{-j} * x1 exp(-|x|^2 / (2 width^2)) for
// the approximation experiment.
inline std::vector<Field> geometric_perturbations(const GridSpec& grid, int count,
                                                  double width = 1.0) {
    std::vector<Field> out;
    out.reserve(count);
    FieldDef def{"odd-gaussian", 1.0, width, {0.0, 0.0, 0.0}};
    Field base = materialize_field(grid, def);
    for (int j = 0; j < count; ++j) {
        Field pert = base;
        double scale = std::pow(2.0, -j);
        for (double& s : pert.samples) s *= scale;
        out.push_back(std::move(pert));
    }
    return out;
}

} // namespace dsfrac
