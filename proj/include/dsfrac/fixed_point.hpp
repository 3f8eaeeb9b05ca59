#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dsfrac/analysis.hpp"
#include "dsfrac/linear_solver.hpp"
#include "dsfrac/rng.hpp"
#include "dsfrac/scenarios.hpp"

namespace dsfrac {

// Picard iteration for the correction v solving v = t_g(v), where
//   t_g(v) = solve_poisson(eps * K * g(u0 + v))
// and the full solution is u = u0 + v. Contraction of t_g on the ball
// B_rho in H^2 is certified for eps <= eps_max.

enum class BallPolicy { reject, warn };

struct FixedPointConfig {
    double eps = 0.0;
    double rho = 1.0;
    double tol = 1e-10;
    int max_iters = 100;
    BallPolicy ball_policy = BallPolicy::warn;
    // u0 + v may overshoot the sampling interval I by this relative slack
    // before the map refuses to evaluate g.
    double interval_slack = 0.01;
    double tol_orth = 1e-8;
};

struct IterationRecord {
    int iter = 0;
    double h2_norm = 0.0;
    double h2_distance = 0.0;
    double contraction_ratio = 0.0; // distance shrink factor; 0 on the first step
    bool in_ball = true;
};

struct PicardTrace {
    std::vector<IterationRecord> iterations;
    Field u_p; // converged correction
    Field u;   // u0 + u_p
    double residual_h2 = 0.0;          // final H^2 step distance
    double equation_residual_l2 = 0.0; // || l u_p - P0 rhs(u_p) ||_{L^2}
    bool in_ball = true;
    bool converged = false;
};

// One application of t_g. Throws IntervalExitError if u0 + v leaves the
// certified interval I beyond the configured slack (the C2 budget for g no
// longer applies there).
inline Field apply_map_tg(const Field& v, const Scenario& scenario,
                          const FixedPointConfig& config) {
    if (!(v.grid == scenario.grid)) {
        throw ConfigError("apply_map_tg: field grid does not match scenario grid");
    }
    Field w = scenario.u0;
    for (std::size_t idx = 0; idx < w.samples.size(); ++idx) {
        w.samples[idx] += v.samples[idx];
    }
    if (scenario.bounds.interval_halfwidth) {
        double limit = *scenario.bounds.interval_halfwidth * (1.0 + config.interval_slack);
        double reach = max_abs(w);
        if (reach > limit) {
            throw IntervalExitError("u0 + v reaches " + std::to_string(reach) +
                                    ", outside the certified interval halfwidth " +
                                    std::to_string(*scenario.bounds.interval_halfwidth));
        }
    }
    for (double& s : w.samples) s = scenario.g.g(s);
    Field rhs = convolve(scenario.kernel, w);
    for (double& s : rhs.samples) s *= config.eps;
    return solve_poisson(rhs, scenario.exps, config.tol_orth).solution;
}

namespace detail {

inline Field field_difference(const Field& a, const Field& b) {
    Field d = a;
    for (std::size_t idx = 0; idx < d.samples.size(); ++idx) {
        d.samples[idx] -= b.samples[idx];
    }
    return d;
}

// Residual of the projected fixed-point equation at v:
// || l v - P0 [eps K * g(u0 + v)] ||_{L^2} with P0 the mean projection.
inline double equation_residual(const Field& v, const Scenario& scenario,
                                const FixedPointConfig& config) {
    Field w = scenario.u0;
    for (std::size_t idx = 0; idx < w.samples.size(); ++idx) {
        w.samples[idx] += v.samples[idx];
    }
    for (double& s : w.samples) s = scenario.g.g(s);
    Field rhs = convolve(scenario.kernel, w);
    double mean = 0.0;
    for (double s : rhs.samples) mean += s;
    mean /= static_cast<double>(rhs.samples.size());
    Field lv = apply_mixed_operator(v, scenario.exps);
    for (std::size_t idx = 0; idx < lv.samples.size(); ++idx) {
        lv.samples[idx] -= config.eps * (rhs.samples[idx] - mean);
    }
    return l2_norm(lv);
}

} // namespace detail

// Iterate from v0 (default zero field) until the H^2 step distance drops
// below tol. Non-convergence is reported through converged = false with the
// full trace; ball exits follow config.ball_policy.
inline PicardTrace picard_solve(const Scenario& scenario, const FixedPointConfig& config,
                                const Field* v0 = nullptr) {
    if (!(config.tol > 0.0)) throw ConfigError("picard tol must be positive");
    if (config.max_iters < 1) throw ConfigError("picard max_iters must be at least 1");
    if (!(config.eps >= 0.0)) throw ConfigError("picard eps must be nonnegative");

    Field v = v0 ? *v0 : zero_field(scenario.grid);
    if (!(v.grid == scenario.grid)) {
        throw ConfigError("picard_solve: start field grid mismatch");
    }
    PicardTrace trace;
    double prev_distance = 0.0;
    for (int iter = 1; iter <= config.max_iters; ++iter) {
        Field next = apply_map_tg(v, scenario, config);
        double distance = h2_norm(detail::field_difference(next, v));
        IterationRecord rec;
        rec.iter = iter;
        rec.h2_norm = h2_norm(next);
        rec.h2_distance = distance;
        rec.contraction_ratio = prev_distance > 0.0 ? distance / prev_distance : 0.0;
        rec.in_ball = rec.h2_norm <= config.rho + 1e-12;
        trace.iterations.push_back(rec);
        if (!rec.in_ball) {
            trace.in_ball = false;
            if (config.ball_policy == BallPolicy::reject) {
                throw ConvergenceError("iterate " + std::to_string(iter) +
                                       " left the ball: ||v||_H2 = " +
                                       std::to_string(rec.h2_norm) + " > rho = " +
                                       std::to_string(config.rho));
            }
        }
        v = std::move(next);
        prev_distance = distance;
        if (distance <= config.tol) {
            trace.converged = true;
            break;
        }
    }
    trace.u_p = v;
    trace.u = scenario.u0;
    for (std::size_t idx = 0; idx < trace.u.samples.size(); ++idx) {
        trace.u.samples[idx] += trace.u_p.samples[idx];
    }
    trace.residual_h2 = prev_distance;
    trace.equation_residual_l2 = detail::equation_residual(trace.u_p, scenario, config);
    return trace;
}

// Random H^2 field with norm uniform in (0, rho]: white noise shaped by the
// smoothing multiplier |p|^{-4} (zero mode dropped), then rescaled. The
// target norm is drawn before the noise so the sample is a pure function of
// the rng state.
inline Field sample_ball_field(const GridSpec& grid, double rho, Rng& rng) {
    if (!(rho > 0.0)) throw ConfigError("sample_ball_field: rho must be positive");
    double target = rho * rng.uniform01_open_low();
    Field noise = zero_field(grid);
    for (double& s : noise.samples) s = rng.normal();
    Field shaped = detail::apply_symbol(
        noise, [](double p2) { return p2 == 0.0 ? 0.0 : 1.0 / (p2 * p2); });
    double norm = h2_norm(shaped);
    if (!(norm > 0.0)) throw CheckError("sample_ball_field: degenerate sample");
    double scale = target / norm;
    for (double& s : shaped.samples) s *= scale;
    return shaped;
}

struct ProbePair {
    double distance = 0.0;        // ||v1 - v2||_{H^2}
    double mapped_distance = 0.0; // ||t_g v1 - t_g v2||_{H^2}
    double ratio = 0.0;
    double bound = 0.0; // eps * sigma
};

// Empirical Lipschitz probe of t_g on B_rho: random pairs, measured shrink
// ratio against the certified bound eps * sigma. Degenerate pairs (distance
// below 1e-12) are redrawn.
inline std::vector<ProbePair> contraction_probe(const Scenario& scenario,
                                                const FixedPointConfig& config,
                                                int trials, std::uint64_t seed) {
    if (trials < 1) throw ConfigError("contraction_probe: trials must be at least 1");
    if (!scenario.bounds.sigma) {
        throw AssumptionError("contraction_probe requires a nonlinear scenario with "
                              "certified sigma");
    }
    double bound = config.eps * *scenario.bounds.sigma;
    Rng rng(seed);
    std::vector<ProbePair> pairs;
    pairs.reserve(trials);
    while (static_cast<int>(pairs.size()) < trials) {
        Field v1 = sample_ball_field(scenario.grid, config.rho, rng);
        Field v2 = sample_ball_field(scenario.grid, config.rho, rng);
        double distance = h2_norm(detail::field_difference(v1, v2));
        if (distance < 1e-12) continue;
        Field t1 = apply_map_tg(v1, scenario, config);
        Field t2 = apply_map_tg(v2, scenario, config);
        ProbePair p;
        p.distance = distance;
        p.mapped_distance = h2_norm(detail::field_difference(t1, t2));
        p.ratio = p.mapped_distance / distance;
        p.bound = bound;
        pairs.push_back(p);
    }
    return pairs;
}

struct ContinuityReport {
    double lhs = 0.0; // ||u(g1) - u(g2)||_{H^2}
    double rhs = 0.0; // certified continuity bound
    double c2_gap = 0.0;
    double m_used = 0.0;
    double sigma_used = 0.0;
};

// Solve under two nonlinearities and compare the H^2 gap of the solutions
// against the continuity bound evaluated with m = max of the two C2 budgets.
inline ContinuityReport continuity_experiment(const Scenario& scenario,
                                              const NonlinearityDef& g1,
                                              const NonlinearityDef& g2,
                                              const FixedPointConfig& config) {
    validate_nonlinearity(g1);
    validate_nonlinearity(g2);
    if (!scenario.bounds.interval_halfwidth) {
        throw AssumptionError("continuity_experiment requires a nonlinear scenario");
    }
    const BoundsReport& b = scenario.bounds;
    double hw = *b.interval_halfwidth;

    ContinuityReport rep;
    rep.m_used = std::max(c2_norm(g1, hw), c2_norm(g2, hw));
    rep.c2_gap = c2_norm(difference_nonlinearity(g1, g2), hw);
    SigmaReport sig = sigma_and_continuity(b.q, rep.m_used, b.u0_h2, b.kernel_l1,
                                           scenario.exps, config.eps, rep.c2_gap);
    rep.sigma_used = sig.sigma;
    rep.rhs = sig.continuity_rhs;

    Scenario sc1 = scenario;
    sc1.g = g1;
    Scenario sc2 = scenario;
    sc2.g = g2;
    PicardTrace t1 = picard_solve(sc1, config);
    PicardTrace t2 = picard_solve(sc2, config);
    if (!t1.converged || !t2.converged) {
        throw ConvergenceError("continuity_experiment: picard iteration did not converge");
    }
    rep.lhs = h2_norm(detail::field_difference(t1.u, t2.u));
    return rep;
}

} // namespace dsfrac
