#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "dsfrac/grid.hpp"
#include "dsfrac/nonlinearity.hpp"
#include "dsfrac/spectral.hpp"

namespace dsfrac {

// Riemann quadrature with cell weight h^3 throughout; spectral norms go
// through the multiplier ops, so Parseval ties the two sides together.

inline double l1_norm(const Field& f) {
    double acc = 0.0;
    for (double v : f.samples) acc += std::abs(v);
    return acc * std::pow(f.grid.spacing(), 3);
}

inline double l2_norm(const Field& f) {
    double acc = 0.0;
    for (double v : f.samples) acc += v * v;
    return std::sqrt(acc * std::pow(f.grid.spacing(), 3));
}

inline double linf_norm(const Field& f) { return max_abs(f); }

inline double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
    double acc = 0.0;
    for (double v : f.samples) acc += std::pow(std::abs(v), p);
    return std::pow(acc * std::pow(f.grid.spacing(), 3), 1.0 / p);
}

// First absolute moment about the box center: integral |x| |f(x)| dx.
inline double moment_l1(const Field& f) {
    const GridSpec& g = f.grid;
    double acc = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double x = g.coord(i);
        for (int j = 0; j < g.n; ++j) {
            double y = g.coord(j);
            for (int k = 0; k < g.n; ++k) {
                double z = g.coord(k);
                acc += std::sqrt(x * x + y * y + z * z) * std::abs(f.at(i, j, k));
            }
        }
    }
    return acc * std::pow(g.spacing(), 3);
}

// ||u||_{H^2}^2 = ||u||_{L^2}^2 + ||Delta u||_{L^2}^2.
inline double h2_norm(const Field& f) {
    Field lap = detail::apply_symbol(f, [](double p2) { return p2; });
    double a = l2_norm(f);
    double b = l2_norm(lap);
    return std::sqrt(a * a + b * b);
}

// ||u||_{H^{2 s2}}^2 = ||u||_{L^2}^2 + ||(-Delta)^{s2} u||_{L^2}^2.
inline double h2s2_norm(const Field& f, const FracExponents& exps) {
    Field frac = apply_fractional_laplacian(f, exps.s2);
    double a = l2_norm(f);
    double b = l2_norm(frac);
    return std::sqrt(a * a + b * b);
}

struct NormReport {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
    double h2 = 0.0;
    double h2s2 = 0.0;
    double moment_l1 = 0.0;
    // L^{6/(4 s1 - 1)} norm; undefined (nullopt) when s1 <= 1/4, where the
    // exponent formula leaves (0, inf).
    std::optional<double> lp_frs;
    std::optional<double> frs_exponent;
};

inline NormReport compute_norms(const Field& f, const FracExponents& exps) {
    NormReport r;
    r.l1 = l1_norm(f);
    r.l2 = l2_norm(f);
    r.linf = linf_norm(f);
    r.h2 = h2_norm(f);
    r.h2s2 = h2s2_norm(f, exps);
    r.moment_l1 = moment_l1(f);
    if (4.0 * exps.s1 - 1.0 > 0.0) {
        double p = 6.0 / (4.0 * exps.s1 - 1.0);
        r.frs_exponent = p;
        r.lp_frs = lp_norm(f, p);
    }
    return r;
}

// Q = ||(-Delta)^{1-s1} K||_{L^2}, the kernel smoothness constant. Must be
// strictly positive (a kernel with Q = 0 is constant, hence trivial).
inline double compute_q(const Field& kernel, const FracExponents& exps) {
    if (max_abs(kernel) == 0.0) {
        throw AssumptionError("kernel is identically zero; Q > 0 required");
    }
    double q = l2_norm(apply_fractional_laplacian(kernel, 1.0 - exps.s1));
    if (!(q > 0.0)) {
        throw AssumptionError("kernel smoothness constant Q = 0; Q > 0 required");
    }
    return q;
}

// phi(R) = alpha R^{3 - 4 s1} + R^{-4 s1} on R > 0, the scalar profile whose
// minimum feeds the contraction threshold. Closed form of the minimizer:
//   R* = (4 s1 / (alpha (3 - 4 s1)))^{1/3}
//   phi(R*) = 3 (3 - 4 s1)^{4 s1/3 - 1} (4 s1)^{-4 s1/3} alpha^{4 s1/3}
struct MinimizationProblem {
    double s1 = 0.0;
    double alpha = 0.0;
};

struct MinimizerResult {
    double r_star = 0.0;
    double phi_min = 0.0;
};

inline double phi_profile(const MinimizationProblem& prob, double r) {
    return prob.alpha * std::pow(r, 3.0 - 4.0 * prob.s1) + std::pow(r, -4.0 * prob.s1);
}

inline MinimizerResult profile_minimizer(const MinimizationProblem& prob) {
    if (!(prob.s1 > 0.0 && prob.s1 < 0.75)) {
        throw std::invalid_argument("minimizer requires 0 < s1 < 3/4, got s1 = " +
                                    std::to_string(prob.s1));
    }
    if (!(prob.alpha > 0.0)) {
        throw std::invalid_argument("minimizer requires alpha > 0, got alpha = " +
                                    std::to_string(prob.alpha));
    }
    const double s1 = prob.s1;
    const double a = prob.alpha;
    MinimizerResult res;
    res.r_star = std::pow(4.0 * s1 / (a * (3.0 - 4.0 * s1)), 1.0 / 3.0);
    res.phi_min = 3.0 * std::pow(3.0 - 4.0 * s1, 4.0 * s1 / 3.0 - 1.0) *
                  std::pow(4.0 * s1, -4.0 * s1 / 3.0) * std::pow(a, 4.0 * s1 / 3.0);
    return res;
}

// I = [-halfwidth, halfwidth] with halfwidth = c_e ||u0||_{H^2} + c_e, the
// range u0 + v can reach while v stays in the unit-radius ball (the embedding
// constant c_e turns the H^2 bound into a sup bound). m is the C2 budget of g
// over I.
struct IntervalBudget {
    double halfwidth = 0.0;
    double m = 0.0;
};

inline IntervalBudget interval_and_m(const NonlinearityDef& g, double u0_h2, double c_e,
                                     int samples = 10001) {
    if (!(c_e > 0.0)) throw std::invalid_argument("embedding constant c_e must be positive");
    if (!(u0_h2 >= 0.0)) throw std::invalid_argument("u0_h2 must be nonnegative");
    IntervalBudget b;
    b.halfwidth = c_e * u0_h2 + c_e;
    b.m = c2_norm(g, b.halfwidth, samples);
    if (b.m == 0.0) {
        throw AssumptionError("nonlinearity '" + g.label +
                              "' vanishes identically on the sampling interval");
    }
    return b;
}

// Contraction threshold:
//   H = 2 m (u0_h2 + 1)^2 [ kernel_l1^2 (u0_h2 + 1)^{8 s1/3 - 2}
//          * 3 / ((3 - 4 s1) s1^{4 s1/3} pi^{8 s1/3} 2^{4 s1 + 8 s1/3})
//        + q^2 / 4 ]^{1/2}
//   eps_max = rho / H.
struct ContractionThreshold {
    double h_constant = 0.0;
    double eps_max = 0.0;
};

inline ContractionThreshold contraction_threshold(double q, double m, double u0_h2,
                                                double kernel_l1,
                                                const FracExponents& exps, double rho) {
    std::vector<std::string> bad;
    if (!(exps.s1 > 0.0 && exps.s1 < 0.75))
        bad.push_back("threshold requires 0 < s1 < 3/4, got s1 = " + std::to_string(exps.s1));
    if (!(q > 0.0)) bad.push_back("threshold requires q > 0");
    if (!(m > 0.0)) bad.push_back("threshold requires m > 0");
    if (!(u0_h2 >= 0.0)) bad.push_back("threshold requires u0_h2 >= 0");
    if (!(kernel_l1 >= 0.0)) bad.push_back("threshold requires kernel_l1 >= 0");
    if (!(rho > 0.0 && rho <= 1.0)) bad.push_back("threshold requires rho in (0, 1]");
    if (!bad.empty()) throw AssumptionError(bad);

    const double s1 = exps.s1;
    const double pi = std::numbers::pi;
    double bracket = kernel_l1 * kernel_l1 * std::pow(u0_h2 + 1.0, 8.0 * s1 / 3.0 - 2.0) *
                         3.0 /
                         ((3.0 - 4.0 * s1) * std::pow(s1, 4.0 * s1 / 3.0) *
                          std::pow(pi, 8.0 * s1 / 3.0) *
                          std::pow(2.0, 4.0 * s1 + 8.0 * s1 / 3.0)) +
                     q * q / 4.0;
    ContractionThreshold t;
    t.h_constant = 2.0 * m * std::pow(u0_h2 + 1.0, 2.0) * std::sqrt(bracket);
    t.eps_max = rho / t.h_constant;
    return t;
}

// Lipschitz constant of the fixed-point map and the continuity bound:
//   sigma = m (u0_h2 + 1) [ kernel_l1^2 (u0_h2 + 1)^{8 s1/3 - 2}
//             * 3 / ((3 - 4 s1) s1^{4 s1/3} pi^{8 s1/3} 2^{4 s1}) + q^2 ]^{1/2}
//   continuity_rhs = eps / (1 - eps sigma) * (u0_h2 + 1)^2
//             * [ kernel_l1^2 (u0_h2 + 1)^{8 s1/3 - 2}
//                 * 3 / ((3 - 4 s1) s1^{4 s1/3} pi^{8 s1/3} 2^{4 s1 + 8 s1/3})
//               + q^2 / 4 ]^{1/2} * c2_gap.
// The two brackets differ (2^{4 s1} vs 2^{4 s1 + 8 s1/3}, q^2 vs q^2/4) and the
// continuity prefactor carries no m; both forms are deliberate.
struct SigmaReport {
    double sigma = 0.0;
    double continuity_rhs = 0.0;
};

inline SigmaReport sigma_and_continuity(double q, double m, double u0_h2,
                                        double kernel_l1, const FracExponents& exps,
                                        double eps, double c2_gap) {
    std::vector<std::string> bad;
    if (!(exps.s1 > 0.0 && exps.s1 < 0.75))
        bad.push_back("sigma requires 0 < s1 < 3/4, got s1 = " + std::to_string(exps.s1));
    if (!(q > 0.0)) bad.push_back("sigma requires q > 0");
    if (!(m > 0.0)) bad.push_back("sigma requires m > 0");
    if (!(u0_h2 >= 0.0)) bad.push_back("sigma requires u0_h2 >= 0");
    if (!(kernel_l1 >= 0.0)) bad.push_back("sigma requires kernel_l1 >= 0");
    if (!(eps >= 0.0)) bad.push_back("sigma requires eps >= 0");
    if (!(c2_gap >= 0.0)) bad.push_back("sigma requires c2_gap >= 0");
    if (!bad.empty()) throw AssumptionError(bad);

    const double s1 = exps.s1;
    const double pi = std::numbers::pi;
    SigmaReport r;
    double sig_bracket = kernel_l1 * kernel_l1 *
                             std::pow(u0_h2 + 1.0, 8.0 * s1 / 3.0 - 2.0) /
                             (std::pow(s1, 4.0 * s1 / 3.0) * std::pow(pi, 8.0 * s1 / 3.0) *
                              std::pow(2.0, 4.0 * s1)) *
                             3.0 / (3.0 - 4.0 * s1) +
                         q * q;
    r.sigma = m * (u0_h2 + 1.0) * std::sqrt(sig_bracket);
    if (eps == 0.0) {
        r.continuity_rhs = 0.0;
        return r;
    }
    if (eps * r.sigma >= 1.0) throw NonContractiveError(eps, r.sigma);
    double cont_bracket = kernel_l1 * kernel_l1 *
                              std::pow(u0_h2 + 1.0, 8.0 * s1 / 3.0 - 2.0) * 3.0 /
                              ((3.0 - 4.0 * s1) * std::pow(s1, 4.0 * s1 / 3.0) *
                               std::pow(pi, 8.0 * s1 / 3.0) *
                               std::pow(2.0, 4.0 * s1 + 8.0 * s1 / 3.0)) +
                          q * q / 4.0;
    r.continuity_rhs = eps / (1.0 - eps * r.sigma) * std::pow(u0_h2 + 1.0, 2.0) *
                       std::sqrt(cont_bracket) * c2_gap;
    return r;
}

// Empirical fractional Sobolev ratio ||f||_{L^{6/(4 s1 - 1)}} /
// ||(-Delta)^{1-s1} f||_{L^2}; bounded by the embedding constant c_{s1} when
// 1/4 < s1 < 3/4. Scale invariant: f and c f give the same value.
inline double sobolev_ratio(const Field& f, const FracExponents& exps) {
    if (!(exps.s1 > 0.25 && exps.s1 < 0.75)) {
        throw std::invalid_argument("sobolev_ratio requires 1/4 < s1 < 3/4, got s1 = " +
                                    std::to_string(exps.s1));
    }
    double denom = l2_norm(apply_fractional_laplacian(f, 1.0 - exps.s1));
    if (denom == 0.0) {
        throw std::invalid_argument("sobolev_ratio: zero denominator (field has no "
                                    "fractional energy)");
    }
    return lp_norm(f, 6.0 / (4.0 * exps.s1 - 1.0)) / denom;
}

// Empirical sup/H^2 embedding ratio; bounded by c_e.
inline double embedding_ratio(const Field& f) {
    double denom = h2_norm(f);
    if (denom == 0.0) {
        throw std::invalid_argument("embedding_ratio: zero field");
    }
    return linf_norm(f) / denom;
}

} // namespace dsfrac
