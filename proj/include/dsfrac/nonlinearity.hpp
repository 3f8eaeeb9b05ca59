#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "dsfrac/errors.hpp"

namespace dsfrac {

// Scalar nonlinearity with its first two derivatives supplied analytically.
struct NonlinearityDef {
    std::string label;
    std::function<double(double)> g;
    std::function<double(double)> dg;
    std::function<double(double)> ddg;
};

inline NonlinearityDef quadratic_nonlinearity() {
    return {"quadratic", [](double z) { return z * z; },
            [](double z) { return 2.0 * z; }, [](double) { return 2.0; }};
}

inline NonlinearityDef cubic_nonlinearity() {
    return {"cubic", [](double z) { return z * z * z; },
            [](double z) { return 3.0 * z * z; }, [](double z) { return 6.0 * z; }};
}

// Violates g'(0) = 0; kept for validation tests and CLI error paths.
inline NonlinearityDef identity_nonlinearity() {
    return {"identity", [](double z) { return z; }, [](double) { return 1.0; },
            [](double) { return 0.0; }};
}

inline NonlinearityDef scaled_nonlinearity(const NonlinearityDef& base, double factor) {
    return {base.label + "*" + std::to_string(factor),
            [base, factor](double z) { return factor * base.g(z); },
            [base, factor](double z) { return factor * base.dg(z); },
            [base, factor](double z) { return factor * base.ddg(z); }};
}

// Structural requirements on g: g(0) = 0 and g'(0) = 0 (both within 1e-12).
// Returns the violated clauses; empty means valid.
inline std::vector<std::string> nonlinearity_violations(const NonlinearityDef& def) {
    std::vector<std::string> bad;
    if (std::abs(def.g(0.0)) > 1e-12) {
        bad.push_back("nonlinearity '" + def.label + "' has g(0) = " +
                      std::to_string(def.g(0.0)) + ", required 0");
    }
    if (std::abs(def.dg(0.0)) > 1e-12) {
        bad.push_back("nonlinearity '" + def.label + "' has g'(0) = " +
                      std::to_string(def.dg(0.0)) + ", required 0");
    }
    return bad;
}

inline void validate_nonlinearity(const NonlinearityDef& def) {
    auto bad = nonlinearity_violations(def);
    if (!bad.empty()) throw AssumptionError(bad);
}

// C2 norm over I = [-halfwidth, halfwidth]: sup|g| + sup|g'| + sup|g''| by
// dense sampling (endpoints included).
inline double c2_norm(const NonlinearityDef& def, double halfwidth, int samples = 10001) {
    double sup_g = 0.0, sup_dg = 0.0, sup_ddg = 0.0;
    for (int i = 0; i < samples; ++i) {
        double z = -halfwidth + 2.0 * halfwidth * i / (samples - 1);
        sup_g = std::max(sup_g, std::abs(def.g(z)));
        sup_dg = std::max(sup_dg, std::abs(def.dg(z)));
        sup_ddg = std::max(sup_ddg, std::abs(def.ddg(z)));
    }
    return sup_g + sup_dg + sup_ddg;
}

inline NonlinearityDef difference_nonlinearity(const NonlinearityDef& a,
                                               const NonlinearityDef& b) {
    return {a.label + "-" + b.label,
            [a, b](double z) { return a.g(z) - b.g(z); },
            [a, b](double z) { return a.dg(z) - b.dg(z); },
            [a, b](double z) { return a.ddg(z) - b.ddg(z); }};
}

} // namespace dsfrac
