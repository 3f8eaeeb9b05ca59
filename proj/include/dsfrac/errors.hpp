#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dsfrac {

// Bad run configuration (unknown scenario, malformed config file, invalid flag
// combinations). CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A structural assumption does not hold (kernel identically zero, g'(0) != 0,
// regime window violated, ...). Carries one clause per violated assumption.
// CLI exit code 3.
class AssumptionError : public std::runtime_error {
public:
    explicit AssumptionError(std::vector<std::string> clauses)
        : std::runtime_error(join(clauses)), clauses_(std::move(clauses)) {}
    explicit AssumptionError(const std::string& clause)
        : AssumptionError(std::vector<std::string>{clause}) {}

    const std::vector<std::string>& clauses() const { return clauses_; }

private:
    static std::string join(const std::vector<std::string>& cs) {
        std::string out = "assumption violated:";
        for (const auto& c : cs) {
            out += "\n  - " + c;
        }
        return out;
    }
    std::vector<std::string> clauses_;
};

// eps*sigma >= 1: the contraction certificate is void at this eps.
class NonContractiveError : public AssumptionError {
public:
    NonContractiveError(double eps, double sigma)
        : AssumptionError("non-contractive: eps*sigma = " + std::to_string(eps * sigma) +
                          " >= 1") {}
};

// u0 + v left the sampling interval I beyond the configured slack; the C2
// budget M no longer certifies the map.
class IntervalExitError : public AssumptionError {
public:
    using AssumptionError::AssumptionError;
};

// Iteration failed to converge, or an iterate left the ball under the
// reject policy. CLI exit code 4.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Internal numerical consistency check failed (non-real inverse transform,
// non-finite samples where finiteness is guaranteed).
class CheckError : public std::runtime_error {
public:
    explicit CheckError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dsfrac
