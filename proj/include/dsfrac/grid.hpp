#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include "dsfrac/errors.hpp"

namespace dsfrac {

// Uniform periodic n^3 box [-L/2, L/2)^3. Sample points x_j = (j - n/2) h
// with h = L/n; wavenumbers p = 2*pi*k/L with signed k in [-n/2, n/2).
// n must be even so the k -> -k reflection stays on the grid (the Nyquist
// index n/2 maps to itself) and the checkerboard phase (-1)^k matches the
// unsigned index parity.
struct GridSpec {
    int n = 0;
    double box_length = 0.0;

    double spacing() const { return box_length / n; }
    double volume() const { return box_length * box_length * box_length; }
    std::size_t num_samples() const {
        return static_cast<std::size_t>(n) * n * n;
    }

    // Physical coordinate of unsigned sample index along one axis.
    double coord(int idx) const { return (idx - n / 2) * spacing(); }

    // Signed frequency index: 0..n/2-1 -> 0..n/2-1, n/2..n-1 -> -n/2..-1.
    int signed_index(int idx) const { return idx < n / 2 ? idx : idx - n; }

    double wavenumber(int idx) const {
        return 2.0 * std::numbers::pi * signed_index(idx) / box_length;
    }

    // Spectral cell volume (2*pi/L)^3, the dual quadrature measure.
    double spectral_cell() const {
        double dp = 2.0 * std::numbers::pi / box_length;
        return dp * dp * dp;
    }

    std::size_t flat(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }

    bool operator==(const GridSpec&) const = default;
};

inline GridSpec make_grid(int n, double box_length) {
    std::vector<std::string> bad;
    if (n < 8) bad.push_back("grid n must be at least 8, got " + std::to_string(n));
    if (n % 2 != 0) bad.push_back("grid n must be even, got " + std::to_string(n));
    if (!(box_length > 0.0))
        bad.push_back("box_length must be positive, got " + std::to_string(box_length));
    if (!bad.empty()) throw AssumptionError(bad);
    return GridSpec{n, box_length};
}

// Real scalar field sampled on a GridSpec, row-major (x, y, z).
struct Field {
    GridSpec grid;
    std::vector<double> samples;

    double& at(int i, int j, int k) { return samples[grid.flat(i, j, k)]; }
    double at(int i, int j, int k) const { return samples[grid.flat(i, j, k)]; }
};

// Complex Fourier coefficients indexed like the sample grid (unsigned index
// i corresponds to signed frequency index via GridSpec::signed_index).
struct SpectralField {
    GridSpec grid;
    std::vector<std::complex<double>> coeffs;

    std::complex<double>& at(int i, int j, int k) { return coeffs[grid.flat(i, j, k)]; }
    std::complex<double> at(int i, int j, int k) const {
        return coeffs[grid.flat(i, j, k)];
    }
};

inline Field zero_field(const GridSpec& grid) {
    return Field{grid, std::vector<double>(grid.num_samples(), 0.0)};
}

// Sample fn(x, y, z) at every grid point.
template <class Fn>
Field sample_field(const GridSpec& grid, Fn&& fn) {
    Field f = zero_field(grid);
    for (int i = 0; i < grid.n; ++i) {
        double x = grid.coord(i);
        for (int j = 0; j < grid.n; ++j) {
            double y = grid.coord(j);
            for (int k = 0; k < grid.n; ++k) {
                f.at(i, j, k) = fn(x, y, grid.coord(k));
            }
        }
    }
    return f;
}

inline bool all_finite(const Field& f) {
    for (double v : f.samples) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

inline double max_abs(const Field& f) {
    double m = 0.0;
    for (double v : f.samples) m = std::max(m, std::abs(v));
    return m;
}

// Regimes of the fractional exponent pair (s1, s2). The regime is always
// declared by the caller, never inferred from the values.
enum class Regime { nonlinear, linear_a, linear_b };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::nonlinear: return "nonlinear";
        case Regime::linear_a: return "linear-a";
        case Regime::linear_b: return "linear-b";
    }
    return "?";
}

struct FracExponents {
    double s1 = 0.0;
    double s2 = 0.0;
    Regime regime = Regime::nonlinear;
};

// Validated constructor: each regime pins its own (s1, s2) window.
//   nonlinear: 1/4 < s1 < 3/4, s1 < s2 < 1
//   linear-a:      0 < s1 < 3/4, s1 < s2 < 1
//   linear-b:    3/4 <= s1 < 1,  s1 < s2 < 1
inline FracExponents make_exponents(double s1, double s2, Regime regime) {
    std::vector<std::string> bad;
    auto note = [&](const std::string& msg) {
        bad.push_back(msg + " (s1=" + std::to_string(s1) + ", s2=" + std::to_string(s2) +
                      ", regime=" + regime_name(regime) + ")");
    };
    if (!(s2 > s1 && s2 < 1.0)) note("require s1 < s2 < 1");
    switch (regime) {
        case Regime::nonlinear:
            if (!(s1 > 0.25 && s1 < 0.75)) note("nonlinear regime requires 1/4 < s1 < 3/4");
            break;
        case Regime::linear_a:
            if (!(s1 > 0.0 && s1 < 0.75)) note("linear-a regime requires 0 < s1 < 3/4");
            break;
        case Regime::linear_b:
            if (!(s1 >= 0.75 && s1 < 1.0)) note("linear-b regime requires 3/4 <= s1 < 1");
            break;
    }
    if (!bad.empty()) throw AssumptionError(bad);
    return FracExponents{s1, s2, regime};
}

} // namespace dsfrac
