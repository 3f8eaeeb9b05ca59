#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dsfrac/fft.hpp"
#include "dsfrac/grid.hpp"

// Discrete realization of the Fourier pair
//   phi_hat(p) = (2*pi)^{-3/2} integral phi(x) e^{-i p.x} dx
//   phi(x)     = (2*pi)^{-3/2} integral phi_hat(p) e^{+i p.x} dp
// on the periodic box: forward = (2*pi)^{-3/2} h^3 (-1)^{k1+k2+k3} DFT[phi],
// inverse uses the dual measure (2*pi/L)^3. The checkerboard sign carries the
// -L/2 grid offset; for even n the signed and unsigned index parities agree.

namespace dsfrac {

inline constexpr double two_pi_pow_neg_3_2 = 0.063493635934240969; // (2*pi)^{-3/2}
inline constexpr double two_pi_pow_pos_3_2 = 15.749609945722419;   // (2*pi)^{+3/2}

inline SpectralField forward_transform(const Field& f) {
    const GridSpec& g = f.grid;
    std::vector<std::complex<double>> buf(f.samples.begin(), f.samples.end());
    detail::fft3(buf, g.n, FFTW_FORWARD);
    const double h = g.spacing();
    const double scale = two_pi_pow_neg_3_2 * h * h * h;
    SpectralField out{g, std::move(buf)};
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
            for (int k = 0; k < g.n; ++k) {
                double sign = ((i + j + k) & 1) ? -scale : scale;
                out.at(i, j, k) *= sign;
            }
        }
    }
    return out;
}

// Inverse transform of a Hermitian spectrum. The imaginary residue is checked
// against imag_tol (relative to the field magnitude) and discarded.
inline Field inverse_transform(const SpectralField& spec, double imag_tol = 1e-12) {
    const GridSpec& g = spec.grid;
    std::vector<std::complex<double>> buf(spec.coeffs);
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
            for (int k = 0; k < g.n; ++k) {
                if ((i + j + k) & 1) buf[g.flat(i, j, k)] = -buf[g.flat(i, j, k)];
            }
        }
    }
    detail::fft3(buf, g.n, FFTW_BACKWARD);
    const double scale = two_pi_pow_neg_3_2 * g.spectral_cell();
    Field out = zero_field(g);
    double max_imag = 0.0;
    double max_real = 0.0;
    for (std::size_t idx = 0; idx < buf.size(); ++idx) {
        double re = buf[idx].real() * scale;
        double im = buf[idx].imag() * scale;
        out.samples[idx] = re;
        max_imag = std::max(max_imag, std::abs(im));
        max_real = std::max(max_real, std::abs(re));
    }
    if (max_imag > imag_tol * std::max(1.0, max_real)) {
        throw CheckError("inverse transform produced imaginary residue " +
                         std::to_string(max_imag) + " (field magnitude " +
                         std::to_string(max_real) + ")");
    }
    return out;
}

// |p|^2 at unsigned frequency index (i, j, k).
inline double p_squared(const GridSpec& g, int i, int j, int k) {
    double px = g.wavenumber(i);
    double py = g.wavenumber(j);
    double pz = g.wavenumber(k);
    return px * px + py * py + pz * pz;
}

namespace detail {

// Diagonal Fourier multiplier sym(|p|^2) applied in one pass. The forward and
// inverse checkerboard phases and measure factors cancel to 1/n^3, so the raw
// DFT pair is used directly.
template <class SymbolFn>
Field apply_symbol(const Field& f, SymbolFn&& sym, double imag_tol = 1e-12) {
    const GridSpec& g = f.grid;
    std::vector<std::complex<double>> buf(f.samples.begin(), f.samples.end());
    fft3(buf, g.n, FFTW_FORWARD);
    const double norm = 1.0 / static_cast<double>(g.num_samples());
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
            for (int k = 0; k < g.n; ++k) {
                buf[g.flat(i, j, k)] *= sym(p_squared(g, i, j, k)) * norm;
            }
        }
    }
    fft3(buf, g.n, FFTW_BACKWARD);
    Field out = zero_field(g);
    double max_imag = 0.0;
    double max_real = 0.0;
    for (std::size_t idx = 0; idx < buf.size(); ++idx) {
        out.samples[idx] = buf[idx].real();
        max_imag = std::max(max_imag, std::abs(buf[idx].imag()));
        max_real = std::max(max_real, std::abs(buf[idx].real()));
    }
    if (max_imag > imag_tol * std::max(1.0, max_real)) {
        throw CheckError("symbol application produced imaginary residue " +
                         std::to_string(max_imag));
    }
    return out;
}

} // namespace detail

// (-Delta)^s as the multiplier |p|^{2s}. The zero mode maps to zero for every
// s > 0. Exponents above 3/2 are outside the operating range of every user of
// this op and are rejected.
inline Field apply_fractional_laplacian(const Field& f, double s) {
    if (!(s > 0.0) || s > 1.5) {
        throw std::invalid_argument("fractional exponent must lie in (0, 1.5], got " +
                                    std::to_string(s));
    }
    return detail::apply_symbol(f, [s](double p2) { return std::pow(p2, s); });
}

// The mixed operator (-Delta)^{s1} + (-Delta)^{s2}.
inline Field apply_mixed_operator(const Field& f, const FracExponents& exps) {
    const double s1 = exps.s1;
    const double s2 = exps.s2;
    return detail::apply_symbol(
        f, [s1, s2](double p2) { return std::pow(p2, s1) + std::pow(p2, s2); });
}

// Periodic convolution through the transform pair: with this convention
// (K * G)^ = (2*pi)^{3/2} K_hat G_hat.
inline Field convolve(const Field& kernel, const Field& g) {
    if (!(kernel.grid == g.grid)) {
        throw ConfigError("convolve: kernel and field live on different grids");
    }
    SpectralField kh = forward_transform(kernel);
    SpectralField gh = forward_transform(g);
    for (std::size_t idx = 0; idx < kh.coeffs.size(); ++idx) {
        kh.coeffs[idx] *= two_pi_pow_pos_3_2 * gh.coeffs[idx];
    }
    return inverse_transform(kh);
}

// Largest deviation from Hermitian symmetry F(-k) = conj(F(k)); zero (to
// roundoff) for transforms of real fields.
inline double hermitian_defect(const SpectralField& spec) {
    const GridSpec& g = spec.grid;
    auto reflect = [&](int idx) { return idx == 0 ? 0 : g.n - idx; };
    double worst = 0.0;
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
            for (int k = 0; k < g.n; ++k) {
                std::complex<double> a = spec.at(i, j, k);
                std::complex<double> b = spec.at(reflect(i), reflect(j), reflect(k));
                worst = std::max(worst, std::abs(a - std::conj(b)));
            }
        }
    }
    return worst;
}

// Delta surrogate: 1/h^3 at the box center, the identity of discrete
// convolution.
inline Field delta_surrogate(const GridSpec& grid) {
    Field f = zero_field(grid);
    double h = grid.spacing();
    f.at(grid.n / 2, grid.n / 2, grid.n / 2) = 1.0 / (h * h * h);
    return f;
}

} // namespace dsfrac
