#pragma once

// Independent oracles: second implementations along different code paths,
// used only to cross-check the library. Nothing here may call the routine it
// verifies.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dsfrac/grid.hpp"

namespace oracles {

// Direct O(n^6) evaluation of the scaled transform. No FFT, no checkerboard
// phase trick: literal sums over physical coordinates.
inline dsfrac::SpectralField naive_forward(const dsfrac::Field& f) {
    const dsfrac::GridSpec& g = f.grid;
    dsfrac::SpectralField out{g, std::vector<std::complex<double>>(g.num_samples())};
    const double scale =
        std::pow(2.0 * std::numbers::pi, -1.5) * std::pow(g.spacing(), 3);
    for (int k1 = 0; k1 < g.n; ++k1) {
        double p1 = g.wavenumber(k1);
        for (int k2 = 0; k2 < g.n; ++k2) {
            double p2 = g.wavenumber(k2);
            for (int k3 = 0; k3 < g.n; ++k3) {
                double p3 = g.wavenumber(k3);
                std::complex<double> acc = 0.0;
                for (int j1 = 0; j1 < g.n; ++j1) {
                    double x1 = g.coord(j1);
                    for (int j2 = 0; j2 < g.n; ++j2) {
                        double x2 = g.coord(j2);
                        for (int j3 = 0; j3 < g.n; ++j3) {
                            double phase = p1 * x1 + p2 * x2 + p3 * g.coord(j3);
                            acc += f.at(j1, j2, j3) *
                                   std::complex<double>(std::cos(phase), -std::sin(phase));
                        }
                    }
                }
                out.at(k1, k2, k3) = scale * acc;
            }
        }
    }
    return out;
}

// Direct periodic convolution: (K * G)(x_i) = h^3 sum_j K(x_i - x_j) G(x_j),
// with K extended periodically (displacement d maps to sample index
// d + n/2 mod n).
inline dsfrac::Field naive_convolve(const dsfrac::Field& kernel, const dsfrac::Field& g) {
    const dsfrac::GridSpec& gr = kernel.grid;
    dsfrac::Field out = dsfrac::zero_field(gr);
    const double h3 = std::pow(gr.spacing(), 3);
    auto wrap = [&](int d) {
        int m = (d + gr.n / 2) % gr.n;
        return m < 0 ? m + gr.n : m;
    };
    for (int i1 = 0; i1 < gr.n; ++i1) {
        for (int i2 = 0; i2 < gr.n; ++i2) {
            for (int i3 = 0; i3 < gr.n; ++i3) {
                double acc = 0.0;
                for (int j1 = 0; j1 < gr.n; ++j1) {
                    int m1 = wrap(i1 - j1);
                    for (int j2 = 0; j2 < gr.n; ++j2) {
                        int m2 = wrap(i2 - j2);
                        for (int j3 = 0; j3 < gr.n; ++j3) {
                            acc += kernel.at(m1, m2, wrap(i3 - j3)) * g.at(j1, j2, j3);
                        }
                    }
                }
                out.at(i1, i2, i3) = h3 * acc;
            }
        }
    }
    return out;
}

// The certified constants transcribed a second time in exp/log arrangement.
// u0h2 + 1 >= 1 and s1, pi > 0 keep every logarithm in domain.
inline double h_constant_alt(double q, double m, double u0h2, double kl1, double s1) {
    const double pi = std::numbers::pi;
    const double u = u0h2 + 1.0;
    const double e43 = 4.0 * s1 / 3.0;
    double denom = (3.0 - 4.0 * s1) * std::exp(e43 * std::log(s1)) *
                   std::exp(2.0 * e43 * std::log(pi)) *
                   std::exp((4.0 * s1 + 2.0 * e43) * std::log(2.0));
    double term = kl1 * kl1 * std::exp((2.0 * e43 - 2.0) * std::log(u)) * 3.0 / denom;
    return 2.0 * m * u * u * std::sqrt(term + 0.25 * q * q);
}

inline double sigma_alt(double q, double m, double u0h2, double kl1, double s1) {
    const double pi = std::numbers::pi;
    const double u = u0h2 + 1.0;
    const double e43 = 4.0 * s1 / 3.0;
    double denom = (3.0 - 4.0 * s1) * std::exp(e43 * std::log(s1)) *
                   std::exp(2.0 * e43 * std::log(pi)) *
                   std::exp(4.0 * s1 * std::log(2.0));
    double term = kl1 * kl1 * std::exp((2.0 * e43 - 2.0) * std::log(u)) * 3.0 / denom;
    return m * u * std::sqrt(term + q * q);
}

inline double continuity_rhs_alt(double q, double m, double u0h2, double kl1, double s1,
                                 double eps, double c2_gap) {
    const double pi = std::numbers::pi;
    const double u = u0h2 + 1.0;
    const double e43 = 4.0 * s1 / 3.0;
    if (eps == 0.0) return 0.0;
    double sigma = sigma_alt(q, m, u0h2, kl1, s1);
    double denom = (3.0 - 4.0 * s1) * std::exp(e43 * std::log(s1)) *
                   std::exp(2.0 * e43 * std::log(pi)) *
                   std::exp((4.0 * s1 + 2.0 * e43) * std::log(2.0));
    double term = kl1 * kl1 * std::exp((2.0 * e43 - 2.0) * std::log(u)) * 3.0 / denom;
    return eps / (1.0 - eps * sigma) * u * u * std::sqrt(term + 0.25 * q * q) * c2_gap;
}

} // namespace oracles
