#pragma once

// Shared helpers and independent oracles for the test suites. Oracles here
// are deliberately written against closed forms or plain quadrature so they
// never share code with the library paths they check.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "fsscomp/constants.hpp"
#include "fsscomp/spectra.hpp"

namespace oracle {

// <Phi_H|Phi_V> = Gamma / (Gamma - i S/hbar), from the pair-delay integral
// Int_0^inf Gamma e^{-Gamma tau} e^{i S tau / hbar} dtau.
inline std::complex<double> overlap_closed_form(double splitting_ueV, double gamma) {
    const double s = splitting_ueV / fsscomp::PhysConstants::hbar;
    return gamma / std::complex<double>(gamma, -s);
}

inline double uncompensated_fidelity(double splitting_ueV, double gamma) {
    return 0.5 * (1.0 + overlap_closed_form(splitting_ueV, gamma).real());
}

// Adaptive Simpson quadrature for real integrands.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      int depth = 24) {
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole,
            int d) -> double {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
            return left + right + (left + right - whole) / 15.0;
        }
        return rec(lo, mid, flo, flm, fmid, left, d - 1) +
               rec(mid, hi, fmid, frm, fhi, right, d - 1);
    };
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return rec(a, b, fa, fm, fb, whole, depth);
}

inline std::complex<double> simpson_complex(const std::function<std::complex<double>(double)>& f,
                                            double a, double b, double tol) {
    const double re = simpson([&](double x) { return f(x).real(); }, a, b, tol);
    const double im = simpson([&](double x) { return f(x).imag(); }, a, b, tol);
    return {re, im};
}

// Numeric version of the pair-delay truncated coherence (the tau-gated
// window model): Int_0^T G e^{-G tau} dtau + Int_T^tail G e^{-G tau} e^{i s tau} dtau.
inline std::complex<double> truncated_coherence_numeric(double splitting_ueV, double gamma,
                                                        double window) {
    const double s = splitting_ueV / fsscomp::PhysConstants::hbar;
    const double tail = window + 45.0 / gamma;
    const std::complex<double> head =
        simpson_complex([&](double t) { return std::complex<double>(gamma * std::exp(-gamma * t), 0.0); },
                        0.0, window, 1e-13);
    const std::complex<double> rest = simpson_complex(
        [&](double t) {
            return gamma * std::exp(-gamma * t) * std::polar(1.0, s * t);
        },
        window, tail, 1e-13);
    return head + rest;
}

// Continuum coherence <psi_H|psi_V'> after a per-photon-gated ramp covering
// [0, T] at the canonical rates; the inner tau integrals are analytic, the
// outer t1 integral is quadrature.
inline std::complex<double> windowed_ramp_coherence_numeric(double splitting_ueV, double gamma,
                                                            double window) {
    const double s = splitting_ueV / fsscomp::PhysConstants::hbar;
    const std::complex<double> pole(gamma, -s);  // Gamma - i s
    const double cap = 45.0 / gamma;

    // t1 in [0, T]: tau <= T - t1 fully compensated; beyond, the photon-1
    // factor e^{i s t1} stays while photon 2 escaped the window
    const std::complex<double> inside = simpson_complex(
        [&](double t1) {
            const double rem = window - t1;
            const std::complex<double> compensated((1.0 - std::exp(-gamma * rem)) / gamma, 0.0);
            const std::complex<double> escaped =
                std::polar(1.0, s * t1) *
                std::exp(std::complex<double>(-gamma * rem, s * rem)) / pole;
            return 2.0 * gamma * gamma * std::exp(-2.0 * gamma * t1) * (compensated + escaped);
        },
        0.0, std::min(window, cap), 1e-13);

    // t1 > T: nothing compensated
    std::complex<double> outside = 0.0;
    if (window < cap) {
        outside = std::exp(-2.0 * gamma * window) * gamma / pole;
    }
    return inside + outside;
}

}  // namespace oracle

namespace testutil {

// Separable Gaussian amplitude exp(-(w1-c1)^2/(4 s1^2)) * exp(-(w2-c2)^2/(4 s2^2)),
// normalized on the grid; |amplitude|^2 has standard deviation s_k per axis.
inline fsscomp::SpectralAmplitude gaussian_product(const fsscomp::FrequencyGrid& grid, double c1,
                                                   double c2, double s1, double s2) {
    fsscomp::SpectralAmplitude out(grid);
    for (int i1 = 0; i1 < grid.n; ++i1) {
        const double x1 = grid.omega1(i1) - c1;
        const double g1 = std::exp(-x1 * x1 / (4.0 * s1 * s1));
        for (int i2 = 0; i2 < grid.n; ++i2) {
            const double x2 = grid.omega2(i2) - c2;
            out.at(i1, i2) = g1 * std::exp(-x2 * x2 / (4.0 * s2 * s2));
        }
    }
    return normalize(out);
}

// Smooth band-limited random amplitude: a few low-order Fourier modes with
// a Gaussian envelope, seeded deterministically.
inline fsscomp::SpectralAmplitude random_amplitude(const fsscomp::FrequencyGrid& grid,
                                                   unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const int modes = 3;
    std::vector<std::complex<double>> c1(modes), c2(modes);
    for (int k = 0; k < modes; ++k) {
        c1[k] = {coef(rng), coef(rng)};
        c2[k] = {coef(rng), coef(rng)};
    }
    fsscomp::SpectralAmplitude out(grid);
    const double w = grid.span / 6.0;
    for (int i1 = 0; i1 < grid.n; ++i1) {
        const double x1 = (grid.omega1(i1) - grid.center1) / w;
        std::complex<double> f1 = 0.0;
        for (int k = 0; k < modes; ++k) {
            f1 += c1[k] * std::polar(1.0, k * x1);
        }
        f1 *= std::exp(-0.5 * x1 * x1);
        for (int i2 = 0; i2 < grid.n; ++i2) {
            const double x2 = (grid.omega2(i2) - grid.center2) / w;
            std::complex<double> f2 = 0.0;
            for (int k = 0; k < modes; ++k) {
                f2 += c2[k] * std::polar(1.0, k * x2);
            }
            f2 *= std::exp(-0.5 * x2 * x2);
            out.at(i1, i2) = f1 * f2 + 0.05 * std::polar(1.0, x1 * x2);
        }
    }
    return normalize(out);
}

// Cascade parameters with small artificial carriers; the physics depends
// only on differences, small values keep the tests exact.
inline fsscomp::QDotParams test_params(double splitting_ueV, double gamma) {
    fsscomp::QDotParams p;
    p.omega_h2 = 1000.0;
    p.omega0 = 2000.0;
    p.splitting_ueV = splitting_ueV;
    p.gamma = gamma;
    return p;
}

inline fsscomp::FrequencyGrid centered_grid(const fsscomp::QDotParams& p, double span_gammas,
                                            int n) {
    return {p.omega_h1(), p.omega_h2, span_gammas * p.gamma, n};
}

}  // namespace testutil
