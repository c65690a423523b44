#pragma once

#include <complex>
#include <vector>

#include "fsscomp/constants.hpp"
#include "fsscomp/grid.hpp"

namespace fsscomp {

enum class Path { H, V };

// Cascade parameters. Transition angular frequencies are rad/ns, the
// fine-structure splitting is ueV, the decay rate 1/ns (shared by all four
// transitions). Only transition frequencies are stored; absolute level
// energies never enter the amplitudes.
struct QDotParams {
    double omega0 = 0.0;        // biexciton -> ground two-photon frequency sum
    double omega_h2 = 0.0;      // X_H -> GS transition (second photon, H path)
    double splitting_ueV = 0.0; // S
    double gamma = 1.0;         // decay rate of the four transitions

    double splitting_rad() const { return ueV_to_rad_per_ns(splitting_ueV); }
    double omega_v2() const { return omega_h2 - splitting_rad(); }
    double omega_h1() const { return omega0 - omega_h2; }
    double omega_v1() const { return omega0 - omega_v2(); }

    void validate() const {
        if (!(gamma > 0.0)) {
            throw std::invalid_argument("QDotParams: Gamma must be positive");
        }
    }
};

// Complex joint spectral amplitude on a FrequencyGrid, row-major
// values[i1*n + i2], units (rad/ns)^-1 so sum |v|^2 domega^2 ~ 1.
struct SpectralAmplitude {
    FrequencyGrid grid;
    std::vector<std::complex<double>> values;
    bool narrow_span = false;  // grid did not cover +-5*Gamma around the line centers

    SpectralAmplitude() = default;
    explicit SpectralAmplitude(const FrequencyGrid& g)
        : grid(g), values(static_cast<std::size_t>(g.n) * g.n) {}

    std::complex<double>& at(int i1, int i2) {
        return values[static_cast<std::size_t>(i1) * grid.n + i2];
    }
    const std::complex<double>& at(int i1, int i2) const {
        return values[static_cast<std::size_t>(i1) * grid.n + i2];
    }

    // sum |v|^2 domega^2
    double squared_norm() const;
};

// Pointwise Lorentzian product amplitude for one decay path:
// (sqrt(2)Gamma/2pi) / [(w1+w2-w0+iG)(w2-w_path2+iG/2)].
SpectralAmplitude eval_phi(Path path, const FrequencyGrid& grid, const QDotParams& params);

// Scale to unit squared norm. Direction unchanged; zero input throws.
SpectralAmplitude normalize(const SpectralAmplitude& a);

// sum conj(a) * b * domega^2. Grids must match exactly.
std::complex<double> overlap(const SpectralAmplitude& a, const SpectralAmplitude& b);

// Marginal probability density over the chosen axis (1 or 2);
// sum(marginal) * domega equals the squared norm.
std::vector<double> marginal(const SpectralAmplitude& a, int axis);

}  // namespace fsscomp
