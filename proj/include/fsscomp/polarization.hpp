#pragma once

#include <Eigen/Dense>

#include "fsscomp/spectra.hpp"

namespace fsscomp {

// Two-photon state (|HH> phi_h + |VV> phi_v)/sqrt(2). The 1/sqrt(2) is
// implicit; each amplitude is kept at unit norm on a shared grid.
struct TwoPhotonState {
    SpectralAmplitude phi_h;
    SpectralAmplitude phi_v;

    static TwoPhotonState from_qdot(const FrequencyGrid& grid, const QDotParams& params);
    void validate() const;  // shared grid, unit norms
};

// 4x4 polarization density matrix in basis {HH, HV, VH, VV}.
struct PolDensityMatrix {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();

    double hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
    double trace_error() const { return std::abs(rho.trace() - std::complex<double>(1.0, 0.0)); }
    double min_eigenvalue() const;
    void validate() const;
};

// Partial trace over frequencies: rho_HHHH = rho_VVVV = 1/2,
// rho_HHVV = overlap(phi_h, phi_v)/2, HV/VH rows and columns zero.
PolDensityMatrix reduce_polarization(const TwoPhotonState& state);

// <Phi+|rho|Phi+> with Phi+ = (|HH> + |VV>)/sqrt(2).
double fidelity_phi_plus(const PolDensityMatrix& rho);

// Full Wootters procedure (spin-flip eigenvalue formula). Throws on inputs
// that are not positive semidefinite beyond tolerance.
double concurrence(const PolDensityMatrix& rho);

}  // namespace fsscomp
