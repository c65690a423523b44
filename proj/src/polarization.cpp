#include "fsscomp/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsscomp {

namespace {
constexpr double kNormTol = 1e-6;
constexpr double kPsDTol = -1e-10;
}  // namespace

TwoPhotonState TwoPhotonState::from_qdot(const FrequencyGrid& grid, const QDotParams& params) {
    TwoPhotonState s;
    s.phi_h = normalize(eval_phi(Path::H, grid, params));
    s.phi_v = normalize(eval_phi(Path::V, grid, params));
    return s;
}

void TwoPhotonState::validate() const {
    if (!(phi_h.grid == phi_v.grid)) {
        throw std::invalid_argument("TwoPhotonState: amplitudes live on different grids");
    }
    if (std::abs(phi_h.squared_norm() - 1.0) > kNormTol ||
        std::abs(phi_v.squared_norm() - 1.0) > kNormTol) {
        throw std::invalid_argument("TwoPhotonState: amplitudes are not unit-norm");
    }
}

double PolDensityMatrix::min_eigenvalue() const {
    // Hermitize first; the asymmetry is separately bounded by hermiticity_error
    Eigen::Matrix4cd h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h);
    return solver.eigenvalues().minCoeff();
}

void PolDensityMatrix::validate() const {
    if (hermiticity_error() > 1e-12) {
        throw std::domain_error("PolDensityMatrix: not Hermitian within 1e-12");
    }
    if (trace_error() > 1e-12) {
        throw std::domain_error("PolDensityMatrix: trace differs from 1 beyond 1e-12");
    }
    if (min_eigenvalue() < kPsDTol) {
        throw std::domain_error("PolDensityMatrix: negative eigenvalue beyond tolerance");
    }
}

PolDensityMatrix reduce_polarization(const TwoPhotonState& state) {
    state.validate();
    const std::complex<double> o = overlap(state.phi_h, state.phi_v);
    PolDensityMatrix out;
    out.rho(0, 0) = 0.5;
    out.rho(3, 3) = 0.5;
    out.rho(0, 3) = 0.5 * o;
    out.rho(3, 0) = 0.5 * std::conj(o);
    return out;
}

double fidelity_phi_plus(const PolDensityMatrix& rho) {
    const std::complex<double> f =
        0.5 * (rho.rho(0, 0) + rho.rho(0, 3) + rho.rho(3, 0) + rho.rho(3, 3));
    return f.real();
}

double concurrence(const PolDensityMatrix& rho) {
    if (rho.min_eigenvalue() < kPsDTol) {
        throw std::domain_error("concurrence: input not PSD within tolerance");
    }
    // sigma_y (x) sigma_y
    Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;

    const Eigen::Matrix4cd rho_tilde = flip * rho.rho.conjugate() * flip;
    const Eigen::Matrix4cd m = rho.rho * rho_tilde;

    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(m);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) {
        lam[i] = std::sqrt(std::max(0.0, solver.eigenvalues()(i).real()));
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

}  // namespace fsscomp
