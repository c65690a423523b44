#include <doctest.h>

#include <cmath>
#include <random>

#include "fsscomp/polarization.hpp"
#include "support.hpp"

using namespace fsscomp;

namespace {

// cascade-form density matrix built directly from a coherence value
PolDensityMatrix cascade_rho(std::complex<double> coherence) {
    PolDensityMatrix rho;
    rho.rho(0, 0) = 0.5;
    rho.rho(3, 3) = 0.5;
    rho.rho(0, 3) = 0.5 * coherence;
    rho.rho(3, 0) = 0.5 * std::conj(coherence);
    return rho;
}

}  // namespace

TEST_CASE("reduce_polarization: identical spectra give the Phi+ projector") {
    const QDotParams p = testutil::test_params(0.0, 1.0);
    const FrequencyGrid grid = testutil::centered_grid(p, 150.0, 256);
    const TwoPhotonState state = TwoPhotonState::from_qdot(grid, p);
    const PolDensityMatrix rho = reduce_polarization(state);

    Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
    expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
    CHECK((rho.rho - expected).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("reduce_polarization: orthogonal spectra give the classical mixture") {
    const FrequencyGrid grid{0.0, 0.0, 120.0, 256};
    TwoPhotonState state;
    state.phi_h = testutil::gaussian_product(grid, -25.0, -25.0, 2.0, 2.0);
    state.phi_v = testutil::gaussian_product(grid, 25.0, 25.0, 2.0, 2.0);
    const PolDensityMatrix rho = reduce_polarization(state);
    CHECK(std::abs(rho.rho(0, 0) - 0.5) < 1e-12);
    CHECK(std::abs(rho.rho(3, 3) - 0.5) < 1e-12);
    CHECK(std::abs(rho.rho(0, 3)) < 1e-12);
    CHECK(concurrence(rho) < 1e-9);
}

TEST_CASE("reduce_polarization: coherence equals overlap/2 (S=1 ueV, Gamma=1/ns)") {
    const QDotParams p = testutil::test_params(1.0, 1.0);
    const FrequencyGrid grid = testutil::centered_grid(p, 800.0, 2048);
    const TwoPhotonState state = TwoPhotonState::from_qdot(grid, p);
    const PolDensityMatrix rho = reduce_polarization(state);

    const std::complex<double> oracle = 0.5 * oracle::overlap_closed_form(1.0, 1.0);
    // frozen digits of the oracle itself
    CHECK(oracle.real() == doctest::Approx(0.3023 / 2).epsilon(2e-4));
    CHECK(oracle.imag() == doctest::Approx(0.4594 / 2).epsilon(2e-4));
    CHECK(std::abs(rho.rho(0, 3) - oracle) < 1.5e-3);

    rho.validate();  // Hermitian, unit trace, PSD
    CHECK(rho.hermiticity_error() < 1e-14);
    CHECK(rho.trace_error() < 1e-14);
    CHECK(rho.min_eigenvalue() > -1e-12);
}

TEST_CASE("reduce_polarization: mismatched grids are a shape error") {
    TwoPhotonState state;
    state.phi_h = testutil::gaussian_product(FrequencyGrid{0.0, 0.0, 40.0, 64}, 0, 0, 2, 2);
    state.phi_v = testutil::gaussian_product(FrequencyGrid{0.0, 0.0, 50.0, 64}, 0, 0, 2, 2);
    CHECK_THROWS_AS(reduce_polarization(state), std::invalid_argument);
}

TEST_CASE("TwoPhotonState: non-unit amplitudes are rejected") {
    const FrequencyGrid grid{0.0, 0.0, 40.0, 64};
    TwoPhotonState state;
    state.phi_h = testutil::gaussian_product(grid, 0, 0, 2, 2);
    state.phi_v = state.phi_h;
    for (auto& v : state.phi_v.values) {
        v *= 1.5;
    }
    CHECK_THROWS_AS(state.validate(), std::invalid_argument);
}

TEST_CASE("fidelity_phi_plus: limits and the frozen midpoint value") {
    CHECK(fidelity_phi_plus(cascade_rho(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    // vanishing coherence limit
    CHECK(fidelity_phi_plus(cascade_rho(oracle::overlap_closed_form(200.0, 1.0))) ==
          doctest::Approx(0.5).epsilon(1e-3));
    // S = 1 ueV, Gamma = 1/ns
    const double fid = fidelity_phi_plus(cascade_rho(oracle::overlap_closed_form(1.0, 1.0)));
    CHECK(fid == doctest::Approx(0.6511).epsilon(2e-4));
    CHECK(fid == doctest::Approx(oracle::uncompensated_fidelity(1.0, 1.0)).epsilon(1e-12));
}

TEST_CASE("concurrence: maximally entangled and separable references") {
    CHECK(concurrence(cascade_rho(1.0)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(concurrence(cascade_rho(0.0)) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(concurrence(cascade_rho(oracle::overlap_closed_form(1.0, 1.0))) ==
          doctest::Approx(0.5499).epsilon(2e-4));
}

TEST_CASE("concurrence: full Wootters equals |overlap| for cascade states") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> s_dist(0.0, 3.0);
    std::uniform_real_distribution<double> g_dist(0.3, 2.5);
    for (int trial = 0; trial < 20; ++trial) {
        const QDotParams p = testutil::test_params(s_dist(rng), g_dist(rng));
        const FrequencyGrid grid = testutil::centered_grid(p, 200.0, 256);
        const TwoPhotonState state = TwoPhotonState::from_qdot(grid, p);
        const double c = concurrence(reduce_polarization(state));
        const double mag = std::abs(overlap(state.phi_h, state.phi_v));
        CHECK(std::abs(c - mag) < 1e-9);
    }
}

TEST_CASE("fidelity is bounded by (1 + concurrence)/2, equality for real coherence") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mag(0.0, 1.0);
    std::uniform_real_distribution<double> ang(-3.14, 3.14);
    for (int trial = 0; trial < 50; ++trial) {
        const PolDensityMatrix rho = cascade_rho(std::polar(mag(rng), ang(rng)));
        CHECK(fidelity_phi_plus(rho) <= 0.5 * (1.0 + concurrence(rho)) + 1e-12);
    }
    const PolDensityMatrix real_rho = cascade_rho(0.37);
    CHECK(fidelity_phi_plus(real_rho) ==
          doctest::Approx(0.5 * (1.0 + concurrence(real_rho))).epsilon(1e-10));
}

TEST_CASE("concurrence: non-PSD input beyond tolerance is a numeric error") {
    PolDensityMatrix bad;
    bad.rho = Eigen::Matrix4cd::Zero();
    bad.rho(0, 0) = 0.6;
    bad.rho(1, 1) = -0.1;
    bad.rho(2, 2) = 0.0;
    bad.rho(3, 3) = 0.5;
    CHECK_THROWS_AS(concurrence(bad), std::domain_error);
}
