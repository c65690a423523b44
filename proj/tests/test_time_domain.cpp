#include <doctest.h>

#include <cmath>
#include <complex>

#include "fsscomp/compensation.hpp"
#include "fsscomp/time_domain.hpp"
#include "support.hpp"

using namespace fsscomp;

namespace {

double state_fidelity(const TwoPhotonState& a, const TwoPhotonState& b) {
    const std::complex<double> oh = overlap(a.phi_h, b.phi_h);
    const std::complex<double> ov = overlap(a.phi_v, b.phi_v);
    return std::norm(0.5 * (oh + ov));
}

// normalized inner product of temporal amplitudes
std::complex<double> temporal_overlap(const TemporalAmplitude& a, const TemporalAmplitude& b) {
    REQUIRE(a.grid == b.grid);
    long double re = 0.0L, im = 0.0L;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const auto t = std::conj(a.values[i]) * b.values[i];
        re += t.real();
        im += t.imag();
    }
    const double dt2 = a.grid.dt() * a.grid.dt();
    const std::complex<double> raw(static_cast<double>(re) * dt2,
                                   static_cast<double>(im) * dt2);
    return raw / std::sqrt(a.squared_norm() * b.squared_norm());
}

}  // namespace

TEST_CASE("to_time / to_frequency: exact round trip and Parseval") {
    const FrequencyGrid grid{3.0, -2.0, 40.0, 64};
    for (unsigned seed : {1u, 9u, 23u}) {
        const SpectralAmplitude a = testutil::random_amplitude(grid, seed);
        const TemporalAmplitude t = to_time(a);
        CHECK(std::abs(t.squared_norm() - a.squared_norm()) < 1e-12);

        const SpectralAmplitude back = to_frequency(t);
        REQUIRE(back.grid == a.grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            worst = std::max(worst, std::abs(back.values[i] - a.values[i]));
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("to_time: Gaussian uncertainty product sigma_w * sigma_t = 1/2") {
    const FrequencyGrid grid{0.0, 0.0, 100.0, 512};
    const SpectralAmplitude g = testutil::gaussian_product(grid, 0.0, 0.0, 2.0, 3.0);
    const TemporalAmplitude t = to_time(g);

    auto intensity_std = [](const std::vector<double>& xs, const std::vector<double>& w) {
        long double m0 = 0.0L, m1 = 0.0L, m2 = 0.0L;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            m0 += w[i];
            m1 += w[i] * xs[i];
            m2 += w[i] * xs[i] * xs[i];
        }
        const double mean = static_cast<double>(m1 / m0);
        return std::sqrt(static_cast<double>(m2 / m0) - mean * mean);
    };

    for (int axis = 1; axis <= 2; ++axis) {
        std::vector<double> wx(grid.n), fx(grid.n, 0.0), tx(grid.n), ft(grid.n, 0.0);
        for (int i = 0; i < grid.n; ++i) {
            wx[i] = (axis == 1) ? grid.omega1(i) : grid.omega2(i);
            tx[i] = t.grid.time(i);
        }
        for (int i = 0; i < grid.n; ++i) {
            for (int j = 0; j < grid.n; ++j) {
                const double pw = std::norm(g.at(i, j));
                const double pt = std::norm(t.at(i, j));
                fx[axis == 1 ? i : j] += pw;
                ft[axis == 1 ? i : j] += pt;
            }
        }
        const double sw = intensity_std(wx, fx);
        const double st = intensity_std(tx, ft);
        CHECK(sw * st == doctest::Approx(0.5).epsilon(1e-6));
    }
}

TEST_CASE("analytic_temporal: causal support and equal path moduli") {
    const QDotParams p = testutil::test_params(1.0, 1.0);
    const FrequencyGrid fgrid = testutil::centered_grid(p, 256.0, 512);
    const TimeGrid grid = TimeGrid::dual_of(fgrid);
    const TemporalAmplitude h = analytic_temporal(Path::H, grid, p);
    const TemporalAmplitude v = analytic_temporal(Path::V, grid, p);
    CHECK_FALSE(h.short_window);

    double causal_violation = 0.0;
    double modulus_diff = 0.0;
    for (int a1 = 0; a1 < grid.n(); a1 += 3) {
        for (int a2 = 0; a2 < grid.n(); a2 += 3) {
            const double t1 = grid.time(a1);
            const double t2 = grid.time(a2);
            if (t1 < 0.0 || t2 < t1) {
                causal_violation = std::max(causal_violation, std::abs(h.at(a1, a2)));
            }
            modulus_diff = std::max(
                modulus_diff, std::abs(std::abs(h.at(a1, a2)) - std::abs(v.at(a1, a2))));
        }
    }
    CHECK(causal_violation == 0.0);
    CHECK(modulus_diff < 1e-13);
}

TEST_CASE("analytic_temporal: norm carries only the jump-quadrature defect") {
    const QDotParams p = testutil::test_params(0.8, 1.0);
    const TimeGrid grid = TimeGrid::dual_of(testutil::centered_grid(p, 256.0, 1024));
    const TemporalAmplitude h = analytic_temporal(Path::H, grid, p);
    CHECK(std::abs(h.squared_norm() - 1.0) < 2.0 * p.gamma * grid.dt());
}

TEST_CASE("analytic_temporal: pair-delay marginal matches Gamma e^{-Gamma tau}") {
    const double gamma = 1.0;
    const QDotParams p = testutil::test_params(1.3, gamma);
    const TimeGrid grid = TimeGrid::dual_of(testutil::centered_grid(p, 256.0, 1024));
    const TemporalAmplitude h = analytic_temporal(Path::H, grid, p);
    const int n = grid.n();
    const double dt = grid.dt();

    // integrate |psi|^2 over t1 at fixed tau = k dt; skip the tau = 0 jump row
    for (int k : {2, 5, 20, 80, 200}) {
        long double acc = 0.0L;
        for (int a1 = 0; a1 + k < n; ++a1) {
            acc += std::norm(h.at(a1, a1 + k));
        }
        const double tau = k * dt;
        const double density = static_cast<double>(acc) * dt;
        const double expected = gamma * std::exp(-gamma * tau);
        CHECK(std::abs(density / expected - 1.0) < 2.0 * gamma * dt + 1e-3);
    }
}

TEST_CASE("analytic_temporal: short window sets the warning flag") {
    const QDotParams p = testutil::test_params(1.0, 0.05);  // 5/Gamma = 100 ns
    // span 12.8 rad/ns -> the dual grid only reaches ~62 ns
    const TimeGrid grid = TimeGrid::dual_of(testutil::centered_grid(p, 256.0, 256));
    CHECK(analytic_temporal(Path::H, grid, p).short_window);
}

TEST_CASE("to_time(eval_phi) matches analytic_temporal in state fidelity") {
    const QDotParams p = testutil::test_params(1.0, 1.0);
    const FrequencyGrid grid = testutil::centered_grid(p, 800.0, 2048);
    const TemporalAmplitude transformed = to_time(normalize(eval_phi(Path::H, grid, p)));
    const TemporalAmplitude analytic = analytic_temporal(Path::H, TimeGrid::dual_of(grid), p);
    const double fid = std::abs(temporal_overlap(transformed, analytic));
    CHECK(fid >= 1.0 - 1e-3);
}

TEST_CASE("PhaseRamp: canonical rates are (+S/hbar, -S/hbar)") {
    const QDotParams p = testutil::test_params(1.3, 1.0);
    const PhaseRamp ramp = PhaseRamp::canonical(p, -1.0, 7.0);
    CHECK(ramp.rate1 == doctest::Approx(ueV_to_rad_per_ns(1.3)).epsilon(1e-15));
    CHECK(ramp.rate2 == doctest::Approx(-ueV_to_rad_per_ns(1.3)).epsilon(1e-15));
    CHECK_THROWS_AS(PhaseRamp::canonical(p, 2.0, 2.0), std::invalid_argument);
}

TEST_CASE("apply_ramp: zero rates are the identity") {
    const QDotParams p = testutil::test_params(1.0, 1.0);
    const FrequencyGrid grid = testutil::centered_grid(p, 128.0, 256);
    const TemporalTwoPhotonState state = to_time(TwoPhotonState::from_qdot(grid, p));
    const PhaseRamp ramp{0.0, 0.0, state.psi_v.grid.t_min, state.psi_v.grid.t_max()};
    const TemporalTwoPhotonState out = apply_ramp(state, ramp);
    for (std::size_t i = 0; i < out.psi_v.values.size(); ++i) {
        REQUIRE(out.psi_v.values[i] == state.psi_v.values[i]);
    }
}

TEST_CASE("apply_ramp: unitary regardless of window") {
    const QDotParams p = testutil::test_params(2.0, 1.0);
    const FrequencyGrid grid = testutil::centered_grid(p, 128.0, 256);
    const TemporalTwoPhotonState state = to_time(TwoPhotonState::from_qdot(grid, p));
    const PhaseRamp ramp = PhaseRamp::canonical(p, 0.0, 3.0);
    const TemporalTwoPhotonState out = apply_ramp(state, ramp);
    CHECK(std::abs(out.psi_v.squared_norm() - state.psi_v.squared_norm()) < 1e-14);
}

TEST_CASE("apply_ramp: canonical full-window ramp equals the canonical shift") {
    // exact-grid splitting: S/hbar = 16 steps of 0.125 rad/ns
    const double dw = 0.125;
    const QDotParams p = testutil::test_params(rad_per_ns_to_ueV(16 * dw), 1.0);
    const FrequencyGrid grid{p.omega_h1(), p.omega_h2, dw * 1024, 1024};
    const TwoPhotonState state = TwoPhotonState::from_qdot(grid, p);

    const ShiftResult by_shift = apply_shift(state, optimal_shift_for_qdot(p));

    const TemporalTwoPhotonState temporal = to_time(state);
    const PhaseRamp ramp = PhaseRamp::canonical_full(p, temporal.psi_v.grid);
    const TwoPhotonState by_ramp = to_frequency(apply_ramp(temporal, ramp));

    CHECK(state_fidelity(by_shift.state, by_ramp) >= 1.0 - 1e-6);
    // compensation succeeded up to the sampled-Lorentzian edge-strip floor
    // (~2 * (S/hbar Gamma) / (pi (span/2)^2) ~ 3e-4 at this span)
    const std::complex<double> o = overlap(by_ramp.phi_h, by_ramp.phi_v);
    CHECK(std::abs(o) > 1.0 - 1e-3);
}

TEST_CASE("apply_ramp: windowed ramp matches the continuum gating oracle") {
    const double gamma = 1.0;
    const QDotParams p = testutil::test_params(1.0, gamma);
    const FrequencyGrid grid = testutil::centered_grid(p, 256.0, 1024);
    const TimeGrid tgrid = TimeGrid::dual_of(grid);

    const TemporalAmplitude psi_h = analytic_temporal(Path::H, tgrid, p);
    const TemporalAmplitude psi_v = analytic_temporal(Path::V, tgrid, p);

    for (double window : {1.0, 2.0, 4.0}) {
        const PhaseRamp ramp = PhaseRamp::canonical(p, 0.0, window);
        const TemporalTwoPhotonState ramped = apply_ramp({psi_h, psi_v}, ramp);
        const std::complex<double> grid_coherence = temporal_overlap(psi_h, ramped.psi_v);
        const std::complex<double> oracle =
            oracle::windowed_ramp_coherence_numeric(p.splitting_ueV, gamma, window);
        // grid coherence carries the O(Gamma dt) jump-row quadrature defect
        CHECK(std::abs(grid_coherence - oracle) < 3.0 * gamma * tgrid.dt() + 1e-3);
    }
}

TEST_CASE("truncated_coherence: closed form against quadrature, limits, monotone fidelity") {
    for (double window : {0.0, 0.5, 1.0, 2.0, 5.0, 9.0}) {
        const std::complex<double> module_value = truncated_coherence(1.0, 1.0, window);
        const std::complex<double> numeric = oracle::truncated_coherence_numeric(1.0, 1.0, window);
        CHECK(std::abs(module_value - numeric) < 1e-9);
    }
    CHECK(std::abs(truncated_coherence(1.0, 1.0, 0.0) - oracle::overlap_closed_form(1.0, 1.0)) <
          1e-14);
    CHECK(std::abs(truncated_coherence(1.0, 1.0, 1e9) - std::complex<double>(1.0, 0.0)) < 1e-12);

    double prev = -1.0;
    for (int k = 0; k <= 20; ++k) {
        const double fid = 0.5 * (1.0 + truncated_coherence(1.0, 1.0, 0.4 * k).real());
        CHECK(fid >= prev - 1e-12);
        prev = fid;
    }
}

TEST_CASE("apply_ramp: mismatched grids are a shape error") {
    const QDotParams p = testutil::test_params(1.0, 1.0);
    const TemporalTwoPhotonState good =
        to_time(TwoPhotonState::from_qdot(testutil::centered_grid(p, 128.0, 256), p));
    TemporalTwoPhotonState bad = good;
    bad.psi_h = to_time(normalize(
        eval_phi(Path::H, testutil::centered_grid(p, 64.0, 256), p)));
    CHECK_THROWS_AS(apply_ramp(bad, PhaseRamp::canonical(p, 0.0, 1.0)), std::invalid_argument);
}
