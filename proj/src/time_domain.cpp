#include "fsscomp/time_domain.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "fft_internal.hpp"

namespace fsscomp {

namespace detail {

namespace {
std::mutex g_fftw_mutex;  // FFTW planning is not thread-safe
}

void fft2d_inplace(std::vector<std::complex<double>>& buf, int n, int sign) {
    auto* data = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        plan = fftw_plan_dft_2d(n, n, data, data, sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) {
        throw std::runtime_error("fft2d: planning failed");
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(plan);
    }
}

void fft1d_inplace(std::complex<double>* data, int m, int sign) {
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        plan = fftw_plan_dft_1d(m, d, d, sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) {
        throw std::runtime_error("fft1d: planning failed");
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_fftw_mutex);
        fftw_destroy_plan(plan);
    }
}

}  // namespace detail

namespace {

using detail::fft2d_inplace;

void scale_rows_cols(std::vector<std::complex<double>>& buf, int n,
                     const std::vector<std::complex<double>>& f1,
                     const std::vector<std::complex<double>>& f2) {
    for (int i = 0; i < n; ++i) {
        std::complex<double>* row = &buf[static_cast<std::size_t>(i) * n];
        const std::complex<double> a = f1[i];
        for (int j = 0; j < n; ++j) {
            row[j] *= a * f2[j];
        }
    }
}

}  // namespace

double TemporalAmplitude::squared_norm() const {
    long double acc = 0.0L;
    for (const auto& v : values) {
        acc += static_cast<long double>(std::norm(v));
    }
    const double dt = grid.dt();
    return static_cast<double>(acc) * dt * dt;
}

PhaseRamp PhaseRamp::canonical(const QDotParams& params, double t_on, double t_off) {
    if (!(t_on < t_off)) {
        throw std::invalid_argument("PhaseRamp: t_on must precede t_off");
    }
    const double rate = params.splitting_rad();
    return {rate, -rate, t_on, t_off};
}

PhaseRamp PhaseRamp::canonical_full(const QDotParams& params, const TimeGrid& grid) {
    return canonical(params, grid.t_min - grid.dt(), grid.t_max() + grid.dt());
}

// f(t_a, t_b) = (dw^2 / 2pi) sum_{j,k} F(w_j, w_k) e^{-i(w_j t_a + w_k t_b)}
// with w_j = c + (j - n/2) dw and t_a = t_min + a dt. The exponential splits
// into e^{-i c t_a} * e^{-i (j - n/2) dw t_min} * e^{-2 pi i j a / n} * (-1)^a,
// so one 2-D FFT plus per-axis phase arrays evaluates it exactly.
TemporalAmplitude to_time(const SpectralAmplitude& a) {
    const int n = a.grid.n;
    const double dw = a.grid.domega();
    TimeGrid tg = TimeGrid::dual_of(a.grid);

    std::vector<std::complex<double>> pre(n);
    for (int j = 0; j < n; ++j) {
        const double ph = -(j - n / 2) * dw * tg.t_min;
        pre[j] = std::polar(1.0, ph);
    }

    TemporalAmplitude out(tg);
    out.values = a.values;
    scale_rows_cols(out.values, n, pre, pre);
    fft2d_inplace(out.values, n, FFTW_FORWARD);

    const double scale = dw * dw / (2.0 * std::numbers::pi);
    std::vector<std::complex<double>> post1(n), post2(n);
    for (int idx = 0; idx < n; ++idx) {
        const double t = tg.time(idx);
        const double parity = (idx % 2 == 0) ? 1.0 : -1.0;
        post1[idx] = parity * scale * std::polar(1.0, -tg.carrier1() * t);
        post2[idx] = parity * std::polar(1.0, -tg.carrier2() * t);
    }
    scale_rows_cols(out.values, n, post1, post2);
    return out;
}

// F(w_j, w_k) = (dt^2 / 2pi) sum_{a,b} f(t_a, t_b) e^{+i(w_j t_a + w_k t_b)}
SpectralAmplitude to_frequency(const TemporalAmplitude& a) {
    const int n = a.grid.n();
    const double dt = a.grid.dt();
    const double dw = a.grid.partner.domega();

    std::vector<std::complex<double>> pre1(n), pre2(n);
    for (int idx = 0; idx < n; ++idx) {
        const double t = a.grid.time(idx);
        const double parity = (idx % 2 == 0) ? 1.0 : -1.0;
        pre1[idx] = parity * std::polar(1.0, a.grid.carrier1() * t);
        pre2[idx] = parity * std::polar(1.0, a.grid.carrier2() * t);
    }

    SpectralAmplitude out(a.grid.partner);
    out.values = a.values;
    scale_rows_cols(out.values, n, pre1, pre2);
    fft2d_inplace(out.values, n, FFTW_BACKWARD);

    const double scale = dt * dt / (2.0 * std::numbers::pi);
    std::vector<std::complex<double>> post1(n), post2(n);
    for (int j = 0; j < n; ++j) {
        const std::complex<double> ph = std::polar(1.0, (j - n / 2) * dw * a.grid.t_min);
        post1[j] = scale * ph;
        post2[j] = ph;
    }
    scale_rows_cols(out.values, n, post1, post2);
    return out;
}

TemporalTwoPhotonState to_time(const TwoPhotonState& state) {
    state.validate();
    return {to_time(state.phi_h), to_time(state.phi_v)};
}

TwoPhotonState to_frequency(const TemporalTwoPhotonState& state) {
    return {to_frequency(state.psi_h), to_frequency(state.psi_v)};
}

TemporalAmplitude analytic_temporal(Path path, const TimeGrid& grid, const QDotParams& params) {
    params.validate();
    const int n = grid.n();
    const double gamma = params.gamma;
    const double omega_p2 = (path == Path::H) ? params.omega_h2 : params.omega_v2();
    const double omega_p1 = params.omega0 - omega_p2;

    TemporalAmplitude out(grid);
    out.short_window = (grid.t_min > 0.0) || (grid.t_max() < 5.0 / gamma);

    const double amp = -std::numbers::sqrt2 * gamma;  // sign per the pinned convention
    const double jump_eps = 1e-9 * grid.dt();

    std::vector<double> t(n);
    for (int idx = 0; idx < n; ++idx) {
        t[idx] = grid.time(idx);
    }

    for (int a1 = 0; a1 < n; ++a1) {
        const double t1 = t[a1];
        std::complex<double>* row = &out.at(a1, 0);
        if (t1 < 0.0) {
            continue;  // row stays zero
        }
        const double w1 = (std::abs(t1) <= jump_eps) ? 0.5 : 1.0;
        for (int a2 = a1; a2 < n; ++a2) {
            const double t2 = t[a2];
            const double w = (a2 == a1) ? 0.5 * w1 : w1;  // tau = 0 jump row
            const double env = amp * std::exp(-0.5 * gamma * (t1 + t2));
            const double phase = -(omega_p1 * t1 + omega_p2 * t2);
            row[a2] = w * env * std::polar(1.0, phase);
        }
    }
    return out;
}

TemporalTwoPhotonState apply_ramp(const TemporalTwoPhotonState& state, const PhaseRamp& ramp) {
    if (!(ramp.t_on < ramp.t_off)) {
        throw std::invalid_argument("apply_ramp: t_on must precede t_off");
    }
    const TimeGrid& grid = state.psi_v.grid;
    if (!(state.psi_h.grid == grid)) {
        throw std::invalid_argument("apply_ramp: H and V live on different grids");
    }
    const int n = grid.n();

    std::vector<std::complex<double>> g1(n), g2(n);
    for (int idx = 0; idx < n; ++idx) {
        const double t = grid.time(idx);
        const bool inside = (t >= ramp.t_on && t <= ramp.t_off);
        g1[idx] = inside ? std::polar(1.0, ramp.rate1 * t) : 1.0;
        g2[idx] = inside ? std::polar(1.0, ramp.rate2 * t) : 1.0;
    }

    TemporalTwoPhotonState out = state;
    scale_rows_cols(out.psi_v.values, n, g1, g2);
    return out;
}

std::complex<double> truncated_coherence(double splitting_ueV, double gamma, double window) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("truncated_coherence: Gamma must be positive");
    }
    if (window < 0.0) {
        throw std::invalid_argument("truncated_coherence: window must be non-negative");
    }
    const double s = ueV_to_rad_per_ns(splitting_ueV);
    if (gamma * window > 700.0) {
        return {1.0, 0.0};
    }
    const std::complex<double> pole(gamma, -s);  // Gamma - i S/hbar
    const std::complex<double> tail =
        gamma * std::exp(std::complex<double>(-gamma * window, s * window)) / pole;
    return (1.0 - std::exp(-gamma * window)) + tail;
}

}  // namespace fsscomp
