#pragma once

#include <complex>
#include <vector>

#include "fsscomp/polarization.hpp"
#include "fsscomp/spectra.hpp"

namespace fsscomp {

// Joint temporal amplitude on an FFT-dual TimeGrid, row-major
// values[a1*n + a2], units 1/ns. Convention (pinned):
//   f(t) = (1/sqrt(2 pi)) Int F(w) e^{-i w t} dw   per axis,
// so to_frequency is the forward transform with e^{+i w t}.
struct TemporalAmplitude {
    TimeGrid grid;
    std::vector<std::complex<double>> values;
    bool short_window = false;  // grid did not reach 5/Gamma past emission onset

    TemporalAmplitude() = default;
    explicit TemporalAmplitude(const TimeGrid& g)
        : grid(g), values(static_cast<std::size_t>(g.n()) * g.n()) {}

    std::complex<double>& at(int a1, int a2) {
        return values[static_cast<std::size_t>(a1) * grid.n() + a2];
    }
    const std::complex<double>& at(int a1, int a2) const {
        return values[static_cast<std::size_t>(a1) * grid.n() + a2];
    }

    double squared_norm() const;  // sum |v|^2 dt^2
};

struct TemporalTwoPhotonState {
    TemporalAmplitude psi_h;
    TemporalAmplitude psi_v;
};

// Linear compensating phase applied to the V component, each factor gated by
// its own photon's time inside [t_on, t_off]. Canonical compensation rates
// are (+S/hbar, -S/hbar).
struct PhaseRamp {
    double rate1 = 0.0;  // rad/ns on photon 1
    double rate2 = 0.0;  // rad/ns on photon 2
    double t_on = 0.0;
    double t_off = 0.0;

    static PhaseRamp canonical(const QDotParams& params, double t_on, double t_off);
    static PhaseRamp canonical_full(const QDotParams& params, const TimeGrid& grid);
};

TemporalAmplitude to_time(const SpectralAmplitude& a);
SpectralAmplitude to_frequency(const TemporalAmplitude& a);

TemporalTwoPhotonState to_time(const TwoPhotonState& state);
TwoPhotonState to_frequency(const TemporalTwoPhotonState& state);

// Closed-form cascade wave train: zero unless t2 > t1 > 0, envelope
// sqrt(2) Gamma e^{-Gamma(2 t1 + (t2-t1))/2}, path carrier
// e^{-i(w_p1 t1 + w_p2 t2)}; jump rows carry half amplitude so values match
// the band-limited transform of eval_phi. Overall sign fixed by the pinned
// convention.
TemporalAmplitude analytic_temporal(Path path, const TimeGrid& grid, const QDotParams& params);

TemporalTwoPhotonState apply_ramp(const TemporalTwoPhotonState& state, const PhaseRamp& ramp);

// Pair-delay truncated coherence
//   O_T = Int_0^T Gamma e^{-Gamma tau} dtau
//       + Int_T^inf Gamma e^{-Gamma tau} e^{i S tau/hbar} dtau,
// the residual <Phi_H|Phi_V> after a compensation window of length T.
std::complex<double> truncated_coherence(double splitting_ueV, double gamma, double window);

}  // namespace fsscomp
