#pragma once

#include "fsscomp/polarization.hpp"
#include "fsscomp/spectra.hpp"

namespace fsscomp {

// Polarization-selective frequency shift, in ueV; applied to the V-polarized
// pair only. Canonical compensation for splitting S is (-S, +S).
struct ShiftSpec {
    double delta1_ueV = 0.0;
    double delta2_ueV = 0.0;
};

struct ShiftResult {
    TwoPhotonState state;
    // squared-norm mass transported across the span boundary by the shift
    double boundary_mass = 0.0;
    bool boundary_warning = false;  // boundary_mass > 1e-6
};

// Shift a bare amplitude: result(w1, w2) = a(w1 - d1, w2 - d2), d in rad/ns.
// Integer grid steps (snapped when the fractional part is < 1e-6 of a step)
// use an exact circular roll; otherwise the exact band-limited shift
// (time-domain linear phase). Throws std::out_of_range for |d| > span/2.
SpectralAmplitude shift_amplitude(const SpectralAmplitude& a, double d1, double d2,
                                  double* boundary_mass = nullptr);

// U(Delta1, Delta2): identity on the H amplitude, V amplitude becomes
// phi_v(w1 - Delta1/hbar, w2 - Delta2/hbar). Throws std::runtime_error when
// more than 1e-3 of the V mass crosses the span boundary.
ShiftResult apply_shift(const TwoPhotonState& state, const ShiftSpec& shift);

struct SeparabilityReport {
    double residual = 0.0;  // 1 - |overlap(phi_h, phi_v)|
    double phase = 0.0;     // arg(overlap)
};

// Zero (within tolerance) iff phi_v = c * phi_h with |c| = 1, i.e. the
// product form holds and polarization decouples from frequency.
SeparabilityReport separability_residual(const TwoPhotonState& state);

// The shift that makes the two path amplitudes coincide: (-S, +S).
ShiftSpec optimal_shift_for_qdot(const QDotParams& params);

}  // namespace fsscomp
