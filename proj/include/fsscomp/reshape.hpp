#pragma once

#include <complex>
#include <vector>

#include "fsscomp/compensation.hpp"
#include "fsscomp/spectra.hpp"

namespace fsscomp {

// Strictly increasing per-axis remaps w_k -> w_k', tabulated on the grid
// axes; identity outside the source amplitude's support.
struct WarpFunctions {
    std::vector<double> warp1;  // target frequency for each axis-1 node
    std::vector<double> warp2;
    bool regularized = false;   // marginal density needed a floor to stay monotone
};

// Separable per-photon phases (rad) to multiply onto the corrected
// amplitude as e^{i(phase1(w1) + phase2(w2))}.
struct PhaseProfiles {
    std::vector<double> phase1;
    std::vector<double> phase2;
    double separability_score = 0.0;  // weighted rank-1 fit quality in [0, 1]
    bool separable = false;           // score >= 0.99
};

struct ScanPoint {
    double delta1 = 0.0;  // rad/ns
    double delta2 = 0.0;
    double objective = 0.0;
};

struct ShiftSearchResult {
    ShiftSpec shift;         // ueV, to apply to b
    double objective = 0.0;  // sum |a| |shifted b| domega^2 at the optimum
    std::vector<ScanPoint> scan;  // coarse-lattice record
};

// Rigid shift maximizing sum |a| |shifted b| domega^2: coarse scan at
// 4*domega steps (FFT cross-correlation), then per-axis refinement of the
// band-limited objective down to domega/16. Ties resolve to the smallest
// lexicographic shift.
ShiftSearchResult best_rigid_shift(const SpectralAmplitude& a, const SpectralAmplitude& b);

// Per-axis cumulative-distribution matching of the marginal densities:
// warp_k = (CDF of a's marginal)^-1 o (CDF of b's marginal).
WarpFunctions match_magnitudes(const SpectralAmplitude& a, const SpectralAmplitude& b);

// Apply warps to b with the density-preserving sqrt-Jacobian factor.
SpectralAmplitude apply_warp(const SpectralAmplitude& b, const WarpFunctions& warps);

// Separable phase correction maximizing Re overlap(a, corrected b);
// reports the rank-1 separability score of the phase difference.
PhaseProfiles flatten_phase(const SpectralAmplitude& a, const SpectralAmplitude& b);

SpectralAmplitude apply_phase_profiles(const SpectralAmplitude& b, const PhaseProfiles& profiles);

struct ThreeStepReport {
    std::complex<double> overlap_initial;
    std::complex<double> overlap_after_shift;
    std::complex<double> overlap_after_warp;
    std::complex<double> overlap_after_flatten;
    double norm_after_shift = 0.0;
    double norm_after_warp = 0.0;
    double norm_after_flatten = 0.0;
    ShiftSpec shift;
    WarpFunctions warps;
    PhaseProfiles phases;
};

struct ThreeStepResult {
    SpectralAmplitude corrected;
    ThreeStepReport report;
};

// shift -> warp -> phase-flatten; the report carries the overlap after each
// step (non-decreasing in magnitude for well-posed inputs).
ThreeStepResult three_step(const SpectralAmplitude& a, const SpectralAmplitude& b);

}  // namespace fsscomp
