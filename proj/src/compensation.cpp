#include "fsscomp/compensation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fsscomp/time_domain.hpp"

namespace fsscomp {

namespace {

constexpr double kSnapTol = 1e-6;       // fractional steps below this snap to integer
constexpr double kBoundaryWarn = 1e-6;  // per apply_shift post
constexpr double kBoundaryError = 1e-3;

// squared-norm mass in the source cells an integer roll carries across the
// span boundary (strip widths m1, m2 in grid steps, signed)
double crossing_mass(const SpectralAmplitude& a, long m1, long m2) {
    const int n = a.grid.n;
    std::vector<char> cross1(n, 0), cross2(n, 0);
    for (int j = 0; j < n; ++j) {
        const long k1 = j + m1;
        const long k2 = j + m2;
        cross1[j] = (k1 < 0 || k1 >= n) ? 1 : 0;
        cross2[j] = (k2 < 0 || k2 >= n) ? 1 : 0;
    }
    long double acc = 0.0L;
    for (int i1 = 0; i1 < n; ++i1) {
        const std::complex<double>* row = &a.at(i1, 0);
        if (cross1[i1]) {
            for (int i2 = 0; i2 < n; ++i2) {
                acc += std::norm(row[i2]);
            }
        } else {
            for (int i2 = 0; i2 < n; ++i2) {
                if (cross2[i2]) {
                    acc += std::norm(row[i2]);
                }
            }
        }
    }
    const double dw = a.grid.domega();
    return static_cast<double>(acc) * dw * dw;
}

long wrap_index(long i, int n) {
    long r = i % n;
    return (r < 0) ? r + n : r;
}

}  // namespace

SpectralAmplitude shift_amplitude(const SpectralAmplitude& a, double d1, double d2,
                                  double* boundary_mass) {
    const double half_span = 0.5 * a.grid.span;
    if (std::abs(d1) > half_span || std::abs(d2) > half_span) {
        throw std::out_of_range("shift_amplitude: shift exceeds span/2");
    }
    const double dw = a.grid.domega();
    const double s1 = d1 / dw;
    const double s2 = d2 / dw;
    const double r1 = std::round(s1);
    const double r2 = std::round(s2);
    const bool integer_steps =
        std::abs(s1 - r1) < kSnapTol && std::abs(s2 - r2) < kSnapTol;

    if (integer_steps) {
        const long m1 = static_cast<long>(r1);
        const long m2 = static_cast<long>(r2);
        if (boundary_mass != nullptr) {
            *boundary_mass = crossing_mass(a, m1, m2);
        }
        SpectralAmplitude out(a.grid);
        out.narrow_span = a.narrow_span;
        const int n = a.grid.n;
        for (int i1 = 0; i1 < n; ++i1) {
            const long j1 = wrap_index(i1 - m1, n);
            const std::complex<double>* src = &a.at(static_cast<int>(j1), 0);
            std::complex<double>* dst = &out.at(i1, 0);
            for (int i2 = 0; i2 < n; ++i2) {
                dst[i2] = src[wrap_index(i2 - m2, n)];
            }
        }
        return out;
    }

    // exact band-limited shift: linear phase in the time picture
    if (boundary_mass != nullptr) {
        const long c1 = static_cast<long>((s1 >= 0 ? 1 : -1) * std::ceil(std::abs(s1)));
        const long c2 = static_cast<long>((s2 >= 0 ? 1 : -1) * std::ceil(std::abs(s2)));
        *boundary_mass = crossing_mass(a, c1, c2);
    }
    TemporalAmplitude t = to_time(a);
    const int n = a.grid.n;
    std::vector<std::complex<double>> f1(n), f2(n);
    for (int idx = 0; idx < n; ++idx) {
        const double tt = t.grid.time(idx);
        f1[idx] = std::polar(1.0, -d1 * tt);
        f2[idx] = std::polar(1.0, -d2 * tt);
    }
    for (int a1 = 0; a1 < n; ++a1) {
        std::complex<double>* row = &t.at(a1, 0);
        for (int a2 = 0; a2 < n; ++a2) {
            row[a2] *= f1[a1] * f2[a2];
        }
    }
    SpectralAmplitude out = to_frequency(t);
    out.narrow_span = a.narrow_span;
    return out;
}

ShiftResult apply_shift(const TwoPhotonState& state, const ShiftSpec& shift) {
    state.validate();
    const double d1 = ueV_to_rad_per_ns(shift.delta1_ueV);
    const double d2 = ueV_to_rad_per_ns(shift.delta2_ueV);

    double bmass = 0.0;
    SpectralAmplitude shifted_v = shift_amplitude(state.phi_v, d1, d2, &bmass);
    if (bmass > kBoundaryError) {
        throw std::runtime_error("apply_shift: more than 1e-3 of the V mass crossed the grid edge");
    }

    ShiftResult result;
    result.state.phi_h = state.phi_h;  // untouched
    result.state.phi_v = std::move(shifted_v);
    result.boundary_mass = bmass;
    result.boundary_warning = bmass > kBoundaryWarn;
    return result;
}

SeparabilityReport separability_residual(const TwoPhotonState& state) {
    state.validate();
    const std::complex<double> o = overlap(state.phi_h, state.phi_v);
    SeparabilityReport report;
    report.residual = std::max(0.0, 1.0 - std::abs(o));  // round-off can land at -1e-16
    report.phase = std::arg(o);
    return report;
}

ShiftSpec optimal_shift_for_qdot(const QDotParams& params) {
    return {-params.splitting_ueV, params.splitting_ueV};
}

}  // namespace fsscomp
