#include "fsscomp/spectra.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsscomp {

double SpectralAmplitude::squared_norm() const {
    long double acc = 0.0L;
    for (const auto& v : values) {
        acc += static_cast<long double>(std::norm(v));
    }
    const double dw = grid.domega();
    return static_cast<double>(acc) * dw * dw;
}

SpectralAmplitude eval_phi(Path path, const FrequencyGrid& grid, const QDotParams& params) {
    params.validate();
    const int n = grid.n;
    const double gamma = params.gamma;
    const double omega_p2 = (path == Path::H) ? params.omega_h2 : params.omega_v2();
    const double omega_p1 = params.omega0 - omega_p2;

    SpectralAmplitude out(grid);

    // warn when either axis misses +-5*Gamma around the path's line centers
    const double lo1 = grid.omega1(0), hi1 = grid.omega1(n - 1);
    const double lo2 = grid.omega2(0), hi2 = grid.omega2(n - 1);
    out.narrow_span = (lo1 > omega_p1 - 5.0 * gamma) || (hi1 < omega_p1 + 5.0 * gamma) ||
                      (lo2 > omega_p2 - 5.0 * gamma) || (hi2 < omega_p2 + 5.0 * gamma);

    const double prefactor = std::numbers::sqrt2 * gamma / (2.0 * std::numbers::pi);

    std::vector<double> w1(n), w2(n);
    for (int j = 0; j < n; ++j) {
        w1[j] = grid.omega1(j);
        w2[j] = grid.omega2(j);
    }
    // the second factor depends on w2 only
    std::vector<std::complex<double>> second(n);
    for (int j = 0; j < n; ++j) {
        second[j] = prefactor / std::complex<double>(w2[j] - omega_p2, 0.5 * gamma);
    }

    for (int i1 = 0; i1 < n; ++i1) {
        std::complex<double>* row = &out.at(i1, 0);
        const double s1 = w1[i1] - params.omega0;
        for (int i2 = 0; i2 < n; ++i2) {
            row[i2] = second[i2] / std::complex<double>(s1 + w2[i2], gamma);
        }
    }
    return out;
}

SpectralAmplitude normalize(const SpectralAmplitude& a) {
    const double n2 = a.squared_norm();
    if (!(n2 > 0.0)) {
        throw std::domain_error("normalize: degenerate (zero-norm) amplitude");
    }
    SpectralAmplitude out = a;
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& v : out.values) {
        v *= scale;
    }
    return out;
}

std::complex<double> overlap(const SpectralAmplitude& a, const SpectralAmplitude& b) {
    if (!(a.grid == b.grid)) {
        throw std::invalid_argument("overlap: grids differ");
    }
    long double re = 0.0L, im = 0.0L;
    const std::size_t m = a.values.size();
    for (std::size_t i = 0; i < m; ++i) {
        const std::complex<double> t = std::conj(a.values[i]) * b.values[i];
        re += t.real();
        im += t.imag();
    }
    const double dw = a.grid.domega();
    return {static_cast<double>(re) * dw * dw, static_cast<double>(im) * dw * dw};
}

std::vector<double> marginal(const SpectralAmplitude& a, int axis) {
    if (axis != 1 && axis != 2) {
        throw std::invalid_argument("marginal: axis must be 1 or 2");
    }
    const int n = a.grid.n;
    const double dw = a.grid.domega();
    std::vector<double> out(n, 0.0);
    for (int i1 = 0; i1 < n; ++i1) {
        const std::complex<double>* row = &a.at(i1, 0);
        if (axis == 1) {
            long double acc = 0.0L;
            for (int i2 = 0; i2 < n; ++i2) {
                acc += std::norm(row[i2]);
            }
            out[i1] = static_cast<double>(acc) * dw;
        } else {
            for (int i2 = 0; i2 < n; ++i2) {
                out[i2] += std::norm(row[i2]) * dw;
            }
        }
    }
    return out;
}

}  // namespace fsscomp
