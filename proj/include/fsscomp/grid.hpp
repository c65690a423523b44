#pragma once

#include <numbers>
#include <stdexcept>

namespace fsscomp {

// Uniform n x n frequency grid. Axis k runs center_k - span/2 + j*domega,
// j = 0..n-1, so the center sits exactly on node n/2. Both axes share span
// and n; spans are in rad/ns.
struct FrequencyGrid {
    double center1 = 0.0;
    double center2 = 0.0;
    double span = 0.0;
    int n = 0;

    FrequencyGrid() = default;
    FrequencyGrid(double c1, double c2, double span_, int n_)
        : center1(c1), center2(c2), span(span_), n(n_) {
        if (n < 16 || (n & (n - 1)) != 0) {
            throw std::invalid_argument("FrequencyGrid: n must be a power of two >= 16");
        }
        if (!(span > 0.0)) {
            throw std::invalid_argument("FrequencyGrid: span must be positive");
        }
    }

    double domega() const { return span / n; }
    double omega1(int j) const { return center1 - 0.5 * span + j * domega(); }
    double omega2(int j) const { return center2 - 0.5 * span + j * domega(); }

    bool operator==(const FrequencyGrid&) const = default;
};

// FFT-dual time grid: dt = 2*pi/span, node a at t_min + a*dt, so that
// dt * domega = 2*pi/n. Carries its partner verbatim so round trips
// reproduce the exact same FrequencyGrid object.
struct TimeGrid {
    FrequencyGrid partner;
    double t_min = 0.0;

    static TimeGrid dual_of(const FrequencyGrid& g) {
        TimeGrid t;
        t.partner = g;
        t.t_min = -(g.n / 2) * (2.0 * std::numbers::pi / g.span);
        return t;
    }

    int n() const { return partner.n; }
    double dt() const { return 2.0 * std::numbers::pi / partner.span; }
    double time(int a) const { return t_min + a * dt(); }
    double t_max() const { return time(n() - 1); }
    double carrier1() const { return partner.center1; }
    double carrier2() const { return partner.center2; }

    bool operator==(const TimeGrid&) const = default;
};

}  // namespace fsscomp
