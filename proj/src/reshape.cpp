#include "fsscomp/reshape.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fft_internal.hpp"
#include "fsscomp/time_domain.hpp"

namespace fsscomp {

namespace {

// ------------------------------ monotone cubic ------------------------------

// Fritsch-Carlson shape-preserving cubic through strictly increasing data;
// used for CDFs and their inverses so warps stay monotone.
struct Pchip {
    std::vector<double> x, y, d;

    Pchip(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)) {
        const std::size_t n = x.size();
        if (n < 2) {
            throw std::invalid_argument("Pchip: need at least two nodes");
        }
        std::vector<double> h(n - 1), s(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x[i + 1] - x[i];
            if (!(h[i] > 0.0)) {
                throw std::invalid_argument("Pchip: abscissae must be strictly increasing");
            }
            s[i] = (y[i + 1] - y[i]) / h[i];
        }
        d.assign(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (s[i - 1] * s[i] <= 0.0) {
                d[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
            }
        }
        auto one_sided = [](double h0, double h1, double s0, double s1) {
            double d0 = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
            if (d0 * s0 <= 0.0) {
                d0 = 0.0;
            } else if (s0 * s1 < 0.0 && std::abs(d0) > 3.0 * std::abs(s0)) {
                d0 = 3.0 * s0;
            }
            return d0;
        };
        if (n == 2) {
            d[0] = d[1] = s[0];
        } else {
            d[0] = one_sided(h[0], h[1], s[0], s[1]);
            d[n - 1] = one_sided(h[n - 2], h[n - 3], s[n - 2], s[n - 3]);
        }
    }

    std::size_t locate(double q) const {
        if (q <= x.front()) return 0;
        if (q >= x.back()) return x.size() - 2;
        auto it = std::upper_bound(x.begin(), x.end(), q);
        return static_cast<std::size_t>(it - x.begin()) - 1;
    }

    double eval(double q) const {
        const std::size_t i = locate(q);
        const double h = x[i + 1] - x[i];
        const double t = (q - x[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1;
        const double h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2;
        const double h11 = t3 - t2;
        return h00 * y[i] + h * h10 * d[i] + h01 * y[i + 1] + h * h11 * d[i + 1];
    }

    double deriv(double q) const {
        const std::size_t i = locate(q);
        const double h = x[i + 1] - x[i];
        const double t = (q - x[i]) / h;
        const double t2 = t * t;
        const double dh00 = (6 * t2 - 6 * t) / h;
        const double dh10 = 3 * t2 - 4 * t + 1;
        const double dh01 = (-6 * t2 + 6 * t) / h;
        const double dh11 = 3 * t2 - 2 * t;
        return dh00 * y[i] + dh10 * d[i] + dh01 * y[i + 1] + dh11 * d[i + 1];
    }
};

// --------------------------- band-limited resample --------------------------

// Resamples a length-n complex sequence at arbitrary fractional indices by
// FFT zero-padding (factor kUpsample) followed by 4-point Lagrange on the
// fine grid. Valid because the amplitudes this module handles are smooth and
// decay fast in the conjugate domain.
constexpr int kUpsample = 8;

class AxisResampler {
public:
    explicit AxisResampler(int n) : n_(n), fine_(static_cast<std::size_t>(n) * kUpsample) {}

    // targets are fractional source indices (grid units); out-of-range -> 0
    void resample(const std::complex<double>* in, std::complex<double>* out,
                  const std::vector<double>& targets) {
        std::copy(in, in + n_, fine_.begin());
        detail::fft1d_inplace(fine_.data(), n_, FFTW_FORWARD);

        const int m = n_ * kUpsample;
        std::vector<std::complex<double>> padded(m, 0.0);
        const int half = n_ / 2;
        for (int k = 0; k < half; ++k) {
            padded[k] = fine_[k];
        }
        for (int k = half + 1; k < n_; ++k) {
            padded[m - n_ + k] = fine_[k];
        }
        // split the Nyquist bin symmetrically
        padded[half] = 0.5 * fine_[half];
        padded[m - half] = 0.5 * fine_[half];

        detail::fft1d_inplace(padded.data(), m, FFTW_BACKWARD);
        const double scale = 1.0 / n_;
        for (auto& v : padded) {
            v *= scale;
        }

        for (std::size_t t = 0; t < targets.size(); ++t) {
            const double xi = targets[t];
            if (xi < 0.0 || xi > n_ - 1) {
                out[t] = 0.0;
                continue;
            }
            const double xf = xi * kUpsample;
            long i0 = std::lround(std::floor(xf)) - 1;
            i0 = std::clamp<long>(i0, 0, m - 4);
            const double u = xf - (i0 + 1);
            // 4-point Lagrange around the fine node
            const double c0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
            const double c1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
            const double c2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
            const double c3 = (u + 1.0) * u * (u - 1.0) / 6.0;
            out[t] = c0 * padded[i0] + c1 * padded[i0 + 1] + c2 * padded[i0 + 2] +
                     c3 * padded[i0 + 3];
        }
    }

private:
    int n_;
    std::vector<std::complex<double>> fine_;
};

}  // namespace

// ------------------------------ rigid shift ---------------------------------

ShiftSearchResult best_rigid_shift(const SpectralAmplitude& a, const SpectralAmplitude& b) {
    if (!(a.grid == b.grid)) {
        throw std::invalid_argument("best_rigid_shift: grids differ");
    }
    const int n = a.grid.n;
    const double dw = a.grid.domega();
    const std::size_t total = a.values.size();

    std::vector<std::complex<double>> fa(total), fb(total);
    double amax = 0.0, bmax = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        const double va = std::abs(a.values[i]);
        const double vb = std::abs(b.values[i]);
        fa[i] = va;
        fb[i] = vb;
        amax = std::max(amax, va);
        bmax = std::max(bmax, vb);
    }
    if (amax == 0.0 || bmax == 0.0) {
        throw std::domain_error("best_rigid_shift: flat objective (zero amplitude)");
    }

    // sum_x A(x) B(x - m) for every integer m in one pass:
    // FWD[conj(FWD A) * FWD B](m) = n^2 sum_x A(x) B(x - m)
    detail::fft2d_inplace(fa, n, FFTW_FORWARD);
    detail::fft2d_inplace(fb, n, FFTW_FORWARD);
    for (std::size_t i = 0; i < total; ++i) {
        fa[i] = std::conj(fa[i]) * fb[i];
    }
    detail::fft2d_inplace(fa, n, FFTW_FORWARD);
    const double corr_scale = dw * dw / (static_cast<double>(n) * n);

    auto objective_at_steps = [&](int m1, int m2) {
        const int i1 = (m1 % n + n) % n;
        const int i2 = (m2 % n + n) % n;
        return fa[static_cast<std::size_t>(i1) * n + i2].real() * corr_scale;
    };

    // coarse lattice: step 4*domega, shifts up to span/4
    const int reach = (n / 4) & ~3;
    ShiftSearchResult result;
    result.scan.reserve(static_cast<std::size_t>(reach / 2 + 1) * (reach / 2 + 1));
    double best = -1.0;
    int best_m1 = 0, best_m2 = 0;
    for (int m1 = -reach; m1 <= reach; m1 += 4) {
        for (int m2 = -reach; m2 <= reach; m2 += 4) {
            const double obj = objective_at_steps(m1, m2);
            result.scan.push_back({m1 * dw, m2 * dw, obj});
            if (obj > best) {
                best = obj;
                best_m1 = m1;
                best_m2 = m2;
            }
        }
    }

    // refinement on the band-limited objective, one axis at a time
    TemporalAmplitude bt = to_time(b);
    std::vector<double> mag_a(total);
    for (std::size_t i = 0; i < total; ++i) {
        mag_a[i] = std::abs(a.values[i]);
    }
    auto continuous_objective = [&](double d1, double d2) {
        TemporalAmplitude shifted = bt;
        std::vector<std::complex<double>> f1(n), f2(n);
        for (int idx = 0; idx < n; ++idx) {
            const double tt = bt.grid.time(idx);
            f1[idx] = std::polar(1.0, -d1 * tt);
            f2[idx] = std::polar(1.0, -d2 * tt);
        }
        for (int a1 = 0; a1 < n; ++a1) {
            std::complex<double>* row = &shifted.at(a1, 0);
            for (int a2 = 0; a2 < n; ++a2) {
                row[a2] *= f1[a1] * f2[a2];
            }
        }
        SpectralAmplitude bs = to_frequency(shifted);
        long double acc = 0.0L;
        for (std::size_t i = 0; i < total; ++i) {
            acc += mag_a[i] * std::abs(bs.values[i]);
        }
        return static_cast<double>(acc) * dw * dw;
    };

    double d1 = best_m1 * dw, d2 = best_m2 * dw;
    const double coarse_step = 4.0 * dw;
    const double resolution = dw / 16.0;
    const double limit = 0.25 * a.grid.span;
    for (int round = 0; round < 2; ++round) {
        for (int axis = 1; axis <= 2; ++axis) {
            double lo = (axis == 1 ? d1 : d2) - coarse_step;
            double hi = (axis == 1 ? d1 : d2) + coarse_step;
            lo = std::max(lo, -limit);
            hi = std::min(hi, limit);
            while (hi - lo > resolution) {
                const double p = lo + (hi - lo) / 3.0;
                const double q = hi - (hi - lo) / 3.0;
                const double fp = (axis == 1) ? continuous_objective(p, d2)
                                              : continuous_objective(d1, p);
                const double fq = (axis == 1) ? continuous_objective(q, d2)
                                              : continuous_objective(d1, q);
                if (fp < fq) {
                    lo = p;
                } else {
                    hi = q;
                }
            }
            if (axis == 1) {
                d1 = 0.5 * (lo + hi);
            } else {
                d2 = 0.5 * (lo + hi);
            }
        }
    }

    double refined = continuous_objective(d1, d2);
    if (refined < best) {  // refinement may not regress below the lattice optimum
        d1 = best_m1 * dw;
        d2 = best_m2 * dw;
        refined = best;
    }
    result.shift = {rad_per_ns_to_ueV(d1), rad_per_ns_to_ueV(d2)};
    result.objective = refined;
    return result;
}

// ----------------------------- magnitude match ------------------------------

namespace {

struct AxisCdf {
    std::vector<double> omega;
    std::vector<double> cdf;
    bool regularized = false;
};

AxisCdf build_cdf(const std::vector<double>& density, const SpectralAmplitude& ref, int axis) {
    const int n = ref.grid.n;
    AxisCdf out;
    out.omega.resize(n);
    for (int j = 0; j < n; ++j) {
        out.omega[j] = (axis == 1) ? ref.grid.omega1(j) : ref.grid.omega2(j);
    }
    const double peak = *std::max_element(density.begin(), density.end());
    if (!(peak > 0.0)) {
        throw std::domain_error("match_magnitudes: zero marginal density");
    }
    const double floor = 1e-14 * peak;
    std::vector<double> p(density);
    for (auto& v : p) {
        if (v < floor) {
            v = floor;
            out.regularized = true;
        }
    }
    // node-centered cumulative: F(w_j) covers half of cell j, so the node
    // values are second-order accurate and biases cancel between a and b
    out.cdf.resize(n);
    long double acc = 0.0L;
    const double dw = ref.grid.domega();
    for (int j = 0; j < n; ++j) {
        acc += p[j] * dw;
        out.cdf[j] = static_cast<double>(acc) - 0.5 * p[j] * dw;
    }
    const double totalmass = static_cast<double>(acc);
    for (auto& v : out.cdf) {
        v /= totalmass;
    }
    // strict monotonicity for the interpolants
    for (int j = 1; j < n; ++j) {
        if (out.cdf[j] <= out.cdf[j - 1]) {
            out.cdf[j] = std::nextafter(out.cdf[j - 1], 2.0);
            out.regularized = true;
        }
    }
    return out;
}

std::vector<double> cdf_match_axis(const AxisCdf& target, const AxisCdf& source,
                                   const std::vector<double>& source_density,
                                   bool* regularized) {
    // warp(w) = CDF_target^{-1}(CDF_source(w)) on the source support,
    // identity outside it
    Pchip inverse_target(target.cdf, target.omega);
    const std::size_t n = source.omega.size();
    const double peak = *std::max_element(source_density.begin(), source_density.end());
    std::size_t first = 0, last = n - 1;
    while (first < last && source_density[first] < 1e-12 * peak) {
        ++first;
    }
    while (last > first && source_density[last] < 1e-12 * peak) {
        --last;
    }

    std::vector<double> warp(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j < first || j > last) {
            warp[j] = source.omega[j];
            continue;
        }
        const double q = std::clamp(source.cdf[j], target.cdf.front(), target.cdf.back());
        warp[j] = inverse_target.eval(q);
    }
    // splice points may disorder the table; restore strict monotonicity
    const double nudge = 1e-12 * (source.omega.back() - source.omega.front());
    for (std::size_t j = first; j <= last && j < n; ++j) {
        if (j > 0 && warp[j] <= warp[j - 1]) {
            warp[j] = warp[j - 1] + nudge;
            *regularized = true;
        }
    }
    for (std::size_t j = last + 1; j < n; ++j) {
        if (warp[j] <= warp[j - 1]) {
            warp[j] = warp[j - 1] + nudge;
            *regularized = true;
        }
    }
    return warp;
}

}  // namespace

WarpFunctions match_magnitudes(const SpectralAmplitude& a, const SpectralAmplitude& b) {
    if (!(a.grid == b.grid)) {
        throw std::invalid_argument("match_magnitudes: grids differ");
    }
    WarpFunctions out;
    bool reg = false;
    for (int axis = 1; axis <= 2; ++axis) {
        const std::vector<double> pb = marginal(b, axis);
        AxisCdf ca = build_cdf(marginal(a, axis), a, axis);
        AxisCdf cb = build_cdf(pb, b, axis);
        reg = reg || ca.regularized || cb.regularized;
        auto warp = cdf_match_axis(ca, cb, pb, &reg);
        if (axis == 1) {
            out.warp1 = std::move(warp);
        } else {
            out.warp2 = std::move(warp);
        }
    }
    out.regularized = reg;
    return out;
}

SpectralAmplitude apply_warp(const SpectralAmplitude& b, const WarpFunctions& warps) {
    const int n = b.grid.n;
    if (static_cast<int>(warps.warp1.size()) != n || static_cast<int>(warps.warp2.size()) != n) {
        throw std::invalid_argument("apply_warp: warp tables do not match the grid");
    }
    const double dw = b.grid.domega();
    const double input_norm = b.squared_norm();

    // Inverse map, its derivative, and the target marginal the warp implies
    // through the density-ratio identity  target(w) = p_b(winv(w)) winv'(w).
    // Rows/columns are later rescaled onto that target, which keeps the
    // discrete change of variables exactly mass-preserving.
    struct AxisPlan {
        std::vector<double> src_index;  // fractional source index, <0 if outside
        std::vector<double> target;     // implied marginal density on this axis
    };
    auto build_axis = [&](const std::vector<double>& warp, int axis) {
        std::vector<double> omega(n);
        for (int j = 0; j < n; ++j) {
            omega[j] = (axis == 1) ? b.grid.omega1(j) : b.grid.omega2(j);
        }
        const std::vector<double> density = marginal(b, axis);
        Pchip inv(warp, omega);  // warp is strictly increasing
        Pchip dens(omega, density);
        AxisPlan plan;
        plan.src_index.assign(n, -1.0);
        plan.target.assign(n, 0.0);
        long double mass = 0.0L;
        for (int j = 0; j < n; ++j) {
            const double w = omega[j];
            if (w < warp.front() || w > warp.back()) {
                continue;
            }
            const double u = inv.eval(w);
            plan.src_index[j] = (u - omega.front()) / dw;
            plan.target[j] = std::max(0.0, dens.eval(u)) * std::max(0.0, inv.deriv(w));
            mass += plan.target[j];
        }
        const double total = static_cast<double>(mass) * dw;
        if (!(total > 0.0)) {
            throw std::domain_error("apply_warp: warp maps all weight off the grid");
        }
        const double rescale = input_norm / total;
        for (auto& t : plan.target) {
            t *= rescale;
        }
        return plan;
    };

    const AxisPlan plan1 = build_axis(warps.warp1, 1);
    const AxisPlan plan2 = build_axis(warps.warp2, 2);

    // pass 1: resample along axis 1, then pin each row mass to its target
    std::vector<std::complex<double>> stage(static_cast<std::size_t>(n) * n);
    {
        AxisResampler rs(n);
        std::vector<std::complex<double>> col(n), res(n);
        for (int i2 = 0; i2 < n; ++i2) {
            for (int i1 = 0; i1 < n; ++i1) {
                col[i1] = b.at(i1, i2);
            }
            rs.resample(col.data(), res.data(), plan1.src_index);
            for (int i1 = 0; i1 < n; ++i1) {
                stage[static_cast<std::size_t>(i1) * n + i2] = res[i1];
            }
        }
        for (int i1 = 0; i1 < n; ++i1) {
            std::complex<double>* row = &stage[static_cast<std::size_t>(i1) * n];
            long double acc = 0.0L;
            for (int i2 = 0; i2 < n; ++i2) {
                acc += std::norm(row[i2]);
            }
            const double measured = static_cast<double>(acc) * dw;
            const double scale = measured > 0.0 ? std::sqrt(plan1.target[i1] / measured) : 0.0;
            for (int i2 = 0; i2 < n; ++i2) {
                row[i2] *= scale;
            }
        }
    }

    // pass 2: resample along axis 2, then pin each column mass
    SpectralAmplitude out(b.grid);
    out.narrow_span = b.narrow_span;
    {
        AxisResampler rs(n);
        std::vector<std::complex<double>> res(n);
        for (int i1 = 0; i1 < n; ++i1) {
            rs.resample(&stage[static_cast<std::size_t>(i1) * n], res.data(), plan2.src_index);
            std::complex<double>* row = &out.at(i1, 0);
            for (int i2 = 0; i2 < n; ++i2) {
                row[i2] = res[i2];
            }
        }
        std::vector<long double> colmass(n, 0.0L);
        for (int i1 = 0; i1 < n; ++i1) {
            const std::complex<double>* row = &out.at(i1, 0);
            for (int i2 = 0; i2 < n; ++i2) {
                colmass[i2] += std::norm(row[i2]);
            }
        }
        std::vector<double> colscale(n, 0.0);
        for (int i2 = 0; i2 < n; ++i2) {
            const double measured = static_cast<double>(colmass[i2]) * dw;
            colscale[i2] = measured > 0.0 ? std::sqrt(plan2.target[i2] / measured) : 0.0;
        }
        for (int i1 = 0; i1 < n; ++i1) {
            std::complex<double>* row = &out.at(i1, 0);
            for (int i2 = 0; i2 < n; ++i2) {
                row[i2] *= colscale[i2];
            }
        }
    }
    return out;
}

// ------------------------------- phase flatten ------------------------------

PhaseProfiles flatten_phase(const SpectralAmplitude& a, const SpectralAmplitude& b) {
    if (!(a.grid == b.grid)) {
        throw std::invalid_argument("flatten_phase: grids differ");
    }
    const int n = a.grid.n;
    std::vector<std::complex<double>> m(static_cast<std::size_t>(n) * n);
    long double weight_sum = 0.0L;
    for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] = std::conj(a.values[i]) * b.values[i];
        weight_sum += std::abs(m[i]);
    }
    PhaseProfiles out;
    out.phase1.assign(n, 0.0);
    out.phase2.assign(n, 0.0);
    if (!(weight_sum > 0.0)) {
        return out;  // nothing to align
    }

    // alternating per-axis alignment of M e^{i(p1 + p2)} onto the real axis
    std::vector<std::complex<double>> e1(n, 1.0), e2(n, 1.0);
    double prev = -1.0;
    for (int iter = 0; iter < 200; ++iter) {
        for (int i1 = 0; i1 < n; ++i1) {
            std::complex<double> acc = 0.0;
            const std::complex<double>* row = &m[static_cast<std::size_t>(i1) * n];
            for (int i2 = 0; i2 < n; ++i2) {
                acc += row[i2] * e2[i2];
            }
            out.phase1[i1] = (std::abs(acc) > 0.0) ? -std::arg(acc) : 0.0;
            e1[i1] = std::polar(1.0, out.phase1[i1]);
        }
        long double obj = 0.0L;
        for (int i2 = 0; i2 < n; ++i2) {
            std::complex<double> acc = 0.0;
            for (int i1 = 0; i1 < n; ++i1) {
                acc += m[static_cast<std::size_t>(i1) * n + i2] * e1[i1];
            }
            out.phase2[i2] = (std::abs(acc) > 0.0) ? -std::arg(acc) : 0.0;
            e2[i2] = std::polar(1.0, out.phase2[i2]);
            obj += std::abs(acc);
        }
        const double objective = static_cast<double>(obj);
        if (prev >= 0.0 && objective - prev <= 1e-13 * static_cast<double>(weight_sum)) {
            break;
        }
        prev = objective;
    }

    long double aligned = 0.0L;
    for (int i1 = 0; i1 < n; ++i1) {
        const std::complex<double>* row = &m[static_cast<std::size_t>(i1) * n];
        std::complex<double> acc = 0.0;
        for (int i2 = 0; i2 < n; ++i2) {
            acc += row[i2] * e2[i2];
        }
        aligned += (e1[i1] * acc).real();
    }
    out.separability_score = std::max(0.0, static_cast<double>(aligned / weight_sum));
    out.separable = out.separability_score >= 0.99;
    return out;
}

SpectralAmplitude apply_phase_profiles(const SpectralAmplitude& b, const PhaseProfiles& profiles) {
    const int n = b.grid.n;
    if (static_cast<int>(profiles.phase1.size()) != n ||
        static_cast<int>(profiles.phase2.size()) != n) {
        throw std::invalid_argument("apply_phase_profiles: profile length mismatch");
    }
    SpectralAmplitude out = b;
    std::vector<std::complex<double>> e1(n), e2(n);
    for (int j = 0; j < n; ++j) {
        e1[j] = std::polar(1.0, profiles.phase1[j]);
        e2[j] = std::polar(1.0, profiles.phase2[j]);
    }
    for (int i1 = 0; i1 < n; ++i1) {
        std::complex<double>* row = &out.at(i1, 0);
        for (int i2 = 0; i2 < n; ++i2) {
            row[i2] *= e1[i1] * e2[i2];
        }
    }
    return out;
}

// -------------------------------- three step --------------------------------

ThreeStepResult three_step(const SpectralAmplitude& a, const SpectralAmplitude& b) {
    ThreeStepResult result;
    result.report.overlap_initial = overlap(a, b);

    ShiftSearchResult search = best_rigid_shift(a, b);
    result.report.shift = search.shift;
    SpectralAmplitude b1 = shift_amplitude(b, ueV_to_rad_per_ns(search.shift.delta1_ueV),
                                           ueV_to_rad_per_ns(search.shift.delta2_ueV));
    result.report.overlap_after_shift = overlap(a, b1);
    result.report.norm_after_shift = b1.squared_norm();

    result.report.warps = match_magnitudes(a, b1);
    SpectralAmplitude b2 = apply_warp(b1, result.report.warps);
    result.report.overlap_after_warp = overlap(a, b2);
    result.report.norm_after_warp = b2.squared_norm();

    result.report.phases = flatten_phase(a, b2);
    SpectralAmplitude b3 = apply_phase_profiles(b2, result.report.phases);
    result.report.overlap_after_flatten = overlap(a, b3);
    result.report.norm_after_flatten = b3.squared_norm();

    result.corrected = std::move(b3);
    return result;
}

}  // namespace fsscomp
