#pragma once

#include "wiener/detail/parallel.hpp"
#include "wiener/field.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wiener {

namespace detail {

/// In-place iterative radix-2 transform, sign = -1 for the forward convention
/// sum_k v[k] e^{sign * 2 pi i j k / n}.
inline void fft_radix2(std::span<Complex> v, int sign) {
    std::size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft length must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(v[i], v[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = static_cast<double>(sign) * 2 * std::numbers::pi / static_cast<double>(len);
        Complex wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1, 0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                Complex a = v[i + k];
                Complex b = v[i + k + len / 2] * w;
                v[i + k] = a + b;
                v[i + k + len / 2] = a - b;
                w *= wlen;
            }
        }
    }
}

/// Transform along each axis of a row-major d-dimensional array.
inline void fft_nd(std::vector<Complex>& data, const std::array<int, 3>& dims, int d, int sign) {
    std::array<std::size_t, 3> stride{1, 1, 1};
    std::size_t total = 1;
    for (int j = d - 1; j >= 0; --j) {
        stride[static_cast<std::size_t>(j)] = total;
        total *= static_cast<std::size_t>(dims[static_cast<std::size_t>(j)]);
    }
    std::vector<Complex> line;
    for (int axis = 0; axis < d; ++axis) {
        std::size_t n = static_cast<std::size_t>(dims[static_cast<std::size_t>(axis)]);
        std::size_t st = stride[static_cast<std::size_t>(axis)];
        std::size_t lines = total / n;
        line.resize(n);
        for (std::size_t l = 0; l < lines; ++l) {
            // base index of this line: expand l over the remaining axes
            std::size_t base = 0, rem = l;
            for (int j = d - 1; j >= 0; --j) {
                if (j == axis) continue;
                std::size_t dim = static_cast<std::size_t>(dims[static_cast<std::size_t>(j)]);
                base += (rem % dim) * stride[static_cast<std::size_t>(j)];
                rem /= dim;
            }
            for (std::size_t i = 0; i < n; ++i) line[i] = data[base + i * st];
            fft_radix2(line, sign);
            for (std::size_t i = 0; i < n; ++i) data[base + i * st] = line[i];
        }
    }
}

}  // namespace detail

struct TransformEstimate {
    double l1_estimate = 0;        // Riemann L1 norm of the transform density
    double parseval_residual = 0;  // relative two-norm mismatch between sides
    int n = 0;
    double spacing = 0;
};

/// Default memory budget for N^d sample grids (~256 MiB of complex values).
inline constexpr std::size_t kDefaultMaxPoints = std::size_t(1) << 24;

/// Samples fn on [-R, R]^d at x_k = -R + k * (2R/N) and returns the discrete
/// transform values hat f(xi_m) = spacing^d * sum_k fn(x_k) e^{-i xi_m . x_k}
/// on the 2 pi / (N spacing)-spaced frequency grid (standard FFT bin order,
/// without the e^{i xi R} offset phase, which has unit modulus).
inline std::vector<Complex> sampled_transform(
    const std::function<Complex(std::span<const double>)>& fn, int d, double R, int N,
    std::size_t max_points = kDefaultMaxPoints) {
    if (d < 1 || d > 3) throw std::invalid_argument("transform dimension must be 1..3");
    if (N < 2 || (N & (N - 1)) != 0)
        throw std::invalid_argument("N must be a power of two, got " + std::to_string(N));
    if (!(R > 0)) throw std::invalid_argument("truncation radius must be positive");
    std::size_t total = 1;
    for (int j = 0; j < d; ++j) {
        if (total > max_points / static_cast<std::size_t>(N))
            throw std::invalid_argument(
                "memory budget exceeded: N^d = " + std::to_string(std::pow(N, d)) +
                " points; largest admissible N for d=" + std::to_string(d) + " is " +
                std::to_string(std::size_t(1) << (std::bit_width(max_points) - 1) / d));
        total *= static_cast<std::size_t>(N);
    }
    double spacing = 2 * R / static_cast<double>(N);
    std::vector<Complex> data(total);
    std::array<int, 3> dims{N, N, N};
    std::array<double, 3> x{};
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int j = d - 1; j >= 0; --j) {
            int idx = static_cast<int>(rem % static_cast<std::size_t>(N));
            rem /= static_cast<std::size_t>(N);
            x[static_cast<std::size_t>(j)] = -R + spacing * static_cast<double>(idx);
        }
        data[flat] = fn(std::span<const double>(x.data(), static_cast<std::size_t>(d)));
    }
    detail::fft_nd(data, dims, d, -1);
    double spd = std::pow(spacing, d);
    for (Complex& v : data) v *= spd;
    return data;
}

/// Samples fn on [-R, R]^d at N^d points, computes the discrete transform with
/// continuum normalization, and returns the Riemann L1 norm of the transform
/// density g (where f(y) = integral g(x) e^{i x.y} dx) together with the
/// relative Parseval residual | ||f||_2^2 - (2 pi)^{-d} ||f^||_2^2 | / ||f||_2^2.
inline TransformEstimate truncated_fourier_l1(
    const std::function<Complex(std::span<const double>)>& fn, int d, double R, int N,
    std::size_t max_points = kDefaultMaxPoints) {
    double spacing = 2 * R / static_cast<double>(N);
    double l2_time = 0;
    std::vector<Complex> hat = sampled_transform(
        [&](std::span<const double> x) {
            Complex v = fn(x);
            l2_time += std::norm(v);
            return v;
        },
        d, R, N, max_points);

    // Riemann weights: frequency cell (2 pi / (N spacing))^d with the 1/(2 pi)^d
    // of the density, i.e. (N spacing)^{-d} per bin.
    double cell = 1.0 / std::pow(2 * R, d);
    double abs_sum = 0, l2_freq = 0;
    for (const Complex& v : hat) {
        abs_sum += std::abs(v);
        l2_freq += std::norm(v);
    }
    TransformEstimate out;
    out.n = N;
    out.spacing = spacing;
    out.l1_estimate = abs_sum * cell;
    double time_side = l2_time * std::pow(spacing, d);
    double freq_side = l2_freq * cell;
    out.parseval_residual = time_side > 0 ? std::abs(time_side - freq_side) / time_side : 0.0;
    return out;
}

/// Field overload: zero-extended evaluation drives the same estimator.
inline TransformEstimate truncated_fourier_l1(const SampledField& f, double R, int N,
                                              std::size_t max_points = kDefaultMaxPoints) {
    f.validate();
    return truncated_fourier_l1(
        [&](std::span<const double> x) { return evaluate(f, x); }, f.d, R, N, max_points);
}

struct ATrendEntry {
    double R = 0;
    int N = 0;
    double l1 = 0;
    double parseval_residual = 0;
};

struct TrendThresholds {
    double converged = 0.05;  // |fitted slope| below this reads as converged
    double growing = 0.10;    // slope above this reads as growing
};

/// Truncation ladder of l1 estimates with a log-log slope fit over the last
/// three entries. Trend evidence only, never a certificate.
struct ATrend {
    std::vector<ATrendEntry> entries;
    double slope = 0;
    std::string classification;  // "converged" | "growing" | "inconclusive"
};

inline ATrend a_norm_trend(const std::function<Complex(std::span<const double>)>& fn, int d,
                           std::span<const double> R_list, double max_spacing,
                           TrendThresholds thresholds = {}, std::size_t max_points = kDefaultMaxPoints,
                           int threads = 1) {
    if (R_list.size() < 2) throw std::invalid_argument("trend needs at least two truncation radii");
    for (std::size_t i = 1; i < R_list.size(); ++i)
        if (!(R_list[i] > R_list[i - 1]))
            throw std::invalid_argument("truncation radii must be strictly increasing");
    if (!(max_spacing > 0)) throw std::invalid_argument("spacing bound must be positive");

    ATrend trend;
    std::vector<ATrendEntry> entries = detail::parallel_map<ATrendEntry>(
        R_list.size(), threads, [&](std::size_t i) {
            double R = R_list[i];
            int N = 2;
            while (2 * R / static_cast<double>(N) > max_spacing) N <<= 1;
            auto est = truncated_fourier_l1(fn, d, R, N, max_points);
            return ATrendEntry{R, N, est.l1_estimate, est.parseval_residual};
        });
    trend.entries = std::move(entries);

    std::size_t tail = std::min<std::size_t>(3, trend.entries.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = trend.entries.size() - tail; i < trend.entries.size(); ++i) {
        double lx = std::log(trend.entries[i].R);
        double ly = std::log(std::max(trend.entries[i].l1, 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double nt = static_cast<double>(tail);
    trend.slope = (nt * sxy - sx * sy) / (nt * sxx - sx * sx);
    if (trend.slope < thresholds.converged)
        trend.classification = "converged";
    else if (trend.slope > thresholds.growing)
        trend.classification = "growing";
    else
        trend.classification = "inconclusive";
    return trend;
}

}  // namespace wiener
