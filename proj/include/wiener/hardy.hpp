#pragma once

#include "wiener/detail/parallel.hpp"
#include "wiener/eta.hpp"
#include "wiener/exponent.hpp"
#include "wiener/field.hpp"
#include "wiener/gallery.hpp"
#include "wiener/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace wiener {

/// Axis subset for window averaging (0-based axis indices).
struct AxisSet {
    std::array<bool, 3> member{false, false, false};

    static AxisSet all(int d) {
        AxisSet s;
        for (int j = 0; j < d; ++j) s.member[static_cast<std::size_t>(j)] = true;
        return s;
    }
    static AxisSet of(std::initializer_list<int> axes) {
        AxisSet s;
        for (int j : axes) {
            if (j < 0 || j > 2) throw std::invalid_argument("axis out of range");
            s.member[static_cast<std::size_t>(j)] = true;
        }
        return s;
    }
    bool contains(int j) const { return member[static_cast<std::size_t>(j)]; }
    int count(int d) const {
        int k = 0;
        for (int j = 0; j < d; ++j) k += contains(j) ? 1 : 0;
        return k;
    }
};

namespace detail {

inline void require_nonnegative_real(const SampledField& f) {
    for (const Complex& v : f.values)
        if (v.imag() != 0.0 || v.real() < 0.0)
            throw std::invalid_argument("window averaging requires a nonnegative real field");
}

/// Exact integral of the piecewise-linear interpolant along `axis` over
/// [center - h, center + h], other coordinates fixed by `eval` at node index.
/// `node_value(i)` must return the interpolant restricted to the line.
inline double line_window_integral(const SampledField& f, int axis, double center, double h,
                                   const std::function<double(int)>& node_value) {
    int n = f.counts[static_cast<std::size_t>(axis)];
    double sp = f.spacing[static_cast<std::size_t>(axis)];
    double o = f.origin[static_cast<std::size_t>(axis)];
    double lo = std::max(center - h, o);
    double hi = std::min(center + h, o + sp * static_cast<double>(n - 1));
    if (lo >= hi) return 0.0;
    auto value_at = [&](double t) {
        double u = (t - o) / sp;
        int c = static_cast<int>(std::floor(u));
        if (c > n - 2) c = n - 2;
        double r = u - static_cast<double>(c);
        return (1 - r) * node_value(c) + r * node_value(c + 1);
    };
    int c_lo = static_cast<int>(std::floor((lo - o) / sp));
    double total = 0;
    int cell = std::clamp(c_lo, 0, n - 2);
    double t = lo;
    while (t < hi) {
        double cell_end = o + sp * static_cast<double>(cell + 1);
        double seg_end = std::min(hi, cell_end);
        double a = value_at(t), b = value_at(seg_end);
        total += 0.5 * (a + b) * (seg_end - t);
        t = seg_end;
        if (t >= hi) break;
        ++cell;
        if (cell > n - 2) break;
    }
    return total;
}

}  // namespace detail

/// Window integral of F over prod_{j in axes} [x_j - h_j, x_j + h_j] with the
/// remaining coordinates fixed at x. Exact on the multilinear interpolant,
/// clipped to the field box (zero extension).
inline double steklov_average(const SampledField& f, const AxisSet& axes,
                              const std::array<double, 3>& h, std::span<const double> x) {
    f.validate();
    detail::require_nonnegative_real(f);
    if (x.size() != static_cast<std::size_t>(f.d))
        throw std::invalid_argument("steklov_average: point dimension mismatch");
    // Recurse over member axes; the innermost evaluation interpolates the
    // non-member coordinates.
    std::vector<int> member;
    for (int j = 0; j < f.d; ++j)
        if (axes.contains(j)) {
            if (!(h[static_cast<std::size_t>(j)] > 0))
                throw std::invalid_argument("window half-widths must be positive");
            member.push_back(j);
        }
    std::array<double, 3> pt{};
    for (int j = 0; j < f.d; ++j) pt[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)];

    std::function<double(std::size_t)> integrate = [&](std::size_t level) -> double {
        if (level == member.size())
            return evaluate(f, std::span<const double>(pt.data(), static_cast<std::size_t>(f.d))).real();
        int axis = member[level];
        double center = pt[static_cast<std::size_t>(axis)];
        double save = center;
        double result = detail::line_window_integral(
            f, axis, center, h[static_cast<std::size_t>(axis)], [&](int node) {
                pt[static_cast<std::size_t>(axis)] = f.coord(axis, node);
                return integrate(level + 1);
            });
        pt[static_cast<std::size_t>(axis)] = save;
        return result;
    };
    if (member.empty()) return evaluate(f, x).real();
    return integrate(0);
}

namespace detail {

/// Applies the single-axis window integral to the whole field, resampling at
/// the nodes. Exact per line on the interpolant (prefix sums with quadratic
/// partial-cell corrections would give the same values; this uses the direct
/// per-node segment walk, O(window) per node).
inline SampledField steklov_axis_field(const SampledField& f, int axis, double h) {
    SampledField out = f;
    int n = f.counts[static_cast<std::size_t>(axis)];
    double sp = f.spacing[static_cast<std::size_t>(axis)];
    double o = f.origin[static_cast<std::size_t>(axis)];

    // prefix[i] = exact integral of the line interpolant from the box start to
    // node i (trapezoid over full cells is exact for piecewise-linear data)
    int n0 = f.counts[0], n1 = f.d > 1 ? f.counts[1] : 1, n2 = f.d > 2 ? f.counts[2] : 1;
    std::array<int, 3> dims{n0, n1, n2};
    std::array<int, 3> idx{0, 0, 0};
    std::vector<double> line(static_cast<std::size_t>(n)), prefix(static_cast<std::size_t>(n));

    auto for_each_line = [&](auto&& body) {
        int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
        int m1 = (a1 < f.d) ? dims[static_cast<std::size_t>(a1)] : 1;
        int m2 = (a2 < f.d) ? dims[static_cast<std::size_t>(a2)] : 1;
        for (int i1 = 0; i1 < m1; ++i1)
            for (int i2 = 0; i2 < m2; ++i2) {
                idx[static_cast<std::size_t>(a1)] = i1;
                idx[static_cast<std::size_t>(a2)] = i2;
                body();
            }
    };

    for_each_line([&] {
        for (int i = 0; i < n; ++i) {
            idx[static_cast<std::size_t>(axis)] = i;
            line[static_cast<std::size_t>(i)] = f.at(idx[0], idx[1], idx[2]).real();
        }
        prefix[0] = 0;
        for (int i = 1; i < n; ++i)
            prefix[static_cast<std::size_t>(i)] =
                prefix[static_cast<std::size_t>(i - 1)] +
                0.5 * (line[static_cast<std::size_t>(i - 1)] + line[static_cast<std::size_t>(i)]) * sp;
        auto antiderivative = [&](double t) {  // exact for the line interpolant
            if (t <= o) return 0.0;
            double end = o + sp * static_cast<double>(n - 1);
            if (t >= end) return prefix[static_cast<std::size_t>(n - 1)];
            double u = (t - o) / sp;
            int c = static_cast<int>(std::floor(u));
            if (c > n - 2) c = n - 2;
            double r = u - static_cast<double>(c);
            double a = line[static_cast<std::size_t>(c)], b = line[static_cast<std::size_t>(c + 1)];
            // integral over the partial cell: quadratic in r
            return prefix[static_cast<std::size_t>(c)] + sp * (a * r + 0.5 * (b - a) * r * r);
        };
        for (int i = 0; i < n; ++i) {
            double center = o + sp * static_cast<double>(i);
            idx[static_cast<std::size_t>(axis)] = i;
            out.at(idx[0], idx[1], idx[2]) = antiderivative(center + h) - antiderivative(center - h);
        }
    });
    return out;
}

}  // namespace detail

/// lhs, the window-average core of the right-hand side, and their ratio for
/// one Hardy-type trial. The inequality's constant is never asserted; the
/// harness reports the empirical ratio.
struct HardyReport {
    Exponent q;
    Exponent Q;
    std::array<double, 3> h{1, 1, 1};
    int k = 1;  // number of averaged axes
    double lhs = 0;
    double rhs_core = 0;
    double ratio = 0;
};

/// lhs = ( integral [window integral]^Q dx )^{1/Q};
/// rhs_core = (prod h_j)^{1/Q + 1/q'} times the mixed norm
///   ( integral_rest [ integral_axes F^q ]^{Q/q} )^{1/Q}
/// which degenerates to (integral F^q)^{1/q} when every axis is averaged.
inline HardyReport hardy_check(const SampledField& f, const Exponent& q, const Exponent& Q,
                               const std::array<double, 3>& h, const AxisSet& axes) {
    f.validate();
    detail::require_nonnegative_real(f);
    if (!q.is_finite() || q.finite_value() <= 1)
        throw std::invalid_argument("hardy_check: requires 1 < q < inf");
    if (!Q.is_finite()) throw std::invalid_argument("hardy_check: requires Q < inf");
    if (Q < q) throw std::invalid_argument("hardy_check: requires q <= Q");
    int k = axes.count(f.d);
    if (k == 0) throw std::invalid_argument("hardy_check: need at least one averaged axis");

    HardyReport rep;
    rep.q = q;
    rep.Q = Q;
    rep.h = h;
    rep.k = k;

    // Left side: iterated exact single-axis window integrals, resampled at the
    // nodes, then the L^Q norm of the result.
    SampledField win = f;
    for (int j = 0; j < f.d; ++j)
        if (axes.contains(j)) {
            if (!(h[static_cast<std::size_t>(j)] > 0))
                throw std::invalid_argument("window half-widths must be positive");
            win = detail::steklov_axis_field(win, j, h[static_cast<std::size_t>(j)]);
        }
    rep.lhs = lp_norm(win, Q);

    // Right side core: h powers times the mixed norm of F.
    double qd = q.as_double(), Qd = Q.as_double();
    SampledField fq = f;
    for (auto& v : fq.values) v = std::pow(v.real(), qd);

    // collapse the averaged axes by exact trapezoid integration
    auto collapse_axis = [&](const SampledField& g, int axis) {
        SampledField out;
        out.d = g.d - 1;
        out.origin = {0, 0, 0};
        out.spacing = {1, 1, 1};
        out.counts = {1, 1, 1};
        std::size_t dst = 0;
        const std::size_t gd = std::min<std::size_t>(static_cast<std::size_t>(g.d), 3);
        for (std::size_t j = 0; j < gd; ++j) {
            if (j == static_cast<std::size_t>(axis)) continue;
            out.origin[dst] = g.origin[j];
            out.spacing[dst] = g.spacing[j];
            out.counts[dst] = g.counts[j];
            ++dst;
        }
        std::size_t total = 1;
        for (int j = 0; j < out.d; ++j) total *= static_cast<std::size_t>(out.counts[static_cast<std::size_t>(j)]);
        out.values.assign(std::max<std::size_t>(total, 1), Complex{0, 0});
        int n = g.counts[static_cast<std::size_t>(axis)];
        double sp = g.spacing[static_cast<std::size_t>(axis)];
        int n0 = g.counts[0], n1 = g.d > 1 ? g.counts[1] : 1, n2 = g.d > 2 ? g.counts[2] : 1;
        for (int i0 = 0; i0 < n0; ++i0)
            for (int i1 = 0; i1 < n1; ++i1)
                for (int i2 = 0; i2 < n2; ++i2) {
                    std::array<int, 3> src{i0, i1, i2};
                    int i = src[static_cast<std::size_t>(axis)];
                    double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
                    std::array<int, 3> rest{0, 0, 0};
                    int t = 0;
                    for (int j = 0; j < g.d; ++j) {
                        if (j == axis) continue;
                        rest[static_cast<std::size_t>(t++)] = src[static_cast<std::size_t>(j)];
                    }
                    std::size_t oidx = 0;
                    for (int j = 0; j < out.d; ++j)
                        oidx = oidx * static_cast<std::size_t>(out.counts[static_cast<std::size_t>(j)]) +
                               static_cast<std::size_t>(rest[static_cast<std::size_t>(j)]);
                    out.values[oidx] += w * sp * g.at(i0, i1, i2);
                }
        return out;
    };

    SampledField inner = fq;
    std::vector<int> averaged;
    for (int j = 0; j < f.d; ++j)
        if (axes.contains(j)) averaged.push_back(j);
    // collapse from the highest axis index so lower indices stay valid
    for (auto it = averaged.rbegin(); it != averaged.rend(); ++it) inner = collapse_axis(inner, *it);

    double mixed;
    if (inner.d == 0) {
        mixed = std::pow(inner.values[0].real(), 1.0 / qd);
    } else {
        // ( integral inner^{Q/q} )^{1/Q}; the L1 norm is the trapezoid integral
        double e = Qd / qd;
        SampledField pw = inner;
        for (auto& v : pw.values) v = std::pow(std::max(0.0, v.real()), e);
        mixed = std::pow(lp_norm(pw, Exponent::finite(1)), 1.0 / Qd);
    }

    double hpow = 1;
    double expo = 1.0 / Qd + 1.0 - 1.0 / qd;  // 1/Q + 1/q'
    for (int j : averaged) hpow *= std::pow(h[static_cast<std::size_t>(j)], expo);
    rep.rhs_core = hpow * mixed;
    rep.ratio = rep.rhs_core > 0 ? rep.lhs / rep.rhs_core : 0.0;
    return rep;
}

/// sup of the Hardy ratio over seeded random fields and a list of window
/// sizes; deterministic for a fixed generator seed.
inline double empirical_constant(const std::function<SampledField(Rng&)>& generator, Rng& rng,
                                 const Exponent& q, const Exponent& Q, const AxisSet& axes,
                                 std::span<const double> h_list, int trials) {
    if (trials < 1) throw std::invalid_argument("empirical_constant: trials must be >= 1");
    double sup = 0;
    for (int t = 0; t < trials; ++t) {
        SampledField f = generator(rng);
        for (double h : h_list) {
            std::array<double, 3> hv{h, h, h};
            sup = std::max(sup, hardy_check(f, q, Q, hv, axes).ratio);
        }
    }
    return sup;
}

/// Sup-norm bound on the full mixed difference by the L^q norm of the top
/// mixed derivative: the explicit-constant inequality
///   || Delta_{h1..hd} f ||_inf <= 2^{d/q'} (prod h_j)^{1/q'} || D^1 f ||_q.
struct MixedDifferenceBoundReport {
    double lhs_sup = 0;
    double bound = 0;
    double ratio = 0;
};

inline MixedDifferenceBoundReport lemma_star_check(const SampledField& f, const Exponent& q,
                                                   const std::array<double, 3>& h) {
    f.validate();
    if (!q.is_finite() || q.finite_value() <= 1)
        throw std::invalid_argument("lemma_star_check: requires 1 < q < inf");
    MixedDifferenceBoundReport rep;

    DifferenceSpec spec(EtaVector::ones(f.d), 1, h);
    int n0 = f.counts[0], n1 = f.d > 1 ? f.counts[1] : 1, n2 = f.d > 2 ? f.counts[2] : 1;
    std::array<double, 3> x{};
    for (int i0 = 0; i0 < n0; ++i0)
        for (int i1 = 0; i1 < n1; ++i1)
            for (int i2 = 0; i2 < n2; ++i2) {
                x[0] = f.coord(0, i0);
                if (f.d > 1) x[1] = f.coord(1, i1);
                if (f.d > 2) x[2] = f.coord(2, i2);
                double v = std::abs(
                    mixed_difference(f, spec, std::span<const double>(x.data(), static_cast<std::size_t>(f.d))));
                rep.lhs_sup = std::max(rep.lhs_sup, v);
            }

    SampledField dtop = grid_derivative(f, EtaVector::ones(f.d));
    double qprime_inv = 1.0 - q.reciprocal().convert_to<double>();  // 1/q'
    double hprod = 1;
    for (int j = 0; j < f.d; ++j) hprod *= h[static_cast<std::size_t>(j)];
    rep.bound = std::pow(2.0, static_cast<double>(f.d) * qprime_inv) * std::pow(hprod, qprime_inv) *
                lp_norm(dtop, q);
    rep.ratio = rep.bound > 0 ? rep.lhs_sup / rep.bound : 0.0;
    return rep;
}

// ---------------------------------------------------------------------------
// Seeded field generators for harness stress runs
// ---------------------------------------------------------------------------

/// Nonnegative piecewise-constant field on a dyadic partition of the box,
/// heights uniform in [0, 1].
inline SampledField make_dyadic_step_field(Rng& rng, int d, double halfwidth, int level, int n) {
    int cells = 1 << level;
    std::vector<double> heights(static_cast<std::size_t>(std::pow(cells, d)) + 1);
    for (auto& v : heights) v = rng.uniform();
    return SampledField::sample(d, halfwidth, n, [=](std::span<const double> x) {
        std::size_t cell_index = 0;
        for (int j = 0; j < d; ++j) {
            double u = (x[static_cast<std::size_t>(j)] + halfwidth) / (2 * halfwidth);
            int c = std::min(cells - 1, static_cast<int>(u * cells));
            cell_index = cell_index * static_cast<std::size_t>(cells) + static_cast<std::size_t>(c);
        }
        return Complex(heights[cell_index], 0);
    });
}

/// Smooth nonnegative bump superposition, tapered to exactly zero at the box
/// boundary so the zero extension stays C_0-compatible (no boundary jump for
/// the derivative bound to miss). Widths bounded below so grids resolve every
/// bump.
inline SampledField make_bump_field(Rng& rng, int d, double halfwidth, int n, int bumps,
                                    double min_width) {
    struct Bump {
        std::array<double, 3> center;
        double width, amp;
    };
    std::vector<Bump> bs(static_cast<std::size_t>(bumps));
    for (auto& b : bs) {
        for (int j = 0; j < d; ++j)
            b.center[static_cast<std::size_t>(j)] = rng.uniform(-0.6 * halfwidth, 0.6 * halfwidth);
        b.width = rng.uniform(min_width, 4 * min_width);
        b.amp = rng.uniform(0.2, 1.0);
    }
    return SampledField::sample(d, halfwidth, n, [=](std::span<const double> x) {
        double v = 0;
        for (const Bump& b : bs) {
            double r2 = 0;
            for (int j = 0; j < d; ++j) {
                double t = (x[static_cast<std::size_t>(j)] - b.center[static_cast<std::size_t>(j)]) / b.width;
                r2 += t * t;
            }
            v += b.amp * std::exp(-r2);
        }
        for (int j = 0; j < d; ++j)
            v *= 1.0 - cutoff_theta(std::abs(x[static_cast<std::size_t>(j)]), 0.75 * halfwidth,
                                    halfwidth);
        return Complex(v, 0);
    });
}

}  // namespace wiener
