#pragma once

#include "wiener/detail/parallel.hpp"
#include "wiener/field.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wiener {

/// Dyadic scale step h(nu) = pi * 2^-nu.
inline double dyadic_step(int nu) { return std::ldexp(std::numbers::pi, -nu); }

/// Range of dyadic indices per axis.
struct ScaleRange {
    int lo = 0;
    int hi = 0;

    void validate() const {
        if (lo > hi) throw std::invalid_argument("scale range: lo > hi");
        if (hi - lo > 64) throw std::invalid_argument("scale range wider than 64 shells");
    }
    int size() const { return hi - lo + 1; }
};

enum class DyadicVerdict { certified_convergent, inconclusive, divergent_trend };

inline std::string to_string(DyadicVerdict v) {
    switch (v) {
        case DyadicVerdict::certified_convergent: return "certified_convergent";
        case DyadicVerdict::inconclusive: return "inconclusive";
        case DyadicVerdict::divergent_trend: return "divergent_trend";
    }
    return "?";
}

/// Tail heuristic knobs: fitted geometric ratio over the outermost `shells`
/// shells must stay below 1 - delta to certify.
struct TailPolicy {
    int shells = 4;
    double delta = 0.05;
};

struct TailFit {
    DyadicVerdict verdict = DyadicVerdict::inconclusive;
    double ratio = 0.0;  // outward geometric ratio fitted over the window
    bool ratio_valid = false;
};

/// Classifies one outward-ordered tail of nonnegative shell sums (the last
/// element is the outermost shell): certified when the fitted geometric ratio
/// over the outermost window is below 1 - delta, divergent when the shell
/// ratios stay >= 1 across three consecutive shells, inconclusive otherwise.
inline TailFit classify_tail(std::span<const double> outward, TailPolicy policy = {}) {
    if (policy.shells < 2) throw std::invalid_argument("tail policy needs >= 2 shells");
    if (outward.size() < static_cast<std::size_t>(policy.shells)) return {};  // too few shells
    std::span<const double> w = outward.subspan(outward.size() - static_cast<std::size_t>(policy.shells));
    bool all_zero = true;
    for (double v : w) {
        if (v < 0) throw std::invalid_argument("shell sums must be nonnegative");
        all_zero = all_zero && v == 0.0;
    }
    if (all_zero) return {DyadicVerdict::certified_convergent, 0.0, true};

    auto ratio_of = [](double a, double b) {  // b/a with 0-handling
        if (a == 0.0) return b == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        return b / a;
    };
    int run = 0;
    bool divergent = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (ratio_of(w[i], w[i + 1]) >= 1.0) {
            if (++run >= 3) divergent = true;
        } else {
            run = 0;
        }
    }
    TailFit fit;
    fit.ratio = std::pow(ratio_of(w.front(), w.back()), 1.0 / static_cast<double>(policy.shells - 1));
    fit.ratio_valid = std::isfinite(fit.ratio);
    if (divergent)
        fit.verdict = DyadicVerdict::divergent_trend;
    else if (fit.ratio_valid && fit.ratio < 1.0 - policy.delta)
        fit.verdict = DyadicVerdict::certified_convergent;
    else
        fit.verdict = DyadicVerdict::inconclusive;
    return fit;
}

struct AxisTailDiagnostics {
    TailFit low;   // outward = decreasing scale index (coarser shells)
    TailFit high;  // outward = increasing scale index (finer shells)
};

/// Per-scale terms, partial sum, and tail diagnostics of a dyadic sum.
struct DyadicReport {
    int d = 1;
    std::vector<ScaleRange> ranges;
    std::vector<std::pair<std::array<int, 3>, double>> terms;  // lexicographic multi-index order
    double partial_sum = 0.0;
    std::vector<AxisTailDiagnostics> axis_tails;
    double tail_ratio = 0.0;  // max fitted ratio over axes and ends
    DyadicVerdict verdict = DyadicVerdict::inconclusive;
};

namespace detail {

struct ShiftTable {
    // per node: bracketing cell, fraction, validity of x_i - delta
    std::vector<int> cell;
    std::vector<double> frac;
    std::vector<char> inside;
};

inline ShiftTable make_shift_table(const SampledField& f, int axis, double delta) {
    int n = f.counts[static_cast<std::size_t>(axis)];
    ShiftTable t;
    t.cell.resize(static_cast<std::size_t>(n));
    t.frac.resize(static_cast<std::size_t>(n));
    t.inside.resize(static_cast<std::size_t>(n));
    double shift_idx = delta / f.spacing[static_cast<std::size_t>(axis)];
    for (int i = 0; i < n; ++i) {
        double at = static_cast<double>(i) - shift_idx;
        bool ok = at >= 0.0 && at <= static_cast<double>(n - 1);
        t.inside[static_cast<std::size_t>(i)] = ok ? 1 : 0;
        if (!ok) continue;
        int cell = static_cast<int>(std::floor(at));
        if (cell > n - 2) cell = n - 2;
        t.cell[static_cast<std::size_t>(i)] = cell;
        t.frac[static_cast<std::size_t>(i)] = at - static_cast<double>(cell);
    }
    return t;
}

/// integral f(x) conj(f(x - delta)) dx on the grid, with f interpolated at the
/// shifted points and zero extension outside the box. Factors exactly over
/// tensor grids for separable fields.
inline Complex shifted_inner(const SampledField& f, const std::array<double, 3>& delta) {
    std::array<ShiftTable, 3> tab;
    for (int j = 0; j < f.d; ++j) tab[static_cast<std::size_t>(j)] = make_shift_table(f, j, delta[static_cast<std::size_t>(j)]);
    Complex acc{0, 0};
    int n0 = f.counts[0], n1 = f.d > 1 ? f.counts[1] : 1, n2 = f.d > 2 ? f.counts[2] : 1;
    for (int i0 = 0; i0 < n0; ++i0) {
        if (!tab[0].inside[static_cast<std::size_t>(i0)]) continue;
        int c0 = tab[0].cell[static_cast<std::size_t>(i0)];
        double r0 = tab[0].frac[static_cast<std::size_t>(i0)];
        for (int i1 = 0; i1 < n1; ++i1) {
            if (f.d > 1 && !tab[1].inside[static_cast<std::size_t>(i1)]) continue;
            int c1 = f.d > 1 ? tab[1].cell[static_cast<std::size_t>(i1)] : 0;
            double r1 = f.d > 1 ? tab[1].frac[static_cast<std::size_t>(i1)] : 0.0;
            for (int i2 = 0; i2 < n2; ++i2) {
                if (f.d > 2 && !tab[2].inside[static_cast<std::size_t>(i2)]) continue;
                Complex interp{0, 0};
                if (f.d == 1) {
                    interp = (1 - r0) * f.at(c0) + r0 * f.at(c0 + 1);
                } else if (f.d == 2) {
                    interp = (1 - r0) * ((1 - r1) * f.at(c0, c1) + r1 * f.at(c0, c1 + 1)) +
                             r0 * ((1 - r1) * f.at(c0 + 1, c1) + r1 * f.at(c0 + 1, c1 + 1));
                } else {
                    int c2 = tab[2].cell[static_cast<std::size_t>(i2)];
                    double r2 = tab[2].frac[static_cast<std::size_t>(i2)];
                    for (int corner = 0; corner < 8; ++corner) {
                        int h0 = corner & 1, h1 = (corner >> 1) & 1, h2 = (corner >> 2) & 1;
                        double wgt = (h0 ? r0 : 1 - r0) * (h1 ? r1 : 1 - r1) * (h2 ? r2 : 1 - r2);
                        if (wgt != 0.0) interp += wgt * f.at(c0 + h0, c1 + h1, c2 + h2);
                    }
                }
                acc += f.at(i0, i1, i2) * std::conj(interp);
            }
        }
    }
    return acc * f.cell_volume();
}

}  // namespace detail

/// || Delta_u f ||_2^2 for the full first-order mixed difference over all d
/// axes, evaluated through the expansion
///   <f, prod_j (2 I - T_{2 u_j} - T_{-2 u_j}) f>
/// into at most 3^d shifted autocorrelations. This stays O(N) per scale even
/// when the steps dwarf the support box, and it factors exactly for separable
/// fields on tensor grids.
inline double mixed_first_difference_l2_sq(const SampledField& f, const std::array<double, 3>& steps) {
    f.validate();
    int npow = 1;
    for (int j = 0; j < f.d; ++j) npow *= 3;
    std::vector<Complex> inner(static_cast<std::size_t>(npow), Complex{0, 0});
    std::vector<char> have(static_cast<std::size_t>(npow), 0);
    double total = 0;
    for (int idx = 0; idx < npow; ++idx) {
        std::array<int, 3> kappa{0, 0, 0};
        int rem = idx, mirror = 0, pw = 1;
        double coeff = 1;
        std::array<double, 3> delta{0, 0, 0};
        for (int j = 0; j < f.d; ++j) {
            int digit = rem % 3;  // 0,1,2 -> kappa -1,0,+1
            rem /= 3;
            kappa[static_cast<std::size_t>(j)] = digit - 1;
            mirror += (2 - digit) * pw;
            pw *= 3;
            coeff *= (digit == 1) ? 2.0 : -1.0;
            delta[static_cast<std::size_t>(j)] =
                2.0 * static_cast<double>(digit - 1) * steps[static_cast<std::size_t>(j)];
        }
        if (!have[static_cast<std::size_t>(idx)]) {
            Complex v = detail::shifted_inner(f, delta);
            inner[static_cast<std::size_t>(idx)] = v;
            have[static_cast<std::size_t>(idx)] = 1;
            if (!have[static_cast<std::size_t>(mirror)]) {
                inner[static_cast<std::size_t>(mirror)] = std::conj(v);
                have[static_cast<std::size_t>(mirror)] = 1;
            }
        }
        total += coeff * inner[static_cast<std::size_t>(idx)].real();
    }
    return std::max(0.0, total);
}

namespace detail {

inline void check_resolution(const SampledField& f, std::span<const ScaleRange> ranges) {
    for (int j = 0; j < f.d; ++j) {
        const ScaleRange& r = ranges[static_cast<std::size_t>(j)];
        r.validate();
        double h_min = dyadic_step(r.hi);
        double sp = f.spacing[static_cast<std::size_t>(j)];
        if (h_min < sp) {
            int max_hi = static_cast<int>(std::floor(std::log2(std::numbers::pi / sp)));
            throw std::runtime_error(
                "resolution limit on axis " + std::to_string(j + 1) + ": h(" + std::to_string(r.hi) +
                ") = " + std::to_string(h_min) + " is below the grid spacing " + std::to_string(sp) +
                "; the finest usable scale index on this grid is " + std::to_string(max_hi));
        }
    }
}

inline DyadicReport assemble_report(const SampledField& f, std::span<const ScaleRange> ranges,
                                    TailPolicy policy, int threads) {
    check_resolution(f, ranges);
    DyadicReport rep;
    rep.d = f.d;
    rep.ranges.assign(ranges.begin(), ranges.end());

    std::size_t total = 1;
    for (int j = 0; j < f.d; ++j) total *= static_cast<std::size_t>(ranges[static_cast<std::size_t>(j)].size());

    auto scale_of = [&](std::size_t flat) {
        std::array<int, 3> s{0, 0, 0};
        std::size_t rem = flat;
        for (int j = f.d - 1; j >= 0; --j) {
            const ScaleRange& r = ranges[static_cast<std::size_t>(j)];
            s[static_cast<std::size_t>(j)] = r.lo + static_cast<int>(rem % static_cast<std::size_t>(r.size()));
            rem /= static_cast<std::size_t>(r.size());
        }
        return s;
    };

    std::vector<double> values = detail::parallel_map<double>(total, threads, [&](std::size_t flat) {
        std::array<int, 3> s = scale_of(flat);
        std::array<double, 3> steps{1, 1, 1};
        double weight_exp = 0;
        for (int j = 0; j < f.d; ++j) {
            steps[static_cast<std::size_t>(j)] = dyadic_step(s[static_cast<std::size_t>(j)]);
            weight_exp += 0.5 * static_cast<double>(s[static_cast<std::size_t>(j)]);
        }
        double norm = std::sqrt(mixed_first_difference_l2_sq(f, steps));
        return std::exp2(weight_exp) * norm;
    });

    rep.terms.reserve(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        rep.terms.emplace_back(scale_of(flat), values[flat]);
        rep.partial_sum += values[flat];
    }

    // Per-axis shell sums, classified at both ends.
    bool any_divergent = false, all_certified = true;
    for (int j = 0; j < f.d; ++j) {
        const ScaleRange& r = ranges[static_cast<std::size_t>(j)];
        std::vector<double> shells(static_cast<std::size_t>(r.size()), 0.0);
        for (const auto& [s, v] : rep.terms)
            shells[static_cast<std::size_t>(s[static_cast<std::size_t>(j)] - r.lo)] += v;
        AxisTailDiagnostics diag;
        diag.high = classify_tail(shells, policy);
        std::vector<double> reversed(shells.rbegin(), shells.rend());
        diag.low = classify_tail(reversed, policy);
        for (const TailFit* fit : {&diag.low, &diag.high}) {
            if (fit->verdict == DyadicVerdict::divergent_trend) any_divergent = true;
            if (fit->verdict != DyadicVerdict::certified_convergent) all_certified = false;
            if (fit->ratio_valid) rep.tail_ratio = std::max(rep.tail_ratio, fit->ratio);
        }
        rep.axis_tails.push_back(diag);
    }
    rep.verdict = any_divergent ? DyadicVerdict::divergent_trend
                  : all_certified ? DyadicVerdict::certified_convergent
                                  : DyadicVerdict::inconclusive;
    return rep;
}

}  // namespace detail

/// Verdict over an already-computed term table (per-axis shell sums at both
/// ends of each range).
inline DyadicVerdict tail_verdict(const std::vector<std::pair<std::array<int, 3>, double>>& terms,
                                  std::span<const ScaleRange> ranges, int d, TailPolicy policy = {}) {
    bool any_divergent = false, all_certified = true;
    for (int j = 0; j < d; ++j) {
        const ScaleRange& r = ranges[static_cast<std::size_t>(j)];
        std::vector<double> shells(static_cast<std::size_t>(r.size()), 0.0);
        for (const auto& [s, v] : terms)
            shells[static_cast<std::size_t>(s[static_cast<std::size_t>(j)] - r.lo)] += v;
        TailFit high = classify_tail(shells, policy);
        std::vector<double> reversed(shells.rbegin(), shells.rend());
        TailFit low = classify_tail(reversed, policy);
        for (const TailFit* fit : {&low, &high}) {
            if (fit->verdict == DyadicVerdict::divergent_trend) any_divergent = true;
            if (fit->verdict != DyadicVerdict::certified_convergent) all_certified = false;
        }
    }
    if (any_divergent) return DyadicVerdict::divergent_trend;
    return all_certified ? DyadicVerdict::certified_convergent : DyadicVerdict::inconclusive;
}

/// terms[nu] = 2^{nu/2} || f(. + h(nu)) - f(. - h(nu)) ||_2 over the dyadic
/// range, with the tail rule deciding the verdict.
inline DyadicReport bernstein_sum_1d(const SampledField& f, const ScaleRange& range,
                                     TailPolicy policy = {}, int threads = 1) {
    f.validate();
    if (f.d != 1) throw std::invalid_argument("bernstein_sum_1d needs a 1-D field");
    std::array<ScaleRange, 1> ranges{range};
    return detail::assemble_report(f, ranges, policy, threads);
}

/// d-dimensional version over the product of per-axis ranges with the full
/// first-order mixed difference.
inline DyadicReport bernstein_sum_nd(const SampledField& f, std::span<const ScaleRange> ranges,
                                     TailPolicy policy = {}, int threads = 1) {
    f.validate();
    if (ranges.size() != static_cast<std::size_t>(f.d))
        throw std::invalid_argument("bernstein_sum_nd: one scale range per axis required");
    return detail::assemble_report(f, ranges, policy, threads);
}

}  // namespace wiener
