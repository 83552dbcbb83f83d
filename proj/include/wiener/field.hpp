#pragma once

#include "wiener/eta.hpp"
#include "wiener/exponent.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wiener {

using Complex = std::complex<double>;

/// Uniform tensor-grid sampling of a function on a box in R^d (d <= 3),
/// row-major storage. Evaluation outside the box is exactly zero: fields
/// represent C_0 functions truncated to a support box.
struct SampledField {
    int d = 1;
    std::array<double, 3> origin{0, 0, 0};
    std::array<double, 3> spacing{1, 1, 1};
    std::array<int, 3> counts{2, 1, 1};
    std::vector<Complex> values;

    void validate() const {
        if (d < 1 || d > 3) throw std::invalid_argument("field dimension must be 1..3");
        std::size_t total = 1;
        for (int j = 0; j < d; ++j) {
            if (counts[static_cast<std::size_t>(j)] < 2)
                throw std::invalid_argument("field needs at least 2 samples per axis");
            if (!(spacing[static_cast<std::size_t>(j)] > 0))
                throw std::invalid_argument("field spacing must be positive");
            total *= static_cast<std::size_t>(counts[static_cast<std::size_t>(j)]);
        }
        if (values.size() != total)
            throw std::invalid_argument("field value count does not match the grid");
    }

    std::size_t size() const { return values.size(); }

    double coord(int axis, int i) const {
        return origin[static_cast<std::size_t>(axis)] +
               spacing[static_cast<std::size_t>(axis)] * static_cast<double>(i);
    }
    double axis_max(int axis) const {
        return coord(axis, counts[static_cast<std::size_t>(axis)] - 1);
    }
    double cell_volume() const {
        double v = 1;
        for (int j = 0; j < d; ++j) v *= spacing[static_cast<std::size_t>(j)];
        return v;
    }

    std::size_t index(int i0, int i1 = 0, int i2 = 0) const {
        std::size_t idx = static_cast<std::size_t>(i0);
        if (d > 1) idx = idx * static_cast<std::size_t>(counts[1]) + static_cast<std::size_t>(i1);
        if (d > 2) idx = idx * static_cast<std::size_t>(counts[2]) + static_cast<std::size_t>(i2);
        return idx;
    }

    Complex& at(int i0, int i1 = 0, int i2 = 0) { return values[index(i0, i1, i2)]; }
    const Complex& at(int i0, int i1 = 0, int i2 = 0) const { return values[index(i0, i1, i2)]; }

    /// Samples fn on a symmetric box [-halfwidth, halfwidth]^d with n points
    /// per axis.
    static SampledField sample(int d, double halfwidth, int n,
                               const std::function<Complex(std::span<const double>)>& fn) {
        SampledField f;
        f.d = d;
        std::size_t total = 1;
        for (int j = 0; j < d; ++j) {
            f.origin[static_cast<std::size_t>(j)] = -halfwidth;
            f.counts[static_cast<std::size_t>(j)] = n;
            f.spacing[static_cast<std::size_t>(j)] = 2 * halfwidth / static_cast<double>(n - 1);
            total *= static_cast<std::size_t>(n);
        }
        f.values.resize(total);
        std::array<double, 3> x{};
        std::array<int, 3> idx{};
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::size_t rem = flat;
            for (int j = d - 1; j >= 0; --j) {
                idx[static_cast<std::size_t>(j)] = static_cast<int>(rem % static_cast<std::size_t>(n));
                rem /= static_cast<std::size_t>(n);
            }
            for (int j = 0; j < d; ++j)
                x[static_cast<std::size_t>(j)] = f.coord(j, idx[static_cast<std::size_t>(j)]);
            f.values[flat] = fn(std::span<const double>(x.data(), static_cast<std::size_t>(d)));
        }
        f.validate();
        return f;
    }
};

namespace detail {

struct AxisLocation {
    bool inside = false;
    int cell = 0;       // lower node of the bracketing cell
    double frac = 0.0;  // position within the cell in [0,1]
};

inline AxisLocation locate(const SampledField& f, int axis, double x) {
    double t = (x - f.origin[static_cast<std::size_t>(axis)]) / f.spacing[static_cast<std::size_t>(axis)];
    int n = f.counts[static_cast<std::size_t>(axis)];
    if (t < 0.0 || t > static_cast<double>(n - 1)) return {};
    int cell = static_cast<int>(std::floor(t));
    if (cell > n - 2) cell = n - 2;
    return {true, cell, t - static_cast<double>(cell)};
}

}  // namespace detail

/// Multilinear interpolation inside the box, exactly 0 outside.
inline Complex evaluate(const SampledField& f, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(f.d))
        throw std::invalid_argument("evaluate: point dimension mismatch");
    std::array<detail::AxisLocation, 3> loc;
    for (int j = 0; j < f.d; ++j) {
        loc[static_cast<std::size_t>(j)] = detail::locate(f, j, x[static_cast<std::size_t>(j)]);
        if (!loc[static_cast<std::size_t>(j)].inside) return {0.0, 0.0};
    }
    Complex acc{0, 0};
    int corners = 1 << f.d;
    for (int c = 0; c < corners; ++c) {
        double w = 1;
        std::array<int, 3> idx{};
        for (int j = 0; j < f.d; ++j) {
            const auto& l = loc[static_cast<std::size_t>(j)];
            int hi = (c >> j) & 1;
            w *= hi ? l.frac : 1.0 - l.frac;
            idx[static_cast<std::size_t>(j)] = l.cell + hi;
        }
        if (w != 0.0) acc += w * f.at(idx[0], idx[1], idx[2]);
    }
    return acc;
}

inline Complex evaluate(const SampledField& f, std::initializer_list<double> x) {
    return evaluate(f, std::span<const double>(x.begin(), x.size()));
}

/// One-axis symmetric difference of order r with step u:
///   sum_{k=0}^{r} C(r,k) (-1)^k f(x + (2k - r) u e_axis).
inline Complex one_sided_difference(const SampledField& f, int axis, double u, int r,
                                    std::span<const double> x) {
    if (axis < 0 || axis >= f.d) throw std::invalid_argument("difference axis out of range");
    if (r < 1 || r > 40) throw std::invalid_argument("difference order must be in 1..40");
    if (!(u > 0)) throw std::invalid_argument("difference step must be positive");
    std::array<double, 3> xs{};
    for (int j = 0; j < f.d; ++j) xs[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)];
    Complex acc{0, 0};
    double coeff = 1;  // C(r,k), updated multiplicatively
    for (int k = 0; k <= r; ++k) {
        xs[static_cast<std::size_t>(axis)] =
            x[static_cast<std::size_t>(axis)] + static_cast<double>(2 * k - r) * u;
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        acc += sign * coeff * evaluate(f, std::span<const double>(xs.data(), static_cast<std::size_t>(f.d)));
        coeff = coeff * static_cast<double>(r - k) / static_cast<double>(k + 1);
    }
    return acc;
}

/// Which axes are differenced, at what order, with what steps.
struct DifferenceSpec {
    EtaVector eta;
    int order = 1;
    std::array<double, 3> steps{1, 1, 1};  // used only where eta_j = 1

    DifferenceSpec(EtaVector e, int r, std::array<double, 3> u) : eta(e), order(r), steps(u) {}

    void validate(int field_dim) const {
        if (eta.dim() != field_dim) throw std::invalid_argument("difference eta dimension mismatch");
        if (order < 1) throw std::invalid_argument("difference order must be >= 1");
        for (int j = 0; j < field_dim; ++j)
            if (eta.entry(j) && !(steps[static_cast<std::size_t>(j)] > 0))
                throw std::invalid_argument("difference steps must be positive on differenced axes");
    }
};

/// Composition of one-axis differences over all axes with eta_j = 1;
/// eta = 0 returns f(x) itself.
inline Complex mixed_difference(const SampledField& f, const DifferenceSpec& spec,
                                std::span<const double> x) {
    spec.validate(f.d);
    if (spec.eta.is_zero()) return evaluate(f, x);

    // Expand the composition directly: every differenced axis contributes a
    // (2k_j - r) u_j offset and a C(r,k_j) (-1)^{k_j} weight.
    std::vector<int> axes;
    for (int j = 0; j < f.d; ++j)
        if (spec.eta.entry(j)) axes.push_back(j);

    std::vector<double> binom(static_cast<std::size_t>(spec.order) + 1, 1.0);
    for (int k = 1; k <= spec.order; ++k)
        binom[static_cast<std::size_t>(k)] = binom[static_cast<std::size_t>(k - 1)] *
                                             static_cast<double>(spec.order - k + 1) /
                                             static_cast<double>(k);

    std::array<double, 3> xs{};
    for (int j = 0; j < f.d; ++j) xs[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)];

    std::vector<int> k(axes.size(), 0);
    Complex acc{0, 0};
    while (true) {
        double w = 1;
        for (std::size_t m = 0; m < axes.size(); ++m) {
            int axis = axes[m];
            int km = k[m];
            w *= binom[static_cast<std::size_t>(km)] * ((km % 2 == 0) ? 1.0 : -1.0);
            xs[static_cast<std::size_t>(axis)] =
                x[static_cast<std::size_t>(axis)] +
                static_cast<double>(2 * km - spec.order) * spec.steps[static_cast<std::size_t>(axis)];
        }
        acc += w * evaluate(f, std::span<const double>(xs.data(), static_cast<std::size_t>(f.d)));
        std::size_t m = 0;
        for (; m < k.size(); ++m) {
            if (++k[m] <= spec.order) break;
            k[m] = 0;
        }
        if (m == k.size()) break;
    }
    return acc;
}

/// Trapezoid-weighted grid approximation of (integral |f|^p)^{1/p};
/// p = inf returns max |values|.
inline double lp_norm(const SampledField& f, const Exponent& p) {
    f.validate();
    if (p.is_infinite()) {
        double m = 0;
        for (const Complex& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    double pd = p.as_double();
    auto axis_weight = [&](int axis, int i) {
        return (i == 0 || i == f.counts[static_cast<std::size_t>(axis)] - 1) ? 0.5 : 1.0;
    };
    double sum = 0;
    int n0 = f.counts[0], n1 = f.d > 1 ? f.counts[1] : 1, n2 = f.d > 2 ? f.counts[2] : 1;
    for (int i0 = 0; i0 < n0; ++i0) {
        double w0 = axis_weight(0, i0);
        for (int i1 = 0; i1 < n1; ++i1) {
            double w1 = f.d > 1 ? axis_weight(1, i1) : 1.0;
            for (int i2 = 0; i2 < n2; ++i2) {
                double w2 = f.d > 2 ? axis_weight(2, i2) : 1.0;
                double a = std::abs(f.at(i0, i1, i2));
                if (a != 0.0) sum += w0 * w1 * w2 * std::pow(a, pd);
            }
        }
    }
    return std::pow(sum * f.cell_volume(), 1.0 / pd);
}

/// Second-order finite-difference approximation of D^eta f on the same grid:
/// central in the interior, one-sided (second order) at the boundary.
/// eta = 0 is the identity.
inline SampledField grid_derivative(const SampledField& f, const EtaVector& eta) {
    f.validate();
    if (eta.dim() != f.d) throw std::invalid_argument("grid_derivative: eta dimension mismatch");
    SampledField out = f;
    for (int axis = 0; axis < f.d; ++axis) {
        if (!eta.entry(axis)) continue;
        if (f.counts[static_cast<std::size_t>(axis)] < 5)
            throw std::invalid_argument("grid too small: need >= 5 samples along differentiated axis");
        SampledField next = out;
        double h = f.spacing[static_cast<std::size_t>(axis)];
        int n = f.counts[static_cast<std::size_t>(axis)];
        int n0 = f.counts[0], n1 = f.d > 1 ? f.counts[1] : 1, n2 = f.d > 2 ? f.counts[2] : 1;
        for (int i0 = 0; i0 < n0; ++i0)
            for (int i1 = 0; i1 < n1; ++i1)
                for (int i2 = 0; i2 < n2; ++i2) {
                    std::array<int, 3> idx{i0, i1, i2};
                    int i = idx[static_cast<std::size_t>(axis)];
                    auto shifted = [&](int di) {
                        std::array<int, 3> s = idx;
                        s[static_cast<std::size_t>(axis)] = i + di;
                        return out.at(s[0], s[1], s[2]);
                    };
                    Complex dv;
                    if (i == 0)
                        dv = (-3.0 * shifted(0) + 4.0 * shifted(1) - shifted(2)) / (2 * h);
                    else if (i == n - 1)
                        dv = (3.0 * shifted(0) - 4.0 * shifted(-1) + shifted(-2)) / (2 * h);
                    else
                        dv = (shifted(1) - shifted(-1)) / (2 * h);
                    next.at(i0, i1, i2) = dv;
                }
        out = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Field file format
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

}  // namespace detail

/// Header line "WFIELD d=<d> counts=<n1,..> origin=<o1,..> spacing=<s1,..>
/// kind=<real|complex>" followed by one value per line (two columns for
/// complex), row-major.
inline void write_wfield(const SampledField& f, std::ostream& os) {
    f.validate();
    bool complex_kind = false;
    for (const Complex& v : f.values)
        if (v.imag() != 0.0) {
            complex_kind = true;
            break;
        }
    os << "WFIELD d=" << f.d << " counts=";
    for (int j = 0; j < f.d; ++j) os << (j ? "," : "") << f.counts[static_cast<std::size_t>(j)];
    os << " origin=";
    for (int j = 0; j < f.d; ++j)
        os << (j ? "," : "") << detail::fmt_g17(f.origin[static_cast<std::size_t>(j)]);
    os << " spacing=";
    for (int j = 0; j < f.d; ++j)
        os << (j ? "," : "") << detail::fmt_g17(f.spacing[static_cast<std::size_t>(j)]);
    os << " kind=" << (complex_kind ? "complex" : "real") << "\n";
    for (const Complex& v : f.values) {
        os << detail::fmt_g17(v.real());
        if (complex_kind) os << " " << detail::fmt_g17(v.imag());
        os << "\n";
    }
}

inline void write_wfield(const SampledField& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_wfield(f, os);
}

inline SampledField read_wfield(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("wfield: empty input");
    std::stringstream hs(header);
    std::string magic;
    hs >> magic;
    if (magic != "WFIELD") throw std::runtime_error("wfield: bad magic in header");
    SampledField f;
    bool complex_kind = false;
    std::string tok;
    bool have_d = false, have_counts = false, have_origin = false, have_spacing = false;
    while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::runtime_error("wfield: malformed header token " + tok);
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "d") {
            f.d = std::stoi(val);
            have_d = true;
        } else if (key == "counts") {
            auto parts = detail::split(val, ',');
            for (std::size_t j = 0; j < parts.size() && j < 3; ++j)
                f.counts[j] = std::stoi(parts[j]);
            have_counts = true;
        } else if (key == "origin") {
            auto parts = detail::split(val, ',');
            for (std::size_t j = 0; j < parts.size() && j < 3; ++j)
                f.origin[j] = std::stod(parts[j]);
            have_origin = true;
        } else if (key == "spacing") {
            auto parts = detail::split(val, ',');
            for (std::size_t j = 0; j < parts.size() && j < 3; ++j)
                f.spacing[j] = std::stod(parts[j]);
            have_spacing = true;
        } else if (key == "kind") {
            complex_kind = (val == "complex");
            if (val != "complex" && val != "real")
                throw std::runtime_error("wfield: kind must be real or complex");
        } else {
            throw std::runtime_error("wfield: unknown header key " + key);
        }
    }
    if (!have_d || !have_counts || !have_origin || !have_spacing)
        throw std::runtime_error("wfield: incomplete header");
    if (f.d < 1 || f.d > 3) throw std::runtime_error("wfield: dimension must be 1..3");
    std::size_t total = 1;
    for (int j = 0; j < f.d; ++j) total *= static_cast<std::size_t>(f.counts[static_cast<std::size_t>(j)]);
    f.values.reserve(total);
    std::string line;
    std::size_t line_no = 1;
    while (f.values.size() < total && std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ls(line);
        double re = 0, im = 0;
        if (!(ls >> re)) throw std::runtime_error("wfield: bad value at line " + std::to_string(line_no));
        if (complex_kind && !(ls >> im))
            throw std::runtime_error("wfield: missing imaginary column at line " + std::to_string(line_no));
        f.values.emplace_back(re, im);
    }
    if (f.values.size() != total)
        throw std::runtime_error("wfield: expected " + std::to_string(total) + " values, got " +
                                 std::to_string(f.values.size()));
    f.validate();
    return f;
}

inline SampledField read_wfield(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_wfield(is);
}

/// 1-D import from "t,value" (or "t,re,im") CSV rows; requires uniform spacing.
inline SampledField read_csv_1d(std::istream& is) {
    std::vector<double> ts;
    std::vector<Complex> vs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto parts = detail::split(line, ',');
        if (line_no == 1 && !parts.empty() && (parts[0] == "t" || parts[0] == "x")) continue;
        if (parts.size() < 2)
            throw std::runtime_error("csv: need at least two columns at line " + std::to_string(line_no));
        try {
            double t = std::stod(parts[0]);
            double re = std::stod(parts[1]);
            double im = parts.size() > 2 ? std::stod(parts[2]) : 0.0;
            ts.push_back(t);
            vs.emplace_back(re, im);
        } catch (const std::exception&) {
            throw std::runtime_error("csv: malformed row at line " + std::to_string(line_no));
        }
    }
    if (ts.size() < 2) throw std::runtime_error("csv: need at least two samples");
    double h = ts[1] - ts[0];
    if (!(h > 0)) throw std::runtime_error("csv: abscissae must be strictly increasing");
    for (std::size_t i = 1; i < ts.size(); ++i) {
        double step = ts[i] - ts[i - 1];
        if (std::abs(step - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw std::runtime_error("csv: non-uniform spacing near row " + std::to_string(i + 1));
    }
    SampledField f;
    f.d = 1;
    f.origin[0] = ts[0];
    f.spacing[0] = h;
    f.counts[0] = static_cast<int>(ts.size());
    f.values = std::move(vs);
    f.validate();
    return f;
}

inline SampledField read_csv_1d(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_csv_1d(is);
}

}  // namespace wiener
