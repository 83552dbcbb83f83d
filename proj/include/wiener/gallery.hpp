#pragma once

#include "wiener/detail/jet.hpp"
#include "wiener/eta.hpp"
#include "wiener/exponent.hpp"
#include "wiener/rational.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wiener {

// ---------------------------------------------------------------------------
// Smooth radial cutoff
// ---------------------------------------------------------------------------

namespace detail {

/// exp(-1/s) partition-of-unity transition: 0 at s<=0, 1 at s>=1, C-infinity.
inline Jet3<double> transition_jet(double s) {
    // Below ~1e-12 the exp(-1/s) factor is zero to double precision and the
    // derivative products would hit 0*inf; clamp to the exact constant jets.
    constexpr double kEdge = 1e-12;
    if (s <= kEdge) return Jet3<double>::constant(0.0);
    if (s >= 1.0 - kEdge) return Jet3<double>::constant(1.0);
    Jet3<double> sj = Jet3<double>::variable(s);
    Jet3<double> e0 = exp(Jet3<double>{0, 0, 0, 0} - reciprocal(sj));
    Jet3<double> om = Jet3<double>::constant(1.0) - sj;
    Jet3<double> e1 = exp(Jet3<double>{0, 0, 0, 0} - reciprocal(om));
    return e0 / (e0 + e1);
}

}  // namespace detail

/// theta(t): 0 for t <= a, 1 for t >= b, smooth monotone transition between.
inline double cutoff_theta(double t, double a, double b) {
    if (!(0 < a && a < b)) throw std::invalid_argument("cutoff requires 0 < a < b");
    if (t <= a) return 0.0;
    if (t >= b) return 1.0;
    return detail::transition_jet((t - a) / (b - a)).f;
}

/// theta with its first three derivatives in t.
inline detail::Jet3<double> cutoff_theta_jet(double t, double a, double b) {
    if (!(0 < a && a < b)) throw std::invalid_argument("cutoff requires 0 < a < b");
    if (t <= a) return detail::Jet3<double>::constant(0.0);
    if (t >= b) return detail::Jet3<double>::constant(1.0);
    double w = b - a;
    detail::Jet3<double> psi = detail::transition_jet((t - a) / w);
    return {psi.f, psi.d1 / w, psi.d2 / (w * w), psi.d3 / (w * w * w)};
}

// ---------------------------------------------------------------------------
// The oscillating model family
// ---------------------------------------------------------------------------

enum class MembershipStatus { in_A, not_in_A, boundary_unknown };

inline std::string to_string(MembershipStatus s) {
    switch (s) {
        case MembershipStatus::in_A: return "in_A";
        case MembershipStatus::not_in_A: return "not_in_A";
        case MembershipStatus::boundary_unknown: return "boundary_unknown";
    }
    return "?";
}

/// Parameters of m(x) = theta(|x|) * exp(i|x|^alpha) / |x|^beta with a radial
/// smooth cutoff vanishing on |x| <= a and equal to 1 on |x| >= b.
/// alpha and beta are kept as exact rationals so the membership classification
/// and integrability ranges are decided exactly.
struct ModelParams {
    Rational alpha;
    Rational beta;
    int d = 1;
    double cutoff_inner = 1.0;  // a
    double cutoff_outer = 2.0;  // b

    void validate() const {
        if (d < 1 || d > 3) throw std::invalid_argument("model dimension must be 1..3");
        if (alpha <= 0 || beta <= 0) throw std::invalid_argument("alpha, beta must be positive");
        if (!(0 < cutoff_inner && cutoff_inner < cutoff_outer))
            throw std::invalid_argument("cutoff requires 0 < a < b");
    }
};

struct MClassification {
    MembershipStatus status;
    std::string decided_by;  // "statement-I", "statement-II", "alpha1-d1-remark"
};

/// Membership of m in A(R^d), decided exactly from (d, beta/alpha):
///   beta/alpha > d/2  -> in_A
///   beta/alpha <= d/2 -> not_in_A, except d = 1 with alpha = 1 where the
///   oscillation is a half-line modulation and membership still holds; that
///   case carries its own decided_by tag since the main dichotomy excludes it.
inline MClassification classify_m(const ModelParams& p) {
    p.validate();
    Rational ratio = p.beta / p.alpha;
    Rational half_d(p.d, 2);
    if (ratio > half_d) return {MembershipStatus::in_A, "statement-I"};
    if (p.d >= 2 || p.alpha != 1) return {MembershipStatus::not_in_A, "statement-II"};
    return {MembershipStatus::in_A, "alpha1-d1-remark"};
}

inline std::complex<double> evaluate_m(const ModelParams& p, std::span<const double> x) {
    p.validate();
    if (x.size() != static_cast<std::size_t>(p.d))
        throw std::invalid_argument("evaluate_m: point dimension mismatch");
    double rho2 = 0;
    for (double c : x) rho2 += c * c;
    double rho = std::sqrt(rho2);
    if (rho <= p.cutoff_inner) return {0.0, 0.0};
    double a = to_double(p.alpha), b = to_double(p.beta);
    double th = cutoff_theta(rho, p.cutoff_inner, p.cutoff_outer);
    double phase = std::pow(rho, a);
    return th * std::pow(rho, -b) * std::complex<double>(std::cos(phase), std::sin(phase));
}

namespace detail {

/// Radial profile g(rho) = theta(rho) e^{i rho^alpha} rho^{-beta} with three
/// derivatives.
inline Jet3<std::complex<double>> m_profile_jet(const ModelParams& p, double rho) {
    Jet3<double> rj = Jet3<double>::variable(rho);
    Jet3<double> th = cutoff_theta_jet(rho, p.cutoff_inner, p.cutoff_outer);
    Jet3<double> ph = pow(rj, to_double(p.alpha));
    Jet3<std::complex<double>> iph = std::complex<double>(0, 1) * to_complex(ph);
    Jet3<std::complex<double>> osc = exp(iph);
    Jet3<double> amp = pow(rj, -to_double(p.beta));
    return to_complex(th) * osc * to_complex(amp);
}

}  // namespace detail

/// Closed-form mixed partial D^eta m. For distinct differentiated axes the
/// derivative is (prod_{eta_j=1} x_j) * h_k(rho) where h_1 = g'/rho and
/// h_{k+1} = h_k'/rho.
inline std::complex<double> m_derivative(const ModelParams& p, const EtaVector& eta,
                                         std::span<const double> x) {
    p.validate();
    if (eta.dim() != p.d) throw std::invalid_argument("m_derivative: eta dimension mismatch");
    if (eta.is_zero()) return evaluate_m(p, x);
    double rho2 = 0;
    for (double c : x) rho2 += c * c;
    double rho = std::sqrt(rho2);
    if (rho <= p.cutoff_inner) return {0.0, 0.0};
    auto g = detail::m_profile_jet(p, rho);
    int k = eta.weight();
    std::complex<double> h;
    double r3 = rho * rho * rho;
    switch (k) {
        case 1: h = g.d1 / rho; break;
        case 2: h = g.d2 / (rho * rho) - g.d1 / r3; break;
        case 3: h = g.d3 / r3 - 3.0 * g.d2 / (r3 * rho) + 3.0 * g.d1 / (r3 * rho * rho); break;
        default: throw std::invalid_argument("m_derivative supports |eta| <= 3");
    }
    std::complex<double> out = h;
    for (int j = 0; j < p.d; ++j)
        if (eta.entry(j)) out *= x[static_cast<std::size_t>(j)];
    return out;
}

// ---------------------------------------------------------------------------
// Integrability ranges and the counterexample constructor
// ---------------------------------------------------------------------------

/// {q in [1,inf) : q * coefficient > d}, i.e. q > threshold, or empty when the
/// profile does not decay.
struct LebesgueRange {
    bool empty = true;
    Rational threshold;  // valid when !empty; membership iff q > threshold

    bool contains(const Rational& q) const { return !empty && q > threshold; }
};

/// Exact L^p range of D^eta m from the envelope |D^eta m| ~ |x|^{|eta|(alpha-1)-beta}.
/// Exposed for |eta| = 0 and |eta| = d only; intermediate derivatives of the
/// model do not have freely prescribable ranges.
inline LebesgueRange m_hypothesis_exponents(const ModelParams& p, const EtaVector& eta) {
    p.validate();
    if (eta.dim() != p.d) throw std::invalid_argument("eta dimension mismatch");
    int w = eta.weight();
    if (w != 0 && w != p.d)
        throw std::invalid_argument("integrability range exposed only for |eta| in {0, d}");
    Rational coeff = p.beta - Rational(w) * (p.alpha - 1);
    if (coeff <= 0) return {};
    return {false, Rational(p.d) / coeff};
}

/// Given 1/p + 1/q < 1, returns exact rational (alpha, beta) with
/// p*beta > 1, q*(beta - alpha + 1) > 1, beta/alpha < 1/2.
/// Deterministic choice: 2*beta - alpha + 1 is pinned to the midpoint of
/// (1/p + 1/q, 1); beta is the smallest rational with denominator <= 64 in the
/// admissible open interval (widening the bound only if the interval is too
/// narrow, and skipping the single point that would force alpha = 1).
inline std::pair<Rational, Rational> construct_counterexample_params(const Exponent& p,
                                                                     const Exponent& q) {
    if (!p.is_finite() || p.finite_value() < 1)
        throw std::invalid_argument("counterexample: need 1 <= p < inf");
    if (!q.is_finite() || q.finite_value() <= 1)
        throw std::invalid_argument("counterexample: need 1 < q < inf");
    Rational s = p.reciprocal() + q.reciprocal();
    if (s >= 1) throw std::domain_error("no counterexample in this region (1/p + 1/q >= 1)");

    Rational mid = (s + 1) / 2;                // = 2*beta - alpha + 1
    Rational lo = p.reciprocal();              // beta > 1/p
    Rational hi = mid - q.reciprocal();        // beta < mid - 1/q
    Rational forbidden = mid / 2;              // beta = mid/2 would give alpha = 1

    for (long long dmax = 64;; dmax *= 2) {
        std::optional<Rational> best;
        for (long long den = 1; den <= dmax; ++den) {
            BigInt n = rational_floor(lo * den) + 1;
            for (int step = 0; step < 2; ++step, ++n) {
                Rational cand(n, BigInt(den));
                if (cand <= lo || cand >= hi) continue;
                if (cand == forbidden) continue;
                if (!best || cand < *best) best = cand;
            }
        }
        if (best) {
            Rational beta = *best;
            Rational alpha = 2 * beta + 1 - mid;
            return {alpha, beta};
        }
        if (dmax > (1LL << 40))
            throw std::logic_error("counterexample search failed to terminate");
    }
}

// ---------------------------------------------------------------------------
// Named gallery
// ---------------------------------------------------------------------------

struct GalleryFunction {
    std::string name;
    int d = 1;
    std::function<std::complex<double>(std::span<const double>)> value;
    std::function<std::complex<double>(const EtaVector&, std::span<const double>)> derivative;
    MembershipStatus known_status = MembershipStatus::boundary_unknown;
    std::string decided_by;
    std::optional<ModelParams> m_params;
    double suggested_halfwidth = 8.0;  // natural sampling box for this function

    std::complex<double> operator()(std::span<const double> x) const { return value(x); }
};

namespace detail {

inline double hat1(double t) { return std::max(0.0, 1.0 - std::abs(t)); }
inline double hat1_deriv(double t) {
    if (t == 0.0 || std::abs(t) >= 1.0) return 0.0;
    return t > 0 ? -1.0 : 1.0;
}

inline GalleryFunction make_separable(std::string name, int d,
                                      std::function<double(double)> f1,
                                      std::function<double(double)> df1,
                                      double halfwidth) {
    GalleryFunction g;
    g.name = std::move(name);
    g.d = d;
    g.known_status = MembershipStatus::in_A;
    g.decided_by = "nonnegative-transform";
    g.suggested_halfwidth = halfwidth;
    g.value = [f1, d](std::span<const double> x) {
        double v = 1;
        for (int j = 0; j < d; ++j) v *= f1(x[static_cast<std::size_t>(j)]);
        return std::complex<double>(v, 0);
    };
    g.derivative = [f1, df1, d](const EtaVector& eta, std::span<const double> x) {
        if (eta.dim() != d) throw std::invalid_argument("derivative: eta dimension mismatch");
        double v = 1;
        for (int j = 0; j < d; ++j) {
            double t = x[static_cast<std::size_t>(j)];
            v *= eta.entry(j) ? df1(t) : f1(t);
        }
        return std::complex<double>(v, 0);
    };
    return g;
}

inline ModelParams parse_model_spec(const std::string& spec, int d) {
    ModelParams p;
    p.d = d;
    std::string body = spec.substr(2);  // after "m:"
    std::stringstream ss(body);
    std::string item;
    bool have_alpha = false, have_beta = false;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad model parameter: '" + item + "'");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        if (key == "alpha") {
            p.alpha = parse_rational(val);
            have_alpha = true;
        } else if (key == "beta") {
            p.beta = parse_rational(val);
            have_beta = true;
        } else if (key == "a") {
            p.cutoff_inner = std::stod(val);
        } else if (key == "b") {
            p.cutoff_outer = std::stod(val);
        } else {
            throw std::invalid_argument("unknown model parameter key: '" + key + "'");
        }
    }
    if (!have_alpha || !have_beta)
        throw std::invalid_argument("model spec needs alpha= and beta=");
    p.validate();
    return p;
}

}  // namespace detail

/// Looks up a closed-form test function by name:
///   "gaussian", "hat"           (1-D)
///   "gaussian_nd", "hat_nd"     (separable, dimension from `d`)
///   "m:alpha=2,beta=2.5,a=1,b=2" (oscillating model, dimension from `d`)
inline GalleryFunction make_gallery(const std::string& name, int d = 1) {
    auto gauss = [](double t) { return std::exp(-t * t); };
    auto dgauss = [](double t) { return -2.0 * t * std::exp(-t * t); };
    if (name == "gaussian") return detail::make_separable("gaussian", 1, gauss, dgauss, 8.0);
    if (name == "gaussian_nd")
        return detail::make_separable("gaussian_nd", d, gauss, dgauss, 8.0);
    if (name == "hat") return detail::make_separable("hat", 1, detail::hat1, detail::hat1_deriv, 2.0);
    if (name == "hat_nd")
        return detail::make_separable("hat_nd", d, detail::hat1, detail::hat1_deriv, 2.0);
    if (name.rfind("m:", 0) == 0) {
        ModelParams p = detail::parse_model_spec(name, d);
        GalleryFunction g;
        g.name = name;
        g.d = d;
        g.m_params = p;
        auto cls = classify_m(p);
        g.known_status = cls.status;
        g.decided_by = cls.decided_by;
        g.suggested_halfwidth = std::max(8.0, 4.0 * p.cutoff_outer);
        g.value = [p](std::span<const double> x) { return evaluate_m(p, x); };
        g.derivative = [p](const EtaVector& eta, std::span<const double> x) {
            return m_derivative(p, eta, x);
        };
        return g;
    }
    throw std::invalid_argument("unknown gallery function: '" + name + "'");
}

}  // namespace wiener
