#pragma once

#include "wiener/rational.hpp"

#include <compare>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wiener {

/// A Lebesgue integrability exponent: an exact rational in [1, inf) or the
/// distinguished value inf. reciprocal(inf) == 0 exactly, and the conjugate
/// pairing 1/p + 1/p' = 1 holds in rational arithmetic.
class Exponent {
public:
    Exponent() : finite_(1) {}

    static Exponent finite(Rational v) {
        if (v < 1) throw std::invalid_argument("exponent must be >= 1, got " + format_rational(v));
        Exponent e;
        e.finite_ = std::move(v);
        return e;
    }
    static Exponent finite(long long num, long long den = 1) {
        return finite(make_rational(num, den));
    }
    static Exponent infinity() {
        Exponent e;
        e.finite_.reset();
        return e;
    }

    bool is_infinite() const { return !finite_.has_value(); }
    bool is_finite() const { return finite_.has_value(); }

    const Rational& finite_value() const {
        if (!finite_) throw std::logic_error("finite_value() on infinite exponent");
        return *finite_;
    }

    /// 1/p as an exact rational; 0 for p = inf.
    Rational reciprocal() const {
        if (!finite_) return Rational(0);
        return Rational(1) / *finite_;
    }

    /// p' with 1/p + 1/p' = 1; conjugate(1) = inf, conjugate(inf) = 1.
    Exponent conjugate() const {
        if (!finite_) return finite(Rational(1));
        if (*finite_ == 1) return infinity();
        return finite(*finite_ / (*finite_ - 1));
    }

    double as_double() const {
        return finite_ ? to_double(*finite_) : std::numeric_limits<double>::infinity();
    }

    std::string str() const { return finite_ ? format_rational(*finite_) : "inf"; }

    friend bool operator==(const Exponent& a, const Exponent& b) {
        if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
        return *a.finite_ == *b.finite_;
    }
    friend bool operator<(const Exponent& a, const Exponent& b) {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        return *a.finite_ < *b.finite_;
    }
    friend bool operator>(const Exponent& a, const Exponent& b) { return b < a; }
    friend bool operator<=(const Exponent& a, const Exponent& b) { return !(b < a); }
    friend bool operator>=(const Exponent& a, const Exponent& b) { return !(a < b); }
    friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }

private:
    std::optional<Rational> finite_;  // empty = inf
};

/// Accepts "inf" (case-insensitive), "num/den", integers, and finite decimals.
inline Exponent parse_exponent(std::string_view text) {
    if (text == "inf" || text == "Inf" || text == "INF" || text == "oo") return Exponent::infinity();
    return Exponent::finite(parse_rational(text));
}

}  // namespace wiener
