#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wiener {

/// Arbitrary-precision integer and exact rational used by every decision rule.
/// All criterion verdicts are computed in this arithmetic; doubles appear only
/// in the sampled/numerical modules.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Largest integer n with n <= r.
inline BigInt rational_floor(const Rational& r) {
    BigInt n = numerator(r), d = denominator(r);  // d > 0 by normalization
    BigInt q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

/// Parses "7/3", "-2", or a finite decimal like "2.5" / "0.05".
inline Rational parse_rational(std::string_view text) {
    auto fail = [&] {
        throw std::invalid_argument("cannot parse rational: '" + std::string(text) + "'");
    };
    if (text.empty()) fail();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string num(text.substr(0, slash)), den(text.substr(slash + 1));
        if (num.empty() || den.empty()) fail();
        try {
            BigInt n(num), d(den);
            if (d == 0) fail();
            return Rational(n, d);
        } catch (const std::exception&) {
            fail();
        }
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string ip(text.substr(0, dot)), fp(text.substr(dot + 1));
        if (fp.empty()) fail();
        for (char c : fp)
            if (c < '0' || c > '9') fail();
        bool neg = !ip.empty() && ip[0] == '-';
        if (ip == "-" || ip == "+") ip += "0";
        if (ip.empty()) ip = "0";
        try {
            BigInt whole(ip);
            BigInt scale = 1;
            for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
            BigInt frac(fp);
            BigInt n = whole * scale + (neg ? -frac : frac);
            if (neg && whole == 0) n = -frac;
            return Rational(n, scale);
        } catch (const std::exception&) {
            fail();
        }
    }
    try {
        return Rational(BigInt(std::string(text)));
    } catch (const std::exception&) {
        fail();
    }
    return Rational();  // unreachable
}

/// Canonical form: integer when the denominator is 1, "num/den" otherwise.
inline std::string format_rational(const Rational& r) {
    BigInt n = numerator(r), d = denominator(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (int i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;
    }
    return result;
}

}  // namespace wiener
