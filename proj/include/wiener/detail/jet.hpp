#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace wiener::detail {

/// Value plus first three derivatives with respect to one scalar parameter.
/// Enough truncated-Taylor algebra to differentiate radial profiles g(rho)
/// three times without symbolic expansion.
template <class T>
struct Jet3 {
    T f{}, d1{}, d2{}, d3{};

    static Jet3 constant(T v) { return {v, T{}, T{}, T{}}; }
    static Jet3 variable(T v) { return {v, T(1), T{}, T{}}; }
};

template <class T>
Jet3<T> operator+(const Jet3<T>& a, const Jet3<T>& b) {
    return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

template <class T>
Jet3<T> operator-(const Jet3<T>& a, const Jet3<T>& b) {
    return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

template <class T>
Jet3<T> operator*(const Jet3<T>& a, const Jet3<T>& b) {
    // Leibniz up to third order.
    return {a.f * b.f,
            a.d1 * b.f + a.f * b.d1,
            a.d2 * b.f + T(2) * a.d1 * b.d1 + a.f * b.d2,
            a.d3 * b.f + T(3) * a.d2 * b.d1 + T(3) * a.d1 * b.d2 + a.f * b.d3};
}

template <class T, class S>
Jet3<T> operator*(S s, const Jet3<T>& a) {
    return {T(s) * a.f, T(s) * a.d1, T(s) * a.d2, T(s) * a.d3};
}

/// phi(u) for analytic phi with derivative values phi_k = phi^(k)(u.f).
template <class T>
Jet3<T> compose(const std::array<T, 4>& phi, const Jet3<T>& u) {
    return {phi[0],
            phi[1] * u.d1,
            phi[2] * u.d1 * u.d1 + phi[1] * u.d2,
            phi[3] * u.d1 * u.d1 * u.d1 + T(3) * phi[2] * u.d1 * u.d2 + phi[1] * u.d3};
}

template <class T>
Jet3<T> reciprocal(const Jet3<T>& u) {
    T i0 = T(1) / u.f;
    return compose<T>({i0, -i0 * i0, T(2) * i0 * i0 * i0, T(-6) * i0 * i0 * i0 * i0}, u);
}

template <class T>
Jet3<T> operator/(const Jet3<T>& a, const Jet3<T>& b) {
    return a * reciprocal(b);
}

inline Jet3<double> exp(const Jet3<double>& u) {
    double e = std::exp(u.f);
    return compose<double>({e, e, e, e}, u);
}

inline Jet3<std::complex<double>> exp(const Jet3<std::complex<double>>& u) {
    std::complex<double> e = std::exp(u.f);
    return compose<std::complex<double>>({e, e, e, e}, u);
}

/// u^g for u.f > 0 and real g.
inline Jet3<double> pow(const Jet3<double>& u, double g) {
    double p0 = std::pow(u.f, g);
    double p1 = g * std::pow(u.f, g - 1);
    double p2 = g * (g - 1) * std::pow(u.f, g - 2);
    double p3 = g * (g - 1) * (g - 2) * std::pow(u.f, g - 3);
    return compose<double>({p0, p1, p2, p3}, u);
}

template <class T>
Jet3<std::complex<double>> to_complex(const Jet3<T>& u) {
    return {std::complex<double>(u.f), std::complex<double>(u.d1), std::complex<double>(u.d2),
            std::complex<double>(u.d3)};
}

}  // namespace wiener::detail
