#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace polyvert {

// Complex scalar used for every coefficient in the engine.  Values are plain
// double-precision pairs; all verifier equalities are tolerance based.
struct Coeff {
    double re = 0.0;
    double im = 0.0;

    constexpr Coeff() = default;
    constexpr Coeff(double r) : re(r) {}
    constexpr Coeff(double r, double i) : re(r), im(i) {}

    static Coeff from_std(std::complex<double> z) { return {z.real(), z.imag()}; }
    std::complex<double> to_std() const { return {re, im}; }

    bool finite() const { return std::isfinite(re) && std::isfinite(im); }
    double abs() const { return std::hypot(re, im); }
    bool is_zero() const { return re == 0.0 && im == 0.0; }
    Coeff conj() const { return {re, -im}; }
};

inline Coeff operator+(Coeff a, Coeff b) { return {a.re + b.re, a.im + b.im}; }
inline Coeff operator-(Coeff a, Coeff b) { return {a.re - b.re, a.im - b.im}; }
inline Coeff operator-(Coeff a) { return {-a.re, -a.im}; }
inline Coeff operator*(Coeff a, Coeff b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Coeff operator*(double s, Coeff a) { return {s * a.re, s * a.im}; }
inline Coeff& operator+=(Coeff& a, Coeff b) { a = a + b; return a; }
inline Coeff& operator-=(Coeff& a, Coeff b) { a = a - b; return a; }
inline Coeff& operator*=(Coeff& a, Coeff b) { a = a * b; return a; }

inline Coeff operator/(Coeff a, Coeff b) {
    if (b.is_zero()) throw std::domain_error("Coeff division by zero");
    Coeff q = Coeff::from_std(a.to_std() / b.to_std());
    if (!q.finite()) throw std::domain_error("Coeff division produced a non-finite value");
    return q;
}

inline double abs(Coeff a) { return a.abs(); }

inline Coeff pow_int(Coeff a, std::int64_t k) {
    if (k < 0) return Coeff(1.0) / pow_int(a, -k);
    Coeff acc(1.0);
    Coeff base = a;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

inline Coeff sqrt(Coeff a) { return Coeff::from_std(std::sqrt(a.to_std())); }

inline bool approx_eq(Coeff a, Coeff b, double eps) { return (a - b).abs() <= eps; }

// Comparison-tolerance policy shared by every verifier:
// eps_eq for coefficient equality, eps_residual for series residual norms.
struct Tolerance {
    double eps_eq = 1e-10;
    double eps_residual = 1e-9;

    Tolerance() = default;
    Tolerance(double eq, double residual) : eps_eq(eq), eps_residual(residual) {
        if (!(eq > 0.0) || !(residual > 0.0))
            throw std::domain_error("Tolerance thresholds must be strictly positive");
    }
};

// Exact rational, used for fractional powers and binomial arguments.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d);

    bool is_integer() const { return den == 1; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Rational operator+(Rational a, Rational b);
Rational operator-(Rational a, Rational b);
Rational operator*(Rational a, Rational b);
inline Rational operator-(Rational a) { return Rational(-a.num, a.den); }
inline bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }

// p together with the fixed primitive root of unity and the fixed p-th root
// gamma_p of (-p*c_{p+1})^{-1}.
struct RootData {
    std::int64_t p = 1;
    Coeff zeta_p{1.0};
    Coeff gamma_p{1.0};
};

// e^{2*pi*i/p}; the remaining p-th roots of unity are its powers.
Coeff root_of_unity(std::int64_t p);

// Principal p-th root (argument in (-pi/p, pi/p]) of (-p*c_p1)^{-1}.
// The full root set is gamma * zeta_p^l for 0 <= l < p.
Coeff gamma_root(Coeff c_p1, std::int64_t p);

RootData make_root_data(std::int64_t p, Coeff c_p1);

// Generalized binomial coefficient m(m-1)...(m-i+1)/i!, evaluated in exact
// 128-bit rational arithmetic while it fits, then converted to Coeff.
Coeff binom(Rational m, std::int64_t i);

}  // namespace polyvert
