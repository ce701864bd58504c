#include "polyvert/coeff.hpp"

#include <numbers>
#include <numeric>

namespace polyvert {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    return std::gcd(a, b);
}

using int128 = __int128;

int128 abs128(int128 v) { return v < 0 ? -v : v; }

int128 gcd128(int128 a, int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr int128 kLimit = int128(1) << 120;

bool mul_would_overflow(int128 a, int128 b) {
    if (a == 0 || b == 0) return false;
    return abs128(a) > kLimit / abs128(b);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("Rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = gcd64(n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

Rational operator+(Rational a, Rational b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}

Rational operator-(Rational a, Rational b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
}

Rational operator*(Rational a, Rational b) {
    return Rational(a.num * b.num, a.den * b.den);
}

Coeff root_of_unity(std::int64_t p) {
    if (p < 1) throw std::domain_error("root_of_unity: p must be a positive integer");
    if (p == 1) return Coeff(1.0);
    const double theta = 2.0 * std::numbers::pi / static_cast<double>(p);
    return {std::cos(theta), std::sin(theta)};
}

Coeff gamma_root(Coeff c_p1, std::int64_t p) {
    if (p < 1) throw std::domain_error("gamma_root: p must be a positive integer");
    if (c_p1.is_zero()) throw std::domain_error("gamma_root: c_{p+1} != 0 required");
    const Coeff w = Coeff(1.0) / (Coeff(static_cast<double>(-p)) * c_p1);
    const double r = std::pow(w.abs(), 1.0 / static_cast<double>(p));
    const double theta = std::atan2(w.im, w.re) / static_cast<double>(p);
    Coeff g{r * std::cos(theta), r * std::sin(theta)};
    if (!g.finite()) throw std::domain_error("gamma_root: non-finite result");
    return g;
}

RootData make_root_data(std::int64_t p, Coeff c_p1) {
    return {p, root_of_unity(p), gamma_root(c_p1, p)};
}

Coeff binom(Rational m, std::int64_t i) {
    if (i < 0) return Coeff(0.0);
    int128 num = 1;
    int128 den = 1;
    for (std::int64_t k = 0; k < i; ++k) {
        int128 fn = int128(m.num) - int128(k) * int128(m.den);
        int128 fd = int128(m.den) * int128(k + 1);
        int128 g = gcd128(fn, den);
        if (g > 1) { fn /= g; den /= g; }
        g = gcd128(num, fd);
        if (g > 1) { num /= g; fd /= g; }
        if (mul_would_overflow(num, fn) || mul_would_overflow(den, fd)) {
            // Beyond 128-bit range: finish with a long-double product, which
            // has no cancellation (pure multiplications).
            long double acc = static_cast<long double>(num) / static_cast<long double>(den);
            const long double mv = static_cast<long double>(m.num) / static_cast<long double>(m.den);
            for (std::int64_t j = k; j < i; ++j)
                acc *= (mv - static_cast<long double>(j)) / static_cast<long double>(j + 1);
            return Coeff(static_cast<double>(acc));
        }
        num *= fn;
        den *= fd;
    }
    return Coeff(static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den)));
}

}  // namespace polyvert
