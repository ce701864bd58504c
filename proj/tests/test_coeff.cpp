#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "polyvert/coeff.hpp"

using namespace polyvert;

namespace {
bool close(Coeff a, Coeff b, double eps = 1e-12) { return (a - b).abs() <= eps; }
}  // namespace

TEST_CASE("root_of_unity basic values") {
    CHECK(close(root_of_unity(1), Coeff(1.0)));
    CHECK(close(root_of_unity(4), Coeff(0.0, 1.0)));
    // e^{2 pi i / 3} = -1/2 + (sqrt 3 / 2) i
    CHECK(close(root_of_unity(3), Coeff(-0.5, std::sqrt(3.0) / 2.0)));
    CHECK_THROWS_AS(root_of_unity(0), std::domain_error);
}

TEST_CASE("root_of_unity is primitive for p <= 12") {
    for (std::int64_t p = 1; p <= 12; ++p) {
        const Coeff z = root_of_unity(p);
        Coeff pw(1.0);
        for (std::int64_t k = 1; k < p; ++k) {
            pw *= z;
            CHECK((pw - Coeff(1.0)).abs() > 1e-10);
        }
        pw *= z;
        CHECK(close(pw, Coeff(1.0), 1e-10));
    }
}

TEST_CASE("gamma_root examples and invariant") {
    CHECK(close(gamma_root(Coeff(-0.5), 2), Coeff(1.0)));
    CHECK(close(gamma_root(Coeff(-1.0), 1), Coeff(1.0)));
    CHECK(close(gamma_root(Coeff(1.0), 1), Coeff(-1.0)));
    CHECK_THROWS_AS(gamma_root(Coeff(0.0), 2), std::domain_error);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        Coeff c(u(rng), u(rng));
        if (c.abs() < 0.05) c = Coeff(1.0);
        for (std::int64_t p = 1; p <= 6; ++p) {
            const Coeff g = gamma_root(c, p);
            const Coeff check = pow_int(g, p) * Coeff(static_cast<double>(-p)) * c;
            CHECK(close(check, Coeff(1.0), 1e-10));
        }
    }
}

TEST_CASE("gamma_root principal-branch argument") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        Coeff c(u(rng), u(rng));
        if (c.abs() < 0.05) c = Coeff(1.0);
        for (std::int64_t p = 2; p <= 5; ++p) {
            const Coeff g = gamma_root(c, p);
            const double arg = std::atan2(g.im, g.re);
            const double pi = 3.14159265358979323846;
            CHECK(arg > -pi / p - 1e-12);
            CHECK(arg <= pi / p + 1e-12);
        }
    }
}

TEST_CASE("binom examples") {
    CHECK(close(binom(Rational(-1), 3), Coeff(-1.0)));
    CHECK(close(binom(Rational(-1, 2), 1), Coeff(-0.5)));
    CHECK(close(binom(Rational(-1, 2), 2), Coeff(3.0 / 8.0)));
    CHECK(close(binom(Rational(5), 2), Coeff(10.0)));
    CHECK(close(binom(Rational(0), 0), Coeff(1.0)));
}

TEST_CASE("binom Pascal recurrence and vanishing") {
    for (std::int64_t m = -6; m <= 8; ++m)
        for (std::int64_t i = 1; i <= 10; ++i) {
            const Coeff lhs = binom(Rational(m), i);
            const Coeff rhs = binom(Rational(m - 1), i) + binom(Rational(m - 1), i - 1);
            CHECK(close(lhs, rhs));
        }
    for (std::int64_t n = 0; n <= 6; ++n)
        for (std::int64_t i = n + 1; i <= n + 4; ++i)
            CHECK(binom(Rational(n), i).abs() == 0.0);
}

TEST_CASE("binom deep index falls back without blowing up") {
    // Beyond exact 128-bit range the long-double product takes over.
    const Coeff v = binom(Rational(-1, 4), 60);
    CHECK(v.finite());
    // |binom(-1/4, i)| decreases in i.
    CHECK(v.abs() < binom(Rational(-1, 4), 10).abs());
    // Consistency with the stepwise recurrence binom(m,i+1)=binom(m,i)(m-i)/(i+1).
    const Coeff a = binom(Rational(-1, 4), 59);
    const Coeff ratio = Coeff((-0.25 - 59.0) / 60.0);
    CHECK((v - a * ratio).abs() <= 1e-14);
}

TEST_CASE("Coeff arithmetic guards") {
    CHECK_THROWS_AS(Coeff(1.0) / Coeff(0.0), std::domain_error);
    CHECK_THROWS_AS(Tolerance(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(Tolerance(1e-10, -1.0), std::domain_error);
    const Tolerance t;
    CHECK(t.eps_eq == 1e-10);
    CHECK(t.eps_residual == 1e-9);
}

TEST_CASE("RootData invariants") {
    const RootData rd = make_root_data(3, Coeff(-1.0, 0.5));
    CHECK(close(pow_int(rd.zeta_p, 3), Coeff(1.0), 1e-10));
    const Coeff w = Coeff(1.0) / (Coeff(-3.0) * Coeff(-1.0, 0.5));
    CHECK(close(pow_int(rd.gamma_p, 3), w, 1e-10));
}

TEST_CASE("Rational normalization") {
    const Rational r(6, -4);
    CHECK(r.num == -3);
    CHECK(r.den == 2);
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK((Rational(1, 2) * Rational(2, 3)) == Rational(1, 3));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}
