#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <random>

#include "doctest.h"
#include "polyvert/axioms.hpp"
#include "polyvert/modules.hpp"

using namespace polyvert;

TEST_CASE("untwisted n=1, alpha=beta=0, c=1: T = -x^{-1}") {
    const auto mod = construct_untwisted(1, Coeff(0.0), Coeff(0.0), Coeff(1.0), 20);
    CHECK(mod.T.lo() == -1);
    CHECK(mod.T.mode_num(-1).at(0, 0).re == doctest::Approx(-1.0));
    for (std::int64_t k = 0; k <= 10; ++k) CHECK(mod.T.mode_num(k).max_abs() <= 1e-14);
    CHECK((mod.gamma - Coeff(-1.0)).abs() <= 1e-12);
}

TEST_CASE("untwisted n=2, alpha=beta=0, c=1: T = -x^{-1}E - x^{-2}J") {
    const auto mod = construct_untwisted(2, Coeff(0.0), Coeff(0.0), Coeff(1.0), 20);
    CHECK(mod.T.lo() == -2);
    CHECK(mod.T.mode_num(-1).at(0, 0).re == doctest::Approx(-1.0));
    CHECK(mod.T.mode_num(-1).at(1, 1).re == doctest::Approx(-1.0));
    CHECK(mod.T.mode_num(-2).at(0, 1).re == doctest::Approx(-1.0));
    CHECK(mod.T.mode_num(-2).at(0, 0).abs() <= 1e-14);
}

TEST_CASE("untwisted n=1, alpha=1, beta=0, c=1: expansion and ODE residual") {
    const auto mod = construct_untwisted(1, Coeff(1.0), Coeff(0.0), Coeff(1.0), 12);
    // T = 1 + (-1+exp(-x))^{-1} = -x^{-1} + 1/2 - x/12 + ...
    CHECK(mod.T.mode_num(-1).at(0, 0).re == doctest::Approx(-1.0));
    CHECK(mod.T.mode_num(0).at(0, 0).re == doctest::Approx(0.5));
    CHECK(mod.T.mode_num(1).at(0, 0).re == doctest::Approx(-1.0 / 12.0));
    const auto rep = check_lemma_conditions(mod.T, mod.f, 1);
    CHECK(rep.condition_iii <= 1e-9);
}

TEST_CASE("untwisted lowest degree is -n") {
    const std::vector<std::array<Coeff, 3>> params = {
        {Coeff(0.0), Coeff(0.0), Coeff(1.0)},
        {Coeff(2.0), Coeff(2.0), Coeff(-1.0)},
        {Coeff(1.0), Coeff(0.0), Coeff(1.0)},
        {Coeff(1.0, 1.0), Coeff(-2.0), Coeff(0.0, 0.5)},
    };
    for (std::int64_t n = 1; n <= 5; ++n)
        for (const auto& pr : params) {
            const auto mod = construct_untwisted(n, pr[0], pr[1], pr[2], 14);
            CHECK(mod.T.lo() == -n);
            CHECK(mod.T.mode_num(-n).max_abs() > 1e-12);
        }
}

TEST_CASE("construct_untwisted rejects c = 0") {
    CHECK_THROWS_AS(construct_untwisted(2, Coeff(1.0), Coeff(0.0), Coeff(0.0), 10),
                    std::domain_error);
}

TEST_CASE("twisted n=1 p=2: T = gamma zeta^l x^{-1/2}") {
    const auto m0 = construct_twisted(1, 2, 0, Coeff(0.0), Coeff(-0.5), 40);
    CHECK(m0.T.ram() == 2);
    CHECK(m0.T.lo() == -1);
    CHECK(m0.T.mode_num(-1).at(0, 0).re == doctest::Approx(1.0));
    CHECK((m0.gamma - Coeff(1.0)).abs() <= 1e-12);

    const auto m1 = construct_twisted(1, 2, 1, Coeff(0.0), Coeff(-0.5), 40);
    CHECK(m1.T.mode_num(-1).at(0, 0).re == doctest::Approx(-1.0));
}

TEST_CASE("twisted n=2 p=2: T = x^{-1/2}(E + (1/2) x^{-1} J)") {
    const auto mod = construct_twisted(2, 2, 0, Coeff(0.0), Coeff(-0.5), 40);
    CHECK(mod.T.mode_num(-1).at(0, 0).re == doctest::Approx(1.0));
    CHECK(mod.T.mode_num(-1).at(1, 1).re == doctest::Approx(1.0));
    CHECK(mod.T.mode_num(-3).at(0, 1).re == doctest::Approx(0.5));
    CHECK(mod.T.lo() == -3);
}

TEST_CASE("twisted lowest term matches the binomial leading coefficient") {
    const std::int64_t n = 4, p = 3, l = 2;
    const Coeff cp1(-1.0);
    const auto mod = construct_twisted(n, p, l, Coeff(0.0), cp1, 60);
    CHECK(mod.T.lo() == -1 - (n - 1) * p);
    const Coeff lead = mod.gamma * pow_int(root_of_unity(p), l) *
                       binom(Rational(-1, p), n - 1) * pow_int(Coeff(-1.0), n - 1);
    CHECK((mod.T.mode_num(mod.T.lo()).at(0, n - 1) - lead).abs() <= 1e-10);
}

TEST_CASE("construct_twisted rejects c_{p+1} = 0 and bad l") {
    CHECK_THROWS_AS(construct_twisted(1, 2, 0, Coeff(1.0), Coeff(0.0), 10), std::domain_error);
    CHECK_THROWS_AS(construct_twisted(1, 2, 2, Coeff(0.0), Coeff(1.0), 10), std::domain_error);
}

TEST_CASE("l-sweep: leading scalars are exactly the p-th roots, pairwise distinct") {
    const std::int64_t p = 3;
    const Coeff cp1(1.0);
    std::vector<Coeff> leads;
    for (std::int64_t l = 0; l < p; ++l) {
        const auto mod = construct_twisted(2, p, l, Coeff(1.0), cp1, 30);
        leads.push_back(mod.T.mode_num(-1).at(0, 0));
    }
    for (std::size_t i = 0; i < leads.size(); ++i) {
        // Each lead is a p-th root of (-p c_{p+1})^{-1}.
        const Coeff check = pow_int(leads[i], p) * Coeff(static_cast<double>(-p)) * cp1;
        CHECK((check - Coeff(1.0)).abs() <= 1e-10);
        for (std::size_t j = i + 1; j < leads.size(); ++j)
            CHECK((leads[i] - leads[j]).abs() > 1e-6);
    }
}

TEST_CASE("evaluate_Y basics") {
    const auto mod = construct_untwisted(3, Coeff(0.0), Coeff(0.0), Coeff(1.0), 16);

    const auto e = evaluate_Y(mod, Poly::one());
    CHECK(max_abs_diff(e, MatSeries::identity_series(3, 1)).first <= 1e-14);

    const auto t = evaluate_Y(mod, Poly::t_power(1));
    CHECK(max_abs_diff(t, mod.T).first <= 1e-14);
}

TEST_CASE("evaluate_Y of t^2 equals dT/dx when f = t^2") {
    const auto mod = construct_untwisted(1, Coeff(0.0), Coeff(0.0), Coeff(1.0), 16);
    const auto y2 = evaluate_Y(mod, Poly::t_power(2));
    CHECK(y2.mode_num(-2).at(0, 0).re == doctest::Approx(1.0));
    const auto [res, win] = max_abs_diff(y2, derivative(mod.T));
    CHECK(res <= 1e-12);
}

TEST_CASE("restriction to the fixed subalgebra, c1 = 0") {
    // p=2, n=1: Y(t^2, x) = x^{-1}, independent of l.
    const auto m0 = construct_twisted(1, 2, 0, Coeff(0.0), Coeff(-0.5), 40);
    const auto r0 = restrict_to_fixed_subalgebra(m0);
    CHECK(r0.mode_num(-2).at(0, 0).re == doctest::Approx(1.0));

    const auto m1 = construct_twisted(1, 2, 1, Coeff(0.0), Coeff(-0.5), 40);
    const auto r1 = restrict_to_fixed_subalgebra(m1);
    CHECK(max_abs_diff(r0, r1).first <= 1e-12);

    // n=2: Y(t^2, x) = x^{-1} E + x^{-2} J.
    const auto m2 = construct_twisted(2, 2, 0, Coeff(0.0), Coeff(-0.5), 40);
    const auto r2 = restrict_to_fixed_subalgebra(m2);
    CHECK(r2.mode_num(-2).at(0, 0).re == doctest::Approx(1.0));
    CHECK(r2.mode_num(-4).at(0, 1).re == doctest::Approx(1.0));
}

TEST_CASE("restriction to the fixed subalgebra, c1 != 0") {
    const auto mod = construct_twisted(2, 2, 1, Coeff(1.0), Coeff(1.0), 44);
    const auto r = restrict_to_fixed_subalgebra(mod);  // throws on closed-form mismatch
    // Leading term: Y(t^p) ~ (-p c_{p+1})^{-1} x^{-1} at the pole.
    CHECK((r.mode_num(-2).at(0, 0) - Coeff(-0.5)).abs() <= 1e-9);
}

TEST_CASE("trivial module") {
    const auto mod = construct_trivial(3, 2, Coeff(1.0), Coeff(-1.0), 20);
    CHECK(mod.T.is_zero());
    // Y(P(t), x) = P_0 * id.
    const Poly p = Poly::from_coeffs({Coeff(2.5, -1.0), Coeff(3.0), Coeff(1.0)});
    const auto y = evaluate_Y(mod, p);
    CHECK((y.mode_num(0).at(0, 0) - Coeff(2.5, -1.0)).abs() <= 1e-14);
    CHECK(y.mode_num(0).at(0, 1).abs() <= 1e-14);
    CHECK(check_indecomposable(mod) == false);

    const auto mod1 = construct_trivial(1, 2, Coeff(1.0), Coeff(-1.0), 20);
    CHECK(check_indecomposable(mod1) == true);
}

TEST_CASE("construction enforces the existence conditions") {
    // With f = c(t-alpha)(t-beta), alpha*beta != 0, the zero series fails (iii).
    ModuleSpec spec;
    spec.family = Family::untwisted;
    spec.alpha = Coeff(1.0);
    spec.beta = Coeff(2.0);
    spec.c = Coeff(1.0);
    const Poly f = family_polynomial(spec);
    const auto rep = check_lemma_conditions(MatSeries::zero(1, 1, 10), f, 1);
    CHECK(rep.condition_iii > 1e-6);
}

TEST_CASE("pole mode of the constructed modules") {
    const auto mod = construct_twisted(3, 2, 0, Coeff(0.0), Coeff(1.0), 40);
    const Mat h = pole_mode(mod);
    // Strictly upper triangular with nonzero superdiagonal.
    CHECK(h.at(0, 1).abs() > 1e-12);
    CHECK(h.at(1, 2).abs() > 1e-12);
    for (std::int64_t i = 0; i < 3; ++i) CHECK(h.at(i, i).abs() <= 1e-14);
}

TEST_CASE("evaluate_Y window shrinks per the product rules") {
    const auto mod = construct_untwisted(2, Coeff(0.0), Coeff(0.0), Coeff(1.0), 10);
    const auto y3 = evaluate_Y(mod, Poly::t_power(3));
    CHECK(y3.hi() == mod.T.hi() + 2 * mod.T.lo());
}
