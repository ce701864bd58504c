#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "polyvert/matser.hpp"

using namespace polyvert;

namespace {

Mat random_upper(std::mt19937_64& rng, std::int64_t n) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Mat m(n);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i; j < n; ++j) m.at(i, j) = Coeff(u(rng), u(rng));
    return m;
}

}  // namespace

TEST_CASE("jordan_block") {
    const Mat j1 = jordan_block(1);
    CHECK(j1.is_zero());

    const Mat j2 = jordan_block(2);
    CHECK(j2.at(0, 1).re == doctest::Approx(1.0));
    CHECK(j2.at(0, 0).abs() == 0.0);
    CHECK(j2.at(1, 0).abs() == 0.0);
    CHECK(j2.at(1, 1).abs() == 0.0);

    const Mat j3 = jordan_block(3);
    CHECK((j3 * j3 * j3).is_zero());
}

TEST_CASE("rank profiles of Jordan powers") {
    CHECK(rank_profile(jordan_block(3), 1e-10) == std::vector<std::int64_t>{3, 2, 1, 0});
    CHECK(rank_profile(Mat::zero(3), 1e-10) == std::vector<std::int64_t>{3, 0, 0, 0});

    // J_2 (+) J_1 has profile [3, 1, 0, 0]: not conjugate to J_3.
    Mat h(3);
    h.at(0, 1) = Coeff(1.0);
    CHECK(rank_profile(h, 1e-10) == std::vector<std::int64_t>{3, 1, 0, 0});
}

TEST_CASE("singular values sanity") {
    const auto sv = singular_values(jordan_block(4));
    CHECK(sv.size() == 4);
    CHECK(sv[0] == doctest::Approx(1.0));
    CHECK(sv[2] == doctest::Approx(1.0));
    CHECK(sv[3] == doctest::Approx(0.0).epsilon(1e-12));

    // Squared singular values sum to the squared Frobenius norm.
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int rep = 0; rep < 20; ++rep) {
        Mat m(4);
        double fro = 0.0;
        for (std::int64_t i = 0; i < 4; ++i)
            for (std::int64_t j = 0; j < 4; ++j) {
                m.at(i, j) = Coeff(u(rng), u(rng));
                fro += m.at(i, j).abs() * m.at(i, j).abs();
            }
        const auto s = singular_values(m);
        double sum = 0.0;
        for (double v : s) sum += v * v;
        CHECK(sum == doctest::Approx(fro).epsilon(1e-10));
    }
}

TEST_CASE("band_project") {
    Mat x(2);
    x.at(0, 0) = Coeff(1.0);
    x.at(0, 1) = Coeff(2.0);
    x.at(1, 1) = Coeff(3.0);

    const BandMatrix d0 = band_project(x, 0);
    CHECK(d0.entries[0].re == doctest::Approx(1.0));
    CHECK(d0.entries[1].re == doctest::Approx(3.0));

    const BandMatrix d1 = band_project(x, 1);
    CHECK(d1.entries[0].re == doctest::Approx(2.0));
    CHECK(max_abs_diff(d0.to_mat() + d1.to_mat(), x) == doctest::Approx(0.0));

    CHECK_THROWS_AS(band_project(x, 2), std::domain_error);
}

TEST_CASE("band product law on random upper triangulars") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const Mat a = random_upper(rng, 4);
        const Mat b = random_upper(rng, 4);
        for (std::int64_t k = 0; k < 4; ++k)
            for (std::int64_t l = 0; k + l < 4; ++l) {
                const Mat p = band_project(a, k).to_mat() * band_project(b, l).to_mat();
                // The product lives in the (k+l)-band.
                for (std::int64_t i = 0; i < 4; ++i)
                    for (std::int64_t j = 0; j < 4; ++j)
                        if (j - i != k + l) CHECK(p.at(i, j).abs() <= 1e-14);
            }
        // An upper-triangular matrix is the sum of its bands.
        Mat sum = Mat::zero(4);
        for (std::int64_t k = 0; k < 4; ++k) sum = sum + band_project(a, k).to_mat();
        CHECK(max_abs_diff(sum, a) <= 1e-14);
    }
}

TEST_CASE("mat_binomial_power basics") {
    // H = 0 gives the identity series.
    const auto f = PuiseuxSeries::monomial(Coeff(-1.0), -1, 1);
    const auto e = mat_binomial_power(f, Mat::zero(2), Rational(-1, 2));
    CHECK(max_abs_diff(e.mode_num(0), Mat::identity(2)) == doctest::Approx(0.0));

    // (E - x^{-1} J_2)^{-1} = E + x^{-1} J_2.
    const auto m1 = mat_binomial_power(f, jordan_block(2), Rational(-1, 1));
    CHECK(max_abs_diff(m1.mode_num(0), Mat::identity(2)) == doctest::Approx(0.0));
    CHECK(m1.mode_num(-1).at(0, 1).re == doctest::Approx(1.0));

    // (E - x^{-1} J_2)^{-1/2} = E + (1/2) x^{-1} J_2; its square is the m=-1 case.
    const auto mh = mat_binomial_power(f, jordan_block(2), Rational(-1, 2));
    CHECK(mh.mode_num(-1).at(0, 1).re == doctest::Approx(0.5));
    const auto [res, win] = max_abs_diff(mul(mh, mh), m1);
    CHECK(res <= 1e-12);

    CHECK_THROWS_AS(mat_binomial_power(f, Mat::identity(2), Rational(-1, 2)), std::domain_error);
    // Small but non-nilpotent H is rejected too (relative threshold).
    CHECK_THROWS_AS(mat_binomial_power(f, scaled(Mat::identity(2), Coeff(0.01)), Rational(-1, 2)),
                    std::domain_error);
}

TEST_CASE("mat_binomial_power group law and mode commutativity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        // Random truncated F with a pole and random nilpotent upper-triangular H.
        std::vector<Coeff> cs = {Coeff(u(rng), u(rng)), Coeff(u(rng)), Coeff(u(rng))};
        if (cs.front().abs() < 0.3) cs.front() = Coeff(1.0);
        const auto f = PuiseuxSeries::from_coeffs(1, -1, cs, 6);
        Mat h(3);
        h.at(0, 1) = Coeff(u(rng), u(rng));
        h.at(0, 2) = Coeff(u(rng));
        h.at(1, 2) = Coeff(u(rng), u(rng));

        const Rational m1(-1, 2), m2(3, 2);
        const auto p1 = mat_binomial_power(f, h, m1);
        const auto p2 = mat_binomial_power(f, h, m2);
        const auto ps = mat_binomial_power(f, h, m1 + m2);
        const auto [res, win] = max_abs_diff(mul(p1, p2), ps);
        CHECK(res <= 1e-10);

        // All modes commute (polynomials in H).
        for (std::int64_t a : p1.support())
            for (std::int64_t b : p1.support()) {
                const Mat ma = p1.mode_num(a), mb = p1.mode_num(b);
                CHECK((ma * mb - mb * ma).max_abs() <= 1e-12);
            }
    }
}

TEST_CASE("nilpotent_part") {
    const Mat j2 = jordan_block(2);
    Mat x = scaled(Mat::identity(2), Coeff(1.5, 0.5)) + j2;
    CHECK(max_abs_diff(nilpotent_part(x, 1e-10), j2) == doctest::Approx(0.0));

    CHECK(nilpotent_part(scaled(Mat::identity(2), Coeff(3.0)), 1e-10).is_zero());

    const Mat j3 = jordan_block(3);
    const Mat expect = j3 + j3 * j3;
    const Mat y = scaled(Mat::identity(3), Coeff(2.0)) + expect;
    CHECK(max_abs_diff(nilpotent_part(y, 1e-10), expect) == doctest::Approx(0.0));

    Mat lower(2);
    lower.at(1, 0) = Coeff(1.0);
    CHECK_THROWS_AS(nilpotent_part(lower, 1e-10), std::domain_error);

    Mat diag(2);
    diag.at(0, 0) = Coeff(1.0);
    diag.at(1, 1) = Coeff(2.0);
    CHECK_THROWS_AS(nilpotent_part(diag, 1e-10), std::domain_error);
}

TEST_CASE("MatSeries arithmetic mirrors the scalar rules") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto rand_ms = [&](std::int64_t n, std::int64_t lo, std::int64_t len, std::int64_t hi) {
        std::vector<Mat> mats;
        for (std::int64_t k = 0; k < len; ++k) {
            Mat m(n);
            for (std::int64_t i = 0; i < n; ++i)
                for (std::int64_t j = 0; j < n; ++j) m.at(i, j) = Coeff(u(rng), u(rng));
            mats.push_back(std::move(m));
        }
        return MatSeries::from_coeffs(n, 1, lo, std::move(mats), hi);
    };
    for (int rep = 0; rep < 15; ++rep) {
        const auto a = rand_ms(3, -2, 5, 6);
        const auto b = rand_ms(3, -1, 4, 5);
        const auto c = rand_ms(3, 0, 4, 7);
        const auto [r1, w1] = max_abs_diff(mul(mul(a, b), c), mul(a, mul(b, c)));
        CHECK(r1 <= 1e-10);
        const auto [r2, w2] = max_abs_diff(mul(a, add(b, c)), add(mul(a, b), mul(a, c)));
        CHECK(r2 <= 1e-10);
        const auto lhs = derivative(mul(a, b));
        const auto rhs = add(mul(derivative(a), b), mul(a, derivative(b)));
        const auto [r3, w3] = max_abs_diff(lhs, rhs);
        CHECK(r3 <= 1e-9);
        CHECK(mul(a, b).hi() == std::min(a.hi() + b.lo(), b.hi() + a.lo()));
    }
}

TEST_CASE("scalar-series times matrix-series") {
    const auto s = PuiseuxSeries::from_coeffs(1, -1, {Coeff(2.0), Coeff(1.0)}, 5);
    const auto e = MatSeries::identity_series(2, 1);
    const auto p = mul(s, e);
    CHECK(p.mode_num(-1).at(0, 0).re == doctest::Approx(2.0));
    CHECK(p.mode_num(0).at(1, 1).re == doctest::Approx(1.0));
    CHECK(p.mode_num(-1).at(0, 1).abs() == 0.0);
}

TEST_CASE("mode accessor and window") {
    const auto t = MatSeries::monomial(jordan_block(2), -3, 2, 4);
    CHECK(t.mode_num(-3).at(0, 1).re == doctest::Approx(1.0));
    CHECK(t.mode_num(-5).is_zero());
    CHECK(t.mode_num(2).is_zero());
    CHECK_THROWS_AS(t.mode_num(5), WindowExhausted);
}
