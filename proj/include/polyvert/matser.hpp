#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "polyvert/coeff.hpp"
#include "polyvert/errors.hpp"
#include "polyvert/puiseux.hpp"

namespace polyvert {

// Dense n x n complex matrix, row major.  Sizes here are tiny (module
// dimensions), so no external linear algebra is used.
class Mat {
public:
    Mat() : n_(0) {}
    explicit Mat(std::int64_t n) : n_(n), a_(static_cast<std::size_t>(n * n)) {}

    static Mat identity(std::int64_t n);
    static Mat zero(std::int64_t n) { return Mat(n); }

    std::int64_t n() const { return n_; }
    Coeff& at(std::int64_t i, std::int64_t j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
    const Coeff& at(std::int64_t i, std::int64_t j) const {
        return a_[static_cast<std::size_t>(i * n_ + j)];
    }

    bool is_zero() const;
    double max_abs() const;
    Mat adjoint() const;

private:
    std::int64_t n_;
    std::vector<Coeff> a_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat scaled(const Mat& a, Coeff s);
double max_abs_diff(const Mat& a, const Mat& b);

// Nilpotent Jordan block: superdiagonal ones, zeros elsewhere.
Mat jordan_block(std::int64_t n);

// One superdiagonal band of a matrix: entries x_{i,i+k}.
struct BandMatrix {
    std::int64_t n = 0;
    std::int64_t k = 0;
    std::vector<Coeff> entries;  // entries[i] sits at (i, i+k)

    Mat to_mat() const;
};

BandMatrix band_project(const Mat& x, std::int64_t k);

// Singular values in decreasing order (Jacobi iteration on A^H A).
std::vector<double> singular_values(const Mat& a);

// [rank(H^0), ..., rank(H^n)] with ranks by singular-value thresholding at
// eps_eq * sigma_max.  H is conjugate to J_n exactly when this is
// [n, n-1, ..., 1, 0].
std::vector<std::int64_t> rank_profile(const Mat& h, double eps_eq);

// Strips the scalar diagonal off an upper-triangular matrix.  Rejects input
// that is not upper triangular with scalar diagonal.
Mat nilpotent_part(const Mat& x, double eps_eq);

// Truncated series in x^(1/ram) with n x n matrix coefficients; window
// conventions as in PuiseuxSeries.
class MatSeries {
public:
    static constexpr std::int64_t kExactHi = PuiseuxSeries::kExactHi;
    static constexpr double kLeadingStrip = PuiseuxSeries::kLeadingStrip;

    MatSeries() : n_(0), ram_(1), lo_(kExactHi + 1), hi_(kExactHi) {}

    static MatSeries zero(std::int64_t n, std::int64_t ram, std::int64_t hi = kExactHi);
    static MatSeries identity_series(std::int64_t n, std::int64_t ram);
    static MatSeries constant(const Mat& m, std::int64_t ram, std::int64_t hi = kExactHi);
    static MatSeries monomial(const Mat& m, std::int64_t num, std::int64_t ram,
                              std::int64_t hi = kExactHi);
    static MatSeries from_scalar(const PuiseuxSeries& s, std::int64_t n);
    static MatSeries from_coeffs(std::int64_t n, std::int64_t ram, std::int64_t lo,
                                 std::vector<Mat> coeffs, std::int64_t hi);

    std::int64_t n() const { return n_; }
    std::int64_t ram() const { return ram_; }
    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return hi_; }
    bool is_zero() const { return c_.empty(); }
    bool exact() const { return hi_ >= kExactHi; }
    std::int64_t stored_top() const { return lo_ + static_cast<std::int64_t>(c_.size()) - 1; }

    bool known(std::int64_t num) const { return num <= hi_; }
    // Mode accessor: matrix coefficient at exponent num/ram.
    Mat mode_num(std::int64_t num) const;
    double max_abs() const;
    std::vector<std::int64_t> support() const;

    MatSeries truncated(std::int64_t new_hi) const;
    MatSeries scaled(Coeff s) const;

private:
    std::int64_t n_;
    std::int64_t ram_;
    std::int64_t lo_;
    std::int64_t hi_;
    std::vector<Mat> c_;

    void normalize();
    friend MatSeries add(const MatSeries&, const MatSeries&);
    friend MatSeries mul(const MatSeries&, const MatSeries&);
    friend MatSeries mul(const PuiseuxSeries&, const MatSeries&);
    friend MatSeries lift_ram(const MatSeries&, std::int64_t);
    friend MatSeries derivative(const MatSeries&);
};

MatSeries add(const MatSeries& a, const MatSeries& b);
MatSeries sub(const MatSeries& a, const MatSeries& b);
MatSeries mul(const MatSeries& a, const MatSeries& b);
MatSeries mul(const PuiseuxSeries& s, const MatSeries& a);
MatSeries lift_ram(const MatSeries& a, std::int64_t q);
std::pair<MatSeries, MatSeries> unify_ram(const MatSeries& a, const MatSeries& b);
MatSeries derivative(const MatSeries& a);

// (E_n + F(x)H)^m = sum_i binom(m,i) (F(x)H)^i, a finite sum because H is
// nilpotent (verified; domain error otherwise).
MatSeries mat_binomial_power(const PuiseuxSeries& f, const Mat& h, Rational m,
                             double eps_eq = 1e-10);

// Largest coefficient-matrix |difference| over the common known window,
// together with that window.
std::pair<double, std::pair<std::int64_t, std::int64_t>> max_abs_diff(const MatSeries& a,
                                                                      const MatSeries& b);

// Per-exponent residual norms over the common known window.
std::vector<std::pair<std::int64_t, double>> residual_by_exponent(const MatSeries& a,
                                                                  const MatSeries& b);

}  // namespace polyvert
