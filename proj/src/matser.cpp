#include "polyvert/matser.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace polyvert {

namespace {

constexpr std::int64_t kExact = MatSeries::kExactHi;

std::int64_t cap_hi(std::int64_t v) { return v >= kExact ? kExact : v; }

}  // namespace

Mat Mat::identity(std::int64_t n) {
    Mat m(n);
    for (std::int64_t i = 0; i < n; ++i) m.at(i, i) = Coeff(1.0);
    return m;
}

bool Mat::is_zero() const {
    for (const Coeff& v : a_)
        if (!v.is_zero()) return false;
    return true;
}

double Mat::max_abs() const {
    double m = 0.0;
    for (const Coeff& v : a_) m = std::max(m, v.abs());
    return m;
}

Mat Mat::adjoint() const {
    Mat r(n_);
    for (std::int64_t i = 0; i < n_; ++i)
        for (std::int64_t j = 0; j < n_; ++j) r.at(j, i) = at(i, j).conj();
    return r;
}

Mat operator+(const Mat& a, const Mat& b) {
    Mat r(a.n());
    for (std::int64_t i = 0; i < a.n(); ++i)
        for (std::int64_t j = 0; j < a.n(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

Mat operator-(const Mat& a, const Mat& b) {
    Mat r(a.n());
    for (std::int64_t i = 0; i < a.n(); ++i)
        for (std::int64_t j = 0; j < a.n(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
    return r;
}

Mat operator*(const Mat& a, const Mat& b) {
    const std::int64_t n = a.n();
    Mat r(n);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t k = 0; k < n; ++k) {
            const Coeff aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::int64_t j = 0; j < n; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

Mat scaled(const Mat& a, Coeff s) {
    Mat r(a.n());
    for (std::int64_t i = 0; i < a.n(); ++i)
        for (std::int64_t j = 0; j < a.n(); ++j) r.at(i, j) = a.at(i, j) * s;
    return r;
}

double max_abs_diff(const Mat& a, const Mat& b) { return (a - b).max_abs(); }

Mat jordan_block(std::int64_t n) {
    if (n < 1) throw std::domain_error("jordan_block: n must be positive");
    Mat j(n);
    for (std::int64_t i = 0; i + 1 < n; ++i) j.at(i, i + 1) = Coeff(1.0);
    return j;
}

Mat BandMatrix::to_mat() const {
    Mat m(n);
    for (std::int64_t i = 0; i + k < n; ++i) m.at(i, i + k) = entries[static_cast<std::size_t>(i)];
    return m;
}

BandMatrix band_project(const Mat& x, std::int64_t k) {
    if (k < 0 || k > x.n() - 1) throw std::domain_error("band_project: band offset out of range");
    BandMatrix b;
    b.n = x.n();
    b.k = k;
    b.entries.resize(static_cast<std::size_t>(x.n() - k));
    for (std::int64_t i = 0; i + k < x.n(); ++i) b.entries[static_cast<std::size_t>(i)] = x.at(i, i + k);
    return b;
}

std::vector<double> singular_values(const Mat& a) {
    const std::int64_t n = a.n();
    // Jacobi sweeps on the Hermitian positive semidefinite G = A^H A.
    Mat g = a.adjoint() * a;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::int64_t p = 0; p < n; ++p)
            for (std::int64_t q = p + 1; q < n; ++q) off = std::max(off, g.at(p, q).abs());
        double scale = 0.0;
        for (std::int64_t i = 0; i < n; ++i) scale = std::max(scale, g.at(i, i).abs());
        if (off <= 1e-300 || off <= 1e-16 * std::max(scale, 1e-300)) break;
        for (std::int64_t p = 0; p < n; ++p)
            for (std::int64_t q = p + 1; q < n; ++q) {
                const Coeff gpq = g.at(p, q);
                if (gpq.abs() == 0.0) continue;
                const double app = g.at(p, p).re;
                const double aqq = g.at(q, q).re;
                const double apq = gpq.abs();
                const Coeff phase = gpq * Coeff(1.0 / apq);
                // Real 2x2 rotation after factoring out the phase of g_pq.
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Unitary similarity with the complex Givens rotation
                // J = [[c, s*phase], [-s*conj(phase), c]] on rows/cols p,q.
                for (std::int64_t i = 0; i < n; ++i) {
                    const Coeff gip = g.at(i, p);
                    const Coeff giq = g.at(i, q);
                    g.at(i, p) = c * gip - s * (phase.conj() * giq);
                    g.at(i, q) = s * (phase * gip) + c * giq;
                }
                for (std::int64_t j = 0; j < n; ++j) {
                    const Coeff gpj = g.at(p, j);
                    const Coeff gqj = g.at(q, j);
                    g.at(p, j) = c * gpj - s * (phase * gqj);
                    g.at(q, j) = s * (phase.conj() * gpj) + c * gqj;
                }
            }
    }
    std::vector<double> sv(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) sv[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, g.at(i, i).re));
    std::sort(sv.rbegin(), sv.rend());
    return sv;
}

namespace {

std::int64_t rank_of(const Mat& a, double eps_eq) {
    const auto sv = singular_values(a);
    if (sv.empty() || sv.front() <= 0.0) return 0;
    const double thr = eps_eq * sv.front();
    std::int64_t r = 0;
    for (double s : sv)
        if (s > thr) ++r;
    return r;
}

}  // namespace

std::vector<std::int64_t> rank_profile(const Mat& h, double eps_eq) {
    const std::int64_t n = h.n();
    std::vector<std::int64_t> prof;
    prof.reserve(static_cast<std::size_t>(n) + 1);
    Mat p = Mat::identity(n);
    for (std::int64_t k = 0; k <= n; ++k) {
        prof.push_back(rank_of(p, eps_eq));
        if (k < n) p = p * h;
    }
    return prof;
}

Mat nilpotent_part(const Mat& x, double eps_eq) {
    const std::int64_t n = x.n();
    const double scale = std::max(x.max_abs(), 1.0);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < i; ++j)
            if (x.at(i, j).abs() > eps_eq * scale)
                throw std::domain_error(
                    "nilpotent_part: matrix is not upper triangular (conjugate it first)");
    for (std::int64_t i = 1; i < n; ++i)
        if ((x.at(i, i) - x.at(0, 0)).abs() > eps_eq * scale)
            throw std::domain_error(
                "nilpotent_part: diagonal is not scalar (conjugate it first)");
    Mat r(n);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j) r.at(i, j) = x.at(i, j);
    return r;
}

void MatSeries::normalize() {
    std::size_t drop = 0;
    while (drop < c_.size() && c_[drop].max_abs() <= kLeadingStrip) ++drop;
    if (drop > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(drop));
        lo_ += static_cast<std::int64_t>(drop);
    }
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (c_.empty()) lo_ = cap_hi(hi_) + 1;
}

MatSeries MatSeries::zero(std::int64_t n, std::int64_t ram, std::int64_t hi) {
    MatSeries s;
    s.n_ = n;
    s.ram_ = ram;
    s.hi_ = cap_hi(hi);
    s.lo_ = s.hi_ + 1;
    return s;
}

MatSeries MatSeries::identity_series(std::int64_t n, std::int64_t ram) {
    return constant(Mat::identity(n), ram);
}

MatSeries MatSeries::constant(const Mat& m, std::int64_t ram, std::int64_t hi) {
    return monomial(m, 0, ram, hi);
}

MatSeries MatSeries::monomial(const Mat& m, std::int64_t num, std::int64_t ram, std::int64_t hi) {
    MatSeries s;
    s.n_ = m.n();
    s.ram_ = ram;
    s.hi_ = cap_hi(hi);
    s.lo_ = num;
    s.c_ = {m};
    s.normalize();
    return s;
}

MatSeries MatSeries::from_scalar(const PuiseuxSeries& s, std::int64_t n) {
    MatSeries r;
    r.n_ = n;
    r.ram_ = s.ram();
    r.hi_ = s.hi();
    r.lo_ = s.lo();
    if (!s.is_zero()) {
        r.c_.reserve(static_cast<std::size_t>(s.stored_top() - s.lo() + 1));
        for (std::int64_t k = s.lo(); k <= s.stored_top(); ++k) {
            Mat m(n);
            const Coeff v = s.coeff_num(k);
            for (std::int64_t i = 0; i < n; ++i) m.at(i, i) = v;
            r.c_.push_back(std::move(m));
        }
    }
    r.normalize();
    return r;
}

MatSeries MatSeries::from_coeffs(std::int64_t n, std::int64_t ram, std::int64_t lo,
                                 std::vector<Mat> coeffs, std::int64_t hi) {
    MatSeries s;
    s.n_ = n;
    s.ram_ = ram;
    s.hi_ = cap_hi(hi);
    s.lo_ = lo;
    s.c_ = std::move(coeffs);
    for (const Mat& m : s.c_)
        if (m.n() != n) throw std::domain_error("MatSeries: coefficient size mismatch");
    s.normalize();
    return s;
}

Mat MatSeries::mode_num(std::int64_t num) const {
    if (num > hi_)
        throw WindowExhausted("MatSeries: mode beyond the known window", hi_, ram_);
    if (num < lo_ || num > stored_top()) return Mat::zero(n_);
    return c_[static_cast<std::size_t>(num - lo_)];
}

double MatSeries::max_abs() const {
    double m = 0.0;
    for (const Mat& v : c_) m = std::max(m, v.max_abs());
    return m;
}

std::vector<std::int64_t> MatSeries::support() const {
    std::vector<std::int64_t> idx;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) idx.push_back(lo_ + static_cast<std::int64_t>(i));
    return idx;
}

MatSeries MatSeries::truncated(std::int64_t new_hi) const {
    MatSeries s = *this;
    s.hi_ = std::min(hi_, cap_hi(new_hi));
    if (s.stored_top() > s.hi_) {
        std::int64_t keep = s.hi_ - s.lo_ + 1;
        if (keep < 0) keep = 0;
        s.c_.resize(static_cast<std::size_t>(keep), Mat::zero(n_));
    }
    s.normalize();
    return s;
}

MatSeries MatSeries::scaled(Coeff v) const {
    MatSeries s = *this;
    for (Mat& m : s.c_) m = polyvert::scaled(m, v);
    s.normalize();
    return s;
}

MatSeries add(const MatSeries& a, const MatSeries& b) {
    if (a.ram_ != b.ram_) throw std::domain_error("MatSeries add: ramification mismatch");
    if (a.n_ != b.n_) throw std::domain_error("MatSeries add: size mismatch");
    const std::int64_t hi = std::min(a.hi_, b.hi_);
    const std::int64_t lo = std::min(a.lo_, b.lo_);
    MatSeries r;
    r.n_ = a.n_;
    r.ram_ = a.ram_;
    r.hi_ = hi;
    if (lo > hi) {
        r.lo_ = cap_hi(hi) + 1;
        return r;
    }
    const std::int64_t top = std::min(hi, std::max(a.stored_top(), b.stored_top()));
    r.lo_ = lo;
    if (top >= lo) {
        r.c_.assign(static_cast<std::size_t>(top - lo + 1), Mat::zero(a.n_));
        for (std::int64_t k = lo; k <= top; ++k) {
            Mat v = Mat::zero(a.n_);
            if (k >= a.lo_ && k <= a.stored_top()) v = v + a.c_[static_cast<std::size_t>(k - a.lo_)];
            if (k >= b.lo_ && k <= b.stored_top()) v = v + b.c_[static_cast<std::size_t>(k - b.lo_)];
            r.c_[static_cast<std::size_t>(k - lo)] = std::move(v);
        }
    }
    r.normalize();
    return r;
}

MatSeries sub(const MatSeries& a, const MatSeries& b) { return add(a, b.scaled(Coeff(-1.0))); }

MatSeries mul(const MatSeries& a, const MatSeries& b) {
    if (a.ram_ != b.ram_) throw std::domain_error("MatSeries mul: ramification mismatch");
    if (a.n_ != b.n_) throw std::domain_error("MatSeries mul: size mismatch");
    const std::int64_t hi = cap_hi(std::min(a.hi_ + b.lo_, b.hi_ + a.lo_));
    MatSeries r;
    r.n_ = a.n_;
    r.ram_ = a.ram_;
    r.hi_ = hi;
    if (a.is_zero() || b.is_zero()) {
        r.lo_ = cap_hi(hi) + 1;
        return r;
    }
    const std::int64_t lo = a.lo_ + b.lo_;
    const std::int64_t top = std::min(hi, a.stored_top() + b.stored_top());
    r.lo_ = lo;
    if (top >= lo) {
        r.c_.assign(static_cast<std::size_t>(top - lo + 1), Mat::zero(a.n_));
        const auto sa = a.support();
        const auto sb = b.support();
        for (std::int64_t j : sa) {
            const Mat& aj = a.c_[static_cast<std::size_t>(j - a.lo_)];
            for (std::int64_t k : sb) {
                const std::int64_t t = j + k;
                if (t > top) break;
                Mat& dst = r.c_[static_cast<std::size_t>(t - lo)];
                dst = dst + aj * b.c_[static_cast<std::size_t>(k - b.lo_)];
            }
        }
    }
    r.normalize();
    return r;
}

MatSeries mul(const PuiseuxSeries& s, const MatSeries& a) {
    if (s.ram() != a.ram_) throw std::domain_error("MatSeries mul: ramification mismatch");
    const std::int64_t hi = cap_hi(std::min(s.hi() + a.lo_, a.hi_ + s.lo()));
    MatSeries r;
    r.n_ = a.n_;
    r.ram_ = a.ram_;
    r.hi_ = hi;
    if (s.is_zero() || a.is_zero()) {
        r.lo_ = cap_hi(hi) + 1;
        return r;
    }
    const std::int64_t lo = s.lo() + a.lo_;
    const std::int64_t top = std::min(hi, s.stored_top() + a.stored_top());
    r.lo_ = lo;
    if (top >= lo) {
        r.c_.assign(static_cast<std::size_t>(top - lo + 1), Mat::zero(a.n_));
        const auto ss = s.support();
        const auto sa = a.support();
        for (std::int64_t j : ss) {
            const Coeff sj = s.coeff_num(j);
            for (std::int64_t k : sa) {
                const std::int64_t t = j + k;
                if (t > top) break;
                Mat& dst = r.c_[static_cast<std::size_t>(t - lo)];
                dst = dst + scaled(a.c_[static_cast<std::size_t>(k - a.lo_)], sj);
            }
        }
    }
    r.normalize();
    return r;
}

MatSeries lift_ram(const MatSeries& a, std::int64_t q) {
    if (q < 1) throw std::domain_error("lift_ram: factor must be positive");
    if (q == 1) return a;
    MatSeries r;
    r.n_ = a.n_;
    r.ram_ = a.ram_ * q;
    r.hi_ = a.exact() ? kExact : a.hi_ * q;
    if (a.is_zero()) {
        r.lo_ = cap_hi(r.hi_) + 1;
        return r;
    }
    r.lo_ = a.lo_ * q;
    r.c_.assign(static_cast<std::size_t>(a.c_.size() - 1) * q + 1, Mat::zero(a.n_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i * q] = a.c_[i];
    r.normalize();
    return r;
}

std::pair<MatSeries, MatSeries> unify_ram(const MatSeries& a, const MatSeries& b) {
    const std::int64_t l = std::lcm(a.ram(), b.ram());
    return {lift_ram(a, l / a.ram()), lift_ram(b, l / b.ram())};
}

MatSeries derivative(const MatSeries& a) {
    MatSeries r;
    r.n_ = a.n_;
    r.ram_ = a.ram_;
    r.hi_ = a.exact() ? kExact : a.hi_ - a.ram_;
    if (a.is_zero()) {
        r.lo_ = cap_hi(r.hi_) + 1;
        return r;
    }
    r.lo_ = a.lo_ - a.ram_;
    r.c_.resize(a.c_.size(), Mat::zero(a.n_));
    const double inv_ram = 1.0 / static_cast<double>(a.ram_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        const double q = static_cast<double>(a.lo_ + static_cast<std::int64_t>(i)) * inv_ram;
        r.c_[i] = scaled(a.c_[i], Coeff(q));
    }
    r.normalize();
    return r;
}

MatSeries mat_binomial_power(const PuiseuxSeries& f, const Mat& h, Rational m, double eps_eq) {
    const std::int64_t n = h.n();
    const double hnorm = h.max_abs();
    // Powers of H, stopping at the nilpotency degree (threshold relative to
    // the attainable magnitude ||H||^i).
    std::vector<Mat> hp = {Mat::identity(n)};
    double scale = 1.0;
    for (std::int64_t i = 1; i <= n; ++i) {
        hp.push_back(hp.back() * h);
        scale *= hnorm;
        if (hp.back().max_abs() <= eps_eq * scale) {
            hp.pop_back();
            break;
        }
    }
    if (static_cast<std::int64_t>(hp.size()) > n)
        throw std::domain_error("mat_binomial_power: H is not nilpotent");
    MatSeries acc = MatSeries::identity_series(n, f.ram());
    PuiseuxSeries fp = PuiseuxSeries::one(f.ram());
    for (std::size_t i = 1; i < hp.size(); ++i) {
        fp = mul(fp, f);
        const Coeff b = binom(m, static_cast<std::int64_t>(i));
        acc = add(acc, mul(fp.scaled(b), MatSeries::constant(hp[i], f.ram())));
    }
    return acc;
}

std::pair<double, std::pair<std::int64_t, std::int64_t>> max_abs_diff(const MatSeries& a0,
                                                                      const MatSeries& b0) {
    auto [a, b] = unify_ram(a0, b0);
    const std::int64_t whi = std::min(a.hi(), b.hi());
    const std::int64_t start = std::min(a.lo(), b.lo());
    const std::int64_t top = std::min(whi, std::max(a.stored_top(), b.stored_top()));
    double r = 0.0;
    for (std::int64_t k = start; k <= top; ++k) {
        const bool ia = k >= a.lo() && k <= a.stored_top();
        const bool ib = k >= b.lo() && k <= b.stored_top();
        if (ia && ib)
            r = std::max(r, max_abs_diff(a.mode_num(k), b.mode_num(k)));
        else if (ia)
            r = std::max(r, a.mode_num(k).max_abs());
        else if (ib)
            r = std::max(r, b.mode_num(k).max_abs());
    }
    return {r, {start, whi}};
}

std::vector<std::pair<std::int64_t, double>> residual_by_exponent(const MatSeries& a0,
                                                                  const MatSeries& b0) {
    auto [a, b] = unify_ram(a0, b0);
    const std::int64_t whi = std::min(a.hi(), b.hi());
    const std::int64_t start = std::min(a.lo(), b.lo());
    const std::int64_t top = std::min(whi, std::max(a.stored_top(), b.stored_top()));
    std::vector<std::pair<std::int64_t, double>> out;
    for (std::int64_t k = start; k <= top; ++k) {
        const bool ia = k >= a.lo() && k <= a.stored_top();
        const bool ib = k >= b.lo() && k <= b.stored_top();
        double d = 0.0;
        if (ia && ib)
            d = max_abs_diff(a.mode_num(k), b.mode_num(k));
        else if (ia)
            d = a.mode_num(k).max_abs();
        else if (ib)
            d = b.mode_num(k).max_abs();
        out.emplace_back(k, d);
    }
    return out;
}

}  // namespace polyvert
