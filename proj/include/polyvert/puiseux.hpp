#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polyvert/coeff.hpp"
#include "polyvert/errors.hpp"

namespace polyvert {

// Truncated scalar Puiseux series in x^(1/ram).
//
// Exponents are kept as integer numerators over the ramification index:
// the term at numerator k is c_k * x^(k/ram).  The window invariant is the
// heart of the representation: every coefficient with numerator <= hi() is
// determined (those below lo() or past the stored range are exactly zero),
// and coefficients above hi() are unknown.  Every operation propagates the
// honest window instead of assuming a global truncation order.
class PuiseuxSeries {
public:
    // Sentinel window top for series that are exact (finitely many terms,
    // zero tail known to all orders).  Window arithmetic saturates here.
    static constexpr std::int64_t kExactHi = std::int64_t(1) << 60;

    // Leading coefficients at or below this magnitude are stripped during
    // normalization so that lo() stays meaningful under floating error.
    static constexpr double kLeadingStrip = 1e-10;

    PuiseuxSeries() : ram_(1), lo_(kExactHi + 1), hi_(kExactHi) {}

    static PuiseuxSeries zero(std::int64_t ram, std::int64_t hi = kExactHi);
    static PuiseuxSeries one(std::int64_t ram = 1);
    static PuiseuxSeries monomial(Coeff a, std::int64_t num, std::int64_t ram = 1,
                                  std::int64_t hi = kExactHi);
    // Dense coefficients for numerators lo, lo+1, ..., lo+coeffs.size()-1.
    static PuiseuxSeries from_coeffs(std::int64_t ram, std::int64_t lo, std::vector<Coeff> coeffs,
                                     std::int64_t hi);

    std::int64_t ram() const { return ram_; }
    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return hi_; }
    bool is_zero() const { return c_.empty(); }
    bool exact() const { return hi_ >= kExactHi; }

    bool known(std::int64_t num) const { return num <= hi_; }
    // Coefficient at exponent num/ram; zero outside the stored range,
    // throws if the coefficient is beyond the known window.
    Coeff coeff_num(std::int64_t num) const;
    Coeff leading() const { return c_.empty() ? Coeff(0.0) : c_.front(); }
    std::int64_t stored_top() const { return lo_ + static_cast<std::int64_t>(c_.size()) - 1; }

    double max_abs() const;
    std::vector<std::int64_t> support() const;

    PuiseuxSeries truncated(std::int64_t new_hi) const;
    PuiseuxSeries scaled(Coeff s) const;
    PuiseuxSeries shifted(std::int64_t dnum) const;  // multiply by x^(dnum/ram)

private:
    std::int64_t ram_;
    std::int64_t lo_;
    std::int64_t hi_;
    std::vector<Coeff> c_;  // c_[k - lo_] is the coefficient at numerator k

    void normalize();
    friend PuiseuxSeries add(const PuiseuxSeries&, const PuiseuxSeries&);
    friend PuiseuxSeries mul(const PuiseuxSeries&, const PuiseuxSeries&);
    friend PuiseuxSeries lift_ram(const PuiseuxSeries&, std::int64_t);
    friend PuiseuxSeries derivative(const PuiseuxSeries&);
    friend PuiseuxSeries invert(const PuiseuxSeries&);
};

PuiseuxSeries add(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries sub(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries mul(const PuiseuxSeries& a, const PuiseuxSeries& b);

// Same series viewed with ramification ram*q.
PuiseuxSeries lift_ram(const PuiseuxSeries& a, std::int64_t q);

// Lift both operands to the lcm of their ramifications.
std::pair<PuiseuxSeries, PuiseuxSeries> unify_ram(const PuiseuxSeries& a, const PuiseuxSeries& b);

// Termwise d/dx; the window drops by one exponent unit.
PuiseuxSeries derivative(const PuiseuxSeries& a);

// Multiplicative inverse by long division.  The input must be nonzero and,
// unless it is a monomial, carry a finite window.
PuiseuxSeries invert(const PuiseuxSeries& a);

// exp(c*x) truncated at exponent hi (ramification 1).
PuiseuxSeries exp_linear(Coeff c, std::int64_t hi);

// (lam * x^q * (1 + G))^m = lam^m * x^(qm) * sum_i binom(m,i) G^i for the
// factorization of `a` by its leading term; lam^m uses the principal branch.
// The output ramification is a.ram() * den(m).
PuiseuxSeries power_x_times_unit(const PuiseuxSeries& a, Rational m);

// Largest |difference| coefficient over the common known window (series are
// compared raw, with no re-normalization).  Returns the residual and the
// window; throws WindowExhausted if the windows do not overlap.
std::pair<double, std::pair<std::int64_t, std::int64_t>> max_abs_diff(const PuiseuxSeries& a,
                                                                      const PuiseuxSeries& b);

}  // namespace polyvert
