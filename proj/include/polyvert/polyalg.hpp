#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "polyvert/coeff.hpp"
#include "polyvert/puiseux.hpp"

namespace polyvert {

// Polynomial over Coeff, coefficients stored low to high.
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<Coeff> cs) : c_(cs) { normalize(); }
    static Poly from_coeffs(std::vector<Coeff> cs);
    static Poly zero() { return Poly(); }
    static Poly one() { return Poly({Coeff(1.0)}); }
    static Poly t_power(std::int64_t k);  // t^k

    bool is_zero() const { return c_.empty(); }
    std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
    Coeff coeff(std::int64_t i) const {
        return (i < 0 || i >= static_cast<std::int64_t>(c_.size()))
                   ? Coeff(0.0)
                   : c_[static_cast<std::size_t>(i)];
    }
    const std::vector<Coeff>& coeffs() const { return c_; }

    Coeff eval(Coeff x) const;
    Poly derivative() const;
    // P(a*t + b)
    Poly compose_affine(Coeff a, Coeff b) const;
    Poly scaled(Coeff s) const;
    double max_abs() const;

private:
    std::vector<Coeff> c_;
    void normalize();
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
double max_abs_diff(const Poly& a, const Poly& b);

// The algebra C[t] carrying the derivation D = f(t) d/dt and a finite-order
// automorphism g.  g is stored in normalized form g(t) = xi*t (conjugated to
// preserve Ct), with xi a primitive order_p-th root of unity; on C[t] the
// canonical endomorphism sending a to a_{-2}1 coincides with D.
struct DerivedAlgebra {
    Poly f;
    Coeff g_alpha{1.0};
    Coeff g_beta{0.0};
    Coeff xi{1.0};
    std::int64_t order_p = 1;
};

struct AutomorphismNormalization {
    Coeff h_alpha;  // h(t) = h_alpha*t + h_beta conjugates g into xi*t
    Coeff h_beta;
    Coeff xi;
    std::int64_t order = 1;
};

// Conjugates g(t) = alpha*t + beta into the Ct-preserving form xi*t and
// returns the conjugating map together with xi and the order of g.
AutomorphismNormalization normalize_automorphism(Coeff alpha, Coeff beta, Tolerance tol = {});

DerivedAlgebra make_derived_algebra(Poly f, Coeff alpha, Coeff beta, Tolerance tol = {});

// D^k a with D = f * d/dt.
Poly apply_D(const DerivedAlgebra& alg, const Poly& a, std::int64_t k);

// Truncated series in x with polynomial coefficients; coeff[i] goes with x^i.
struct PolySeries {
    std::vector<Poly> coeff;

    std::int64_t hi() const { return static_cast<std::int64_t>(coeff.size()) - 1; }
    Poly at(std::int64_t i) const {
        return (i < 0 || i > hi()) ? Poly::zero() : coeff[static_cast<std::size_t>(i)];
    }
};

// The vertex structure map on C[t] itself:
// Y(a,x)b = sum_{i>=0} (D^i a) b x^i / i!, truncated at x^hi.
PolySeries vertex_Y_on_algebra(const DerivedAlgebra& alg, const Poly& a, const Poly& b,
                               std::int64_t hi);

// Degree class of t^k in the eigenspace grading of g (gt = xi*t).
std::int64_t grade_of(const DerivedAlgebra& alg, std::int64_t mono_deg);

// The algebra (C[t], c(t-alpha)(t-beta) d/dt) transported along
// sigma(t) = c^{-1} t + alpha; the image derivation is
// (c(alpha-beta) t + t^2) d/dt, the p = 1 member of the twisted family.
DerivedAlgebra sigma_transport(Coeff alpha, Coeff beta, Coeff c);

// Horner evaluation of a polynomial on a scalar series.
PuiseuxSeries apply_poly(const Poly& p, const PuiseuxSeries& s);

}  // namespace polyvert
