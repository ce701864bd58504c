#include "polyvert/polyalg.hpp"

#include <algorithm>

namespace polyvert {

void Poly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    for (const Coeff& v : c_)
        if (!v.finite()) throw std::domain_error("Poly: non-finite coefficient");
}

Poly Poly::from_coeffs(std::vector<Coeff> cs) {
    Poly p;
    p.c_ = std::move(cs);
    p.normalize();
    return p;
}

Poly Poly::t_power(std::int64_t k) {
    if (k < 0) throw std::domain_error("Poly::t_power: negative exponent");
    std::vector<Coeff> cs(static_cast<std::size_t>(k) + 1);
    cs.back() = Coeff(1.0);
    return from_coeffs(std::move(cs));
}

Coeff Poly::eval(Coeff x) const {
    Coeff acc(0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Coeff> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
    return from_coeffs(std::move(d));
}

Poly Poly::compose_affine(Coeff a, Coeff b) const {
    // Horner against the degree-1 polynomial a*t + b.
    Poly lin = Poly::from_coeffs({b, a});
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * lin + Poly::from_coeffs({*it});
    return acc;
}

Poly Poly::scaled(Coeff s) const {
    std::vector<Coeff> cs(c_);
    for (Coeff& v : cs) v *= s;
    return from_coeffs(std::move(cs));
}

double Poly::max_abs() const {
    double m = 0.0;
    for (const Coeff& v : c_) m = std::max(m, v.abs());
    return m;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Coeff> cs(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < cs.size(); ++i)
        cs[i] = a.coeff(static_cast<std::int64_t>(i)) + b.coeff(static_cast<std::int64_t>(i));
    return Poly::from_coeffs(std::move(cs));
}

Poly operator-(const Poly& a, const Poly& b) { return a + b.scaled(Coeff(-1.0)); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Coeff> cs(a.coeffs().size() + b.coeffs().size() - 1);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            cs[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return Poly::from_coeffs(std::move(cs));
}

double max_abs_diff(const Poly& a, const Poly& b) { return (a - b).max_abs(); }

AutomorphismNormalization normalize_automorphism(Coeff alpha, Coeff beta, Tolerance tol) {
    constexpr std::int64_t kMaxOrder = 256;
    AutomorphismNormalization out;
    if ((alpha - Coeff(1.0)).abs() <= tol.eps_eq) {
        if (beta.abs() > tol.eps_eq)
            throw std::domain_error(
                "normalize_automorphism: g(t) = t + beta with beta != 0 has infinite order");
        out.h_alpha = Coeff(1.0);
        out.h_beta = Coeff(0.0);
        out.xi = Coeff(1.0);
        out.order = 1;
        return out;
    }
    std::int64_t order = 0;
    Coeff pw(1.0);
    for (std::int64_t k = 1; k <= kMaxOrder; ++k) {
        pw *= alpha;
        if ((pw - Coeff(1.0)).abs() <= tol.eps_eq) {
            order = k;
            break;
        }
    }
    if (order == 0)
        throw std::domain_error("normalize_automorphism: alpha is not a root of unity");
    out.h_alpha = alpha - Coeff(1.0);
    out.h_beta = beta;
    out.xi = alpha;
    out.order = order;
    // h^{-1} g h fixes Ct: recompute the conjugation and confirm.
    // Applying an affine automorphism u to a degree-1 polynomial substitutes
    // u's image of t; composing the three maps must give xi*t exactly.
    const Coeff ha = out.h_alpha, hb = out.h_beta;
    const Coeff ga = alpha, gb = beta;
    // Applying g to the polynomial h(t) substitutes g's image of t:
    // ha*(ga*t + gb) + hb.
    const Coeff ca = ha * ga;
    const Coeff cb = ha * gb + hb;
    // Applying h^{-1} substitutes (t - hb)/ha.
    const Coeff ra = ca / ha;
    const Coeff rb = cb - ca * hb / ha;
    if ((ra - out.xi).abs() > 1e-8 || rb.abs() > 1e-8)
        throw std::runtime_error("normalize_automorphism: conjugation check failed");
    return out;
}

DerivedAlgebra make_derived_algebra(Poly f, Coeff alpha, Coeff beta, Tolerance tol) {
    const auto norm = normalize_automorphism(alpha, beta, tol);
    DerivedAlgebra alg;
    alg.f = std::move(f);
    alg.g_alpha = norm.xi;
    alg.g_beta = Coeff(0.0);
    alg.xi = norm.xi;
    alg.order_p = norm.order;
    return alg;
}

Poly apply_D(const DerivedAlgebra& alg, const Poly& a, std::int64_t k) {
    Poly r = a;
    for (std::int64_t i = 0; i < k; ++i) r = alg.f * r.derivative();
    return r;
}

PolySeries vertex_Y_on_algebra(const DerivedAlgebra& alg, const Poly& a, const Poly& b,
                               std::int64_t hi) {
    if (hi < 0) throw std::domain_error("vertex_Y_on_algebra: hi must be nonnegative");
    PolySeries s;
    s.coeff.reserve(static_cast<std::size_t>(hi) + 1);
    Poly da = a;
    double fact = 1.0;
    for (std::int64_t i = 0; i <= hi; ++i) {
        if (i > 0) {
            da = alg.f * da.derivative();
            fact *= static_cast<double>(i);
        }
        s.coeff.push_back((da * b).scaled(Coeff(1.0 / fact)));
    }
    return s;
}

std::int64_t grade_of(const DerivedAlgebra& alg, std::int64_t mono_deg) {
    if (mono_deg < 0) throw std::domain_error("grade_of: degree must be nonnegative");
    return mono_deg % alg.order_p;
}

DerivedAlgebra sigma_transport(Coeff alpha, Coeff beta, Coeff c) {
    if (c.is_zero()) throw std::domain_error("sigma_transport: c != 0 required");
    DerivedAlgebra alg;
    alg.f = Poly::from_coeffs({Coeff(0.0), c * (alpha - beta), Coeff(1.0)});
    alg.g_alpha = Coeff(1.0);
    alg.g_beta = Coeff(0.0);
    alg.xi = Coeff(1.0);
    alg.order_p = 1;
    return alg;
}

PuiseuxSeries apply_poly(const Poly& p, const PuiseuxSeries& s) {
    if (p.is_zero()) return PuiseuxSeries::zero(s.ram(), s.hi());
    PuiseuxSeries acc =
        PuiseuxSeries::monomial(p.coeff(p.degree()), 0, s.ram());
    for (std::int64_t i = p.degree() - 1; i >= 0; --i) {
        acc = mul(acc, s);
        if (!p.coeff(i).is_zero())
            acc = add(acc, PuiseuxSeries::monomial(p.coeff(i), 0, s.ram()));
    }
    return acc;
}

}  // namespace polyvert
