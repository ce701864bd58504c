#include "polyvert/puiseux.hpp"

#include <algorithm>
#include <numeric>

namespace polyvert {

namespace {

constexpr std::int64_t kExact = PuiseuxSeries::kExactHi;

std::int64_t cap_hi(std::int64_t v) { return v >= kExact ? kExact : v; }

}  // namespace

void PuiseuxSeries::normalize() {
    std::size_t drop = 0;
    while (drop < c_.size() && c_[drop].abs() <= kLeadingStrip) ++drop;
    if (drop > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(drop));
        lo_ += static_cast<std::int64_t>(drop);
    }
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (c_.empty()) lo_ = cap_hi(hi_) + 1;
    for (const Coeff& v : c_)
        if (!v.finite()) throw std::domain_error("PuiseuxSeries: non-finite coefficient");
}

PuiseuxSeries PuiseuxSeries::zero(std::int64_t ram, std::int64_t hi) {
    if (ram < 1) throw std::domain_error("PuiseuxSeries: ramification must be positive");
    PuiseuxSeries s;
    s.ram_ = ram;
    s.hi_ = cap_hi(hi);
    s.lo_ = s.hi_ + 1;
    return s;
}

PuiseuxSeries PuiseuxSeries::one(std::int64_t ram) { return monomial(Coeff(1.0), 0, ram); }

PuiseuxSeries PuiseuxSeries::monomial(Coeff a, std::int64_t num, std::int64_t ram,
                                      std::int64_t hi) {
    if (ram < 1) throw std::domain_error("PuiseuxSeries: ramification must be positive");
    PuiseuxSeries s;
    s.ram_ = ram;
    s.hi_ = cap_hi(hi);
    s.lo_ = num;
    s.c_ = {a};
    s.normalize();
    return s;
}

PuiseuxSeries PuiseuxSeries::from_coeffs(std::int64_t ram, std::int64_t lo,
                                         std::vector<Coeff> coeffs, std::int64_t hi) {
    if (ram < 1) throw std::domain_error("PuiseuxSeries: ramification must be positive");
    if (lo + static_cast<std::int64_t>(coeffs.size()) - 1 > cap_hi(hi))
        throw std::domain_error("PuiseuxSeries: stored coefficients exceed the window");
    PuiseuxSeries s;
    s.ram_ = ram;
    s.hi_ = cap_hi(hi);
    s.lo_ = lo;
    s.c_ = std::move(coeffs);
    s.normalize();
    return s;
}

Coeff PuiseuxSeries::coeff_num(std::int64_t num) const {
    if (num > hi_)
        throw WindowExhausted("PuiseuxSeries: coefficient beyond the known window", hi_, ram_);
    if (num < lo_ || num > stored_top()) return Coeff(0.0);
    return c_[static_cast<std::size_t>(num - lo_)];
}

double PuiseuxSeries::max_abs() const {
    double m = 0.0;
    for (const Coeff& v : c_) m = std::max(m, v.abs());
    return m;
}

std::vector<std::int64_t> PuiseuxSeries::support() const {
    std::vector<std::int64_t> idx;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) idx.push_back(lo_ + static_cast<std::int64_t>(i));
    return idx;
}

PuiseuxSeries PuiseuxSeries::truncated(std::int64_t new_hi) const {
    PuiseuxSeries s = *this;
    s.hi_ = std::min(hi_, cap_hi(new_hi));
    if (s.stored_top() > s.hi_) {
        std::int64_t keep = s.hi_ - s.lo_ + 1;
        if (keep < 0) keep = 0;
        s.c_.resize(static_cast<std::size_t>(keep));
    }
    s.normalize();
    return s;
}

PuiseuxSeries PuiseuxSeries::scaled(Coeff v) const {
    PuiseuxSeries s = *this;
    for (Coeff& x : s.c_) x *= v;
    s.normalize();
    return s;
}

PuiseuxSeries PuiseuxSeries::shifted(std::int64_t dnum) const {
    PuiseuxSeries s = *this;
    if (!s.exact()) s.hi_ += dnum;
    if (s.c_.empty())
        s.lo_ = cap_hi(s.hi_) + 1;
    else
        s.lo_ += dnum;
    return s;
}

PuiseuxSeries add(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    if (a.ram_ != b.ram_)
        throw std::domain_error("PuiseuxSeries add: ramification mismatch (lift_ram first)");
    const std::int64_t hi = std::min(a.hi_, b.hi_);
    const std::int64_t lo = std::min(a.lo_, b.lo_);
    PuiseuxSeries r;
    r.ram_ = a.ram_;
    r.hi_ = hi;
    if (lo > hi) {
        r.lo_ = cap_hi(hi) + 1;
        return r;
    }
    const std::int64_t top = std::min(hi, std::max(a.stored_top(), b.stored_top()));
    r.lo_ = lo;
    if (top >= lo) {
        r.c_.assign(static_cast<std::size_t>(top - lo + 1), Coeff(0.0));
        for (std::int64_t k = lo; k <= top; ++k) {
            Coeff v(0.0);
            if (k >= a.lo_ && k <= a.stored_top()) v += a.c_[static_cast<std::size_t>(k - a.lo_)];
            if (k >= b.lo_ && k <= b.stored_top()) v += b.c_[static_cast<std::size_t>(k - b.lo_)];
            r.c_[static_cast<std::size_t>(k - lo)] = v;
        }
    }
    r.normalize();
    return r;
}

PuiseuxSeries sub(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return add(a, b.scaled(Coeff(-1.0)));
}

PuiseuxSeries mul(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    if (a.ram_ != b.ram_)
        throw std::domain_error("PuiseuxSeries mul: ramification mismatch (lift_ram first)");
    const std::int64_t hi = cap_hi(std::min(a.hi_ + b.lo_, b.hi_ + a.lo_));
    PuiseuxSeries r;
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
        r.c_.assign(static_cast<std::size_t>(top - lo + 1), Coeff(0.0));
        const auto sa = a.support();
        const auto sb = b.support();
        for (std::int64_t j : sa) {
            const Coeff aj = a.c_[static_cast<std::size_t>(j - a.lo_)];
            for (std::int64_t k : sb) {
                const std::int64_t t = j + k;
                if (t > top) break;
                r.c_[static_cast<std::size_t>(t - lo)] +=
                    aj * b.c_[static_cast<std::size_t>(k - b.lo_)];
            }
        }
    }
    r.normalize();
    return r;
}

PuiseuxSeries lift_ram(const PuiseuxSeries& a, std::int64_t q) {
    if (q < 1) throw std::domain_error("lift_ram: factor must be positive");
    if (q == 1) return a;
    PuiseuxSeries r;
    r.ram_ = a.ram_ * q;
    r.hi_ = a.exact() ? kExact : a.hi_ * q;
    if (a.is_zero()) {
        r.lo_ = cap_hi(r.hi_) + 1;
        return r;
    }
    r.lo_ = a.lo_ * q;
    r.c_.assign(static_cast<std::size_t>(a.c_.size() - 1) * q + 1, Coeff(0.0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i * q] = a.c_[i];
    r.normalize();
    return r;
}

std::pair<PuiseuxSeries, PuiseuxSeries> unify_ram(const PuiseuxSeries& a,
                                                  const PuiseuxSeries& b) {
    const std::int64_t l = std::lcm(a.ram(), b.ram());
    return {lift_ram(a, l / a.ram()), lift_ram(b, l / b.ram())};
}

PuiseuxSeries derivative(const PuiseuxSeries& a) {
    PuiseuxSeries r;
    r.ram_ = a.ram_;
    r.hi_ = a.exact() ? kExact : a.hi_ - a.ram_;
    if (a.is_zero()) {
        r.lo_ = cap_hi(r.hi_) + 1;
        return r;
    }
    r.lo_ = a.lo_ - a.ram_;
    r.c_.resize(a.c_.size());
    const double inv_ram = 1.0 / static_cast<double>(a.ram_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        const double q = static_cast<double>(a.lo_ + static_cast<std::int64_t>(i)) * inv_ram;
        r.c_[i] = q * a.c_[i];
    }
    r.normalize();
    return r;
}

PuiseuxSeries invert(const PuiseuxSeries& a) {
    if (a.is_zero()) throw std::domain_error("invert: zero series");
    if (a.c_.size() == 1) {
        const std::int64_t hi = a.exact() ? kExact : a.hi_ - 2 * a.lo_;
        return PuiseuxSeries::monomial(Coeff(1.0) / a.leading(), -a.lo_, a.ram_, hi);
    }
    if (a.exact())
        throw std::domain_error("invert: untruncated non-monomial series (truncate first)");
    const std::int64_t blo = -a.lo_;
    const std::int64_t bhi = a.hi_ - 2 * a.lo_;
    std::vector<Coeff> b(static_cast<std::size_t>(bhi - blo + 1), Coeff(0.0));
    const Coeff inv_lead = Coeff(1.0) / a.leading();
    b[0] = inv_lead;
    const auto sa = a.support();
    for (std::int64_t m = blo + 1; m <= bhi; ++m) {
        // Coefficient of x^((m+a.lo)/ram) in a*b must vanish.
        Coeff acc(0.0);
        for (std::int64_t j : sa) {
            if (j == a.lo_) continue;
            const std::int64_t bi = m + a.lo_ - j;
            if (bi < blo || bi >= m) continue;
            acc += a.c_[static_cast<std::size_t>(j - a.lo_)] * b[static_cast<std::size_t>(bi - blo)];
        }
        b[static_cast<std::size_t>(m - blo)] = -acc * inv_lead;
    }
    return PuiseuxSeries::from_coeffs(a.ram_, blo, std::move(b), bhi);
}

PuiseuxSeries exp_linear(Coeff c, std::int64_t hi) {
    if (hi < 0) throw std::domain_error("exp_linear: window must be nonnegative");
    std::vector<Coeff> v(static_cast<std::size_t>(hi) + 1);
    v[0] = Coeff(1.0);
    for (std::int64_t i = 1; i <= hi; ++i)
        v[static_cast<std::size_t>(i)] =
            v[static_cast<std::size_t>(i - 1)] * c * Coeff(1.0 / static_cast<double>(i));
    return PuiseuxSeries::from_coeffs(1, 0, std::move(v), hi);
}

PuiseuxSeries power_x_times_unit(const PuiseuxSeries& a, Rational m) {
    if (a.is_zero()) throw std::domain_error("power_x_times_unit: zero series");
    const std::int64_t ram_out = a.ram() * m.den;
    if (m.num == 0) return PuiseuxSeries::one(ram_out);

    const Coeff lam = a.leading();
    const std::int64_t q = a.lo();
    // a = lam * x^(q/ram) * (1 + G) with G in x^(1/ram)*C[[x^(1/ram)]].
    PuiseuxSeries g = sub(a.shifted(-q).scaled(Coeff(1.0) / lam), PuiseuxSeries::one(a.ram()));
    if (!g.is_zero() && g.exact())
        throw std::domain_error(
            "power_x_times_unit: untruncated non-monomial series (truncate first)");

    // sum = (1+G)^m = sum_i binom(m,i) G^i, evaluated through the derivative
    // recursion (1+G) sum' = m G' sum, which avoids the cancellation blowup
    // of the raw binomial terms: k u_k = sum_j ((m+1) j - k) G_j u_{k-j}.
    PuiseuxSeries sum = PuiseuxSeries::one(a.ram());
    if (!g.is_zero()) {
        const std::int64_t window_hi = g.hi();
        const double mv = m.value();
        const auto gs = g.support();
        std::vector<Coeff> u(static_cast<std::size_t>(window_hi) + 1);
        u[0] = Coeff(1.0);
        for (std::int64_t k = 1; k <= window_hi; ++k) {
            Coeff acc(0.0);
            for (std::int64_t j : gs) {
                if (j > k) break;
                acc += Coeff((mv + 1.0) * static_cast<double>(j) - static_cast<double>(k)) *
                       g.coeff_num(j) * u[static_cast<std::size_t>(k - j)];
            }
            u[static_cast<std::size_t>(k)] = acc * Coeff(1.0 / static_cast<double>(k));
        }
        sum = PuiseuxSeries::from_coeffs(a.ram(), 0, std::move(u), window_hi);
    }

    const Coeff lam_m = Coeff::from_std(std::pow(lam.to_std(), m.value()));
    if (!lam_m.finite())
        throw std::domain_error("power_x_times_unit: non-finite leading power");
    return lift_ram(sum, m.den).shifted(q * m.num).scaled(lam_m);
}

std::pair<double, std::pair<std::int64_t, std::int64_t>> max_abs_diff(const PuiseuxSeries& a0,
                                                                      const PuiseuxSeries& b0) {
    auto [a, b] = unify_ram(a0, b0);
    const std::int64_t whi = std::min(a.hi(), b.hi());
    const std::int64_t start = std::min(a.lo(), b.lo());
    // Beyond both stored ranges every known coefficient is zero.
    const std::int64_t top = std::min(whi, std::max(a.stored_top(), b.stored_top()));
    double r = 0.0;
    for (std::int64_t k = start; k <= top; ++k) {
        const Coeff va = (k >= a.lo() && k <= a.stored_top()) ? a.coeff_num(k) : Coeff(0.0);
        const Coeff vb = (k >= b.lo() && k <= b.stored_top()) ? b.coeff_num(k) : Coeff(0.0);
        r = std::max(r, (va - vb).abs());
    }
    return {r, {start, whi}};
}

}  // namespace polyvert
