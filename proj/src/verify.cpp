#include "polyvert/verify.hpp"

#include <algorithm>
#include <cmath>

namespace polyvert {

namespace {

// num/ram lies on the coset -r/p + Z of exponents.
bool on_coset(std::int64_t num, std::int64_t ram, std::int64_t r, std::int64_t p) {
    const std::int64_t mod = ram * p;
    std::int64_t v = (num * p + r * ram) % mod;
    if (v < 0) v += mod;
    return v == 0;
}

// Residual list between two matrix series; throws when the windows leave
// nothing comparable although at least one side has known coefficients.
std::pair<double, std::vector<std::pair<std::int64_t, double>>> residual_or_throw(
    const MatSeries& a, const MatSeries& b, const char* what) {
    // Exhausted when either side has content starting beyond the comparable window.
    const std::int64_t whi = std::min(a.hi(), b.hi());
    if ((!a.is_zero() && a.lo() > whi) || (!b.is_zero() && b.lo() > whi))
        throw WindowExhausted(std::string(what) + ": windows do not overlap", whi,
                              std::max(a.ram(), b.ram()));
    auto list = residual_by_exponent(a, b);
    double mx = 0.0;
    for (const auto& [num, r] : list) mx = std::max(mx, r);
    return {mx, std::move(list)};
}

Coeff frobenius_inner(const Mat& a, const Mat& b) {
    Coeff acc(0.0);
    for (std::int64_t i = 0; i < a.n(); ++i)
        for (std::int64_t j = 0; j < a.n(); ++j) acc += a.at(i, j).conj() * b.at(i, j);
    return acc;
}

double frobenius_norm(const Mat& a) { return std::sqrt(frobenius_inner(a, a).re); }

// Orthonormal (Frobenius) basis that grows by accepted directions.
struct MatSpan {
    std::vector<Mat> basis;

    // Returns true when m added a new direction.
    bool absorb(Mat m, double accept_rel) {
        const double orig = frobenius_norm(m);
        if (orig <= 1e-300) return false;
        for (int pass = 0; pass < 2; ++pass)
            for (const Mat& b : basis) m = m - scaled(b, frobenius_inner(b, m));
        const double rem = frobenius_norm(m);
        if (rem <= accept_rel * orig) return false;
        basis.push_back(scaled(m, Coeff(1.0 / rem)));
        return true;
    }

    double residual_of(Mat m) const {
        const double orig = frobenius_norm(m);
        if (orig <= 1e-300) return 0.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const Mat& b : basis) m = m - scaled(b, frobenius_inner(b, m));
        return frobenius_norm(m);
    }
};

std::vector<Mat> nonzero_modes(const MatSeries& t) {
    std::vector<Mat> modes;
    for (std::int64_t k : t.support()) modes.push_back(t.mode_num(k));
    return modes;
}

void require_strictly_upper(const Mat& h, double eps_eq, const char* what) {
    const double scale = std::max(h.max_abs(), 1.0);
    for (std::int64_t i = 0; i < h.n(); ++i)
        for (std::int64_t j = 0; j <= i; ++j)
            if (h.at(i, j).abs() > eps_eq * scale)
                throw std::domain_error(std::string(what) +
                                        ": seed matrix must be strictly upper triangular");
}

// Coefficients at or below eps are treated as exact zeros.
Poly effective_poly(const Poly& f, double eps) {
    std::vector<Coeff> cs;
    for (std::int64_t i = 0; i <= f.degree(); ++i)
        cs.push_back(f.coeff(i).abs() > eps ? f.coeff(i) : Coeff(0.0));
    return Poly::from_coeffs(std::move(cs));
}

}  // namespace

MatSeries apply_poly(const Poly& p, const MatSeries& t) {
    if (p.is_zero()) return MatSeries::zero(t.n(), t.ram(), t.hi());
    MatSeries acc =
        MatSeries::constant(scaled(Mat::identity(t.n()), p.coeff(p.degree())), t.ram());
    for (std::int64_t i = p.degree() - 1; i >= 0; --i) {
        acc = mul(acc, t);
        if (!p.coeff(i).is_zero())
            acc = add(acc, MatSeries::constant(scaled(Mat::identity(t.n()), p.coeff(i)), t.ram()));
    }
    return acc;
}

double VerificationReport::max_axiom_residual() const {
    double m = 0.0;
    for (const auto& [k, v] : axiom_results) m = std::max(m, v);
    return m;
}

bool VerificationReport::pass(Tolerance tol) const {
    return condition_i.pass && condition_ii <= tol.eps_residual &&
           condition_iii <= tol.eps_residual && max_axiom_residual() <= tol.eps_residual;
}

VerificationReport check_lemma_conditions(const MatSeries& t, const Poly& f, std::int64_t p,
                                          Tolerance tol) {
    if (p < 1) throw std::domain_error("check_lemma_conditions: p must be positive");
    if (t.ram() % p != 0)
        throw std::domain_error("check_lemma_conditions: series ramification incompatible with p");
    VerificationReport rep;

    // (i) the lowest exponent is finite by representation; record it and
    // whether negative powers occur (the not-from-an-associative-module
    // criterion), plus any mass off the -1/p + Z exponent lattice.
    rep.condition_i.ram = t.ram();
    rep.condition_i.lowest_num = t.is_zero() ? 0 : t.lo();
    rep.condition_i.has_negative_exponent = !t.is_zero() && t.lo() < 0;
    double off = 0.0;
    for (std::int64_t k : t.support())
        if (!on_coset(k, t.ram(), 1, p)) off = std::max(off, t.mode_num(k).max_abs());
    rep.condition_i.off_lattice_norm = off;
    rep.condition_i.pass = off <= tol.eps_eq;

    // (ii) mode commutativity.
    const auto modes = nonzero_modes(t);
    double comm = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i)
        for (std::size_t j = i + 1; j < modes.size(); ++j)
            comm = std::max(comm, (modes[i] * modes[j] - modes[j] * modes[i]).max_abs());
    rep.condition_ii = comm;

    // (iii) dT/dx = f(T) on the honest overlap window.
    const MatSeries dt = derivative(t);
    const MatSeries ft = apply_poly(f, t);
    auto [mx, list] = residual_or_throw(dt, ft, "check_lemma_conditions (iii)");
    rep.condition_iii = mx;
    rep.residual_by_exponent = std::move(list);
    return rep;
}

const char* reason_name(NonexistenceReason r) {
    switch (r) {
        case NonexistenceReason::ok: return "ok";
        case NonexistenceReason::deg_f_not_2: return "deg_f_not_2";
        case NonexistenceReason::f_not_c1t_plus_cp1: return "f_not_c1t_plus_cp1";
        case NonexistenceReason::D_zero: return "D_zero";
    }
    return "unknown";
}

ClassificationResult classify(const Poly& f, std::int64_t p, Tolerance tol) {
    if (p < 1) throw std::domain_error("classify: p must be positive");
    ClassificationResult res;
    std::int64_t deg_eff = -1;
    for (std::int64_t i = 0; i <= f.degree(); ++i)
        if (f.coeff(i).abs() > tol.eps_eq) deg_eff = i;
    if (deg_eff < 0) {
        res.exists = false;
        res.reason = NonexistenceReason::D_zero;
        return res;
    }
    if (p == 1) {
        if (deg_eff != 2) {
            res.exists = false;
            res.reason = NonexistenceReason::deg_f_not_2;
            return res;
        }
        const Coeff c = f.coeff(2);
        const Coeff sum = -(f.coeff(1) / c);
        const Coeff prod = f.coeff(0) / c;
        const Coeff disc = sqrt(sum * sum - 4.0 * prod);
        FamilyDescriptor fam;
        fam.l = 0;
        fam.untwisted = true;
        fam.alpha = Coeff(0.5) * (sum + disc);
        fam.beta = Coeff(0.5) * (sum - disc);
        fam.c = c;
        res.exists = true;
        res.reason = NonexistenceReason::ok;
        res.families = {fam};
        return res;
    }
    // p >= 2: f must be c1*t + c_{p+1}*t^{p+1} with c_{p+1} != 0.
    bool clean = f.coeff(p + 1).abs() > tol.eps_eq;
    for (std::int64_t i = 0; i <= deg_eff && clean; ++i)
        if (i != 1 && i != p + 1 && f.coeff(i).abs() > tol.eps_eq) clean = false;
    if (!clean) {
        res.exists = false;
        res.reason = NonexistenceReason::f_not_c1t_plus_cp1;
        return res;
    }
    res.exists = true;
    res.reason = NonexistenceReason::ok;
    for (std::int64_t l = 0; l < p; ++l) {
        FamilyDescriptor fam;
        fam.l = l;
        fam.untwisted = false;
        fam.c1 = f.coeff(1);
        fam.cp1 = f.coeff(p + 1);
        res.families.push_back(fam);
    }
    return res;
}

PuiseuxSeries solve_scalar_ode(const Poly& f, std::int64_t p, std::int64_t l, std::int64_t hi,
                               Tolerance tol) {
    const auto cls = classify(f, p, tol);
    if (!cls.exists)
        throw std::domain_error(std::string("solve_scalar_ode: no singular solution (") +
                                reason_name(cls.reason) + ")");
    if (l < 0 || l >= p) throw std::domain_error("solve_scalar_ode: l out of range");
    if (hi < -1) throw std::domain_error("solve_scalar_ode: window below the leading term");

    const Poly fe = effective_poly(f, tol.eps_eq);
    const Coeff cm1 = fe.coeff(p + 1);
    const Coeff seed = gamma_root(cm1, p) * pow_int(root_of_unity(p), l);
    // The unknown coefficient enters the matched equation through
    // f'(s)-leading = (p+1) c_{p+1} seed^p x^{-1}.
    const Coeff mu_lead = static_cast<double>(p + 1) * cm1 * pow_int(seed, p);

    std::vector<Coeff> a(static_cast<std::size_t>(hi + 2), Coeff(0.0));
    a[0] = seed;  // numerator -1
    for (std::int64_t k = p - 1; k <= hi; k += p) {
        const PuiseuxSeries partial = PuiseuxSeries::from_coeffs(
            p, -1, std::vector<Coeff>(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k + 1)),
            k);
        const PuiseuxSeries fs = apply_poly(fe, partial);
        const Coeff rhs = fs.coeff_num(k - p);
        const Coeff mult = Coeff(static_cast<double>(k) / static_cast<double>(p)) - mu_lead;
        if (mult.abs() < 1e-6)
            throw ResonanceError("solve_scalar_ode: degenerate coefficient equation", k, p);
        a[static_cast<std::size_t>(k + 1)] = rhs / mult;
    }
    return PuiseuxSeries::from_coeffs(p, -1, std::move(a), hi);
}

namespace {

// Band collection: bands[k][i] is the series entry at (i, i+k).
using BandColl = std::vector<std::vector<PuiseuxSeries>>;

BandColl band_mul(const BandColl& a, const BandColl& b, std::int64_t n, std::int64_t ram,
                  std::int64_t maxband) {
    BandColl c(static_cast<std::size_t>(maxband) + 1);
    for (std::int64_t off = 0; off <= maxband; ++off) {
        auto& row = c[static_cast<std::size_t>(off)];
        row.reserve(static_cast<std::size_t>(n - off));
        for (std::int64_t i = 0; i + off < n; ++i) {
            PuiseuxSeries acc = PuiseuxSeries::zero(ram, PuiseuxSeries::kExactHi);
            bool any = false;
            for (std::int64_t ka = 0; ka <= off; ++ka) {
                const std::int64_t kb = off - ka;
                if (ka >= static_cast<std::int64_t>(a.size()) ||
                    kb >= static_cast<std::int64_t>(b.size()))
                    continue;
                const auto& ba = a[static_cast<std::size_t>(ka)];
                const auto& bb = b[static_cast<std::size_t>(kb)];
                if (ba.empty() || bb.empty()) continue;
                const PuiseuxSeries prod = mul(ba[static_cast<std::size_t>(i)],
                                               bb[static_cast<std::size_t>(i + ka)]);
                acc = any ? add(acc, prod) : prod;
                any = true;
            }
            row.push_back(std::move(acc));
        }
    }
    return c;
}

// One band entry of the linear recursion (d/dx - mu) b = r, seeded from H at
// the resonant exponent -1-1/p.
PuiseuxSeries solve_band_entry(const PuiseuxSeries& r, const PuiseuxSeries& mu, Coeff seed,
                               std::int64_t p, std::int64_t hi_target) {
    const std::int64_t resonant = -p - 1;
    std::int64_t start = resonant;
    if (!r.is_zero()) start = std::min(start, r.lo() + p);
    const Coeff mu_at_mp = (mu.known(-p)) ? mu.coeff_num(-p) : Coeff(0.0);

    std::vector<Coeff> b;
    std::vector<std::int64_t> bsupp;
    std::int64_t top = start - 1;
    for (std::int64_t kk = start; kk <= hi_target; ++kk) {
        const std::int64_t m = kk - p;
        if (m > r.hi()) break;
        if (!bsupp.empty() && m - bsupp.front() > mu.hi()) break;
        Coeff rhs = (m >= r.lo() && m <= r.stored_top()) ? r.coeff_num(m) : Coeff(0.0);
        for (std::int64_t idx : bsupp) {
            const std::int64_t mi = m - idx;
            if (mi < mu.lo() || mi > mu.stored_top()) continue;
            rhs += mu.coeff_num(mi) * b[static_cast<std::size_t>(idx - start)];
        }
        const Coeff mult =
            Coeff(static_cast<double>(kk) / static_cast<double>(p)) - mu_at_mp;
        Coeff val;
        if (mult.abs() < 1e-6) {
            if (kk != resonant)
                throw ResonanceError("solve_band_recursion: degenerate equation", kk, p);
            val = seed;
        } else {
            val = rhs / mult;
        }
        b.push_back(val);
        if (!val.is_zero()) bsupp.push_back(kk);
        top = kk;
    }
    if (top < start) return PuiseuxSeries::zero(p, top);
    return PuiseuxSeries::from_coeffs(p, start, std::move(b), top);
}

}  // namespace

MatSeries solve_band_recursion(const PuiseuxSeries& s, const Mat& h, const Poly& f,
                               std::int64_t p, std::int64_t hi, Tolerance tol) {
    const std::int64_t n = h.n();
    if (s.ram() != p) throw std::domain_error("solve_band_recursion: s must have ramification p");
    require_strictly_upper(h, tol.eps_eq, "solve_band_recursion");

    const Poly fe = effective_poly(f, tol.eps_eq);
    const PuiseuxSeries mu = apply_poly(fe.derivative(), s);

    BandColl bands(static_cast<std::size_t>(n));
    bands[0].assign(static_cast<std::size_t>(n), s);

    for (std::int64_t k = 1; k < n; ++k) {
        // Right-hand side: band k of sum_{j>=2} c_j W^j with W the bands < k.
        BandColl w(bands.begin(), bands.begin() + static_cast<std::ptrdiff_t>(k));
        std::vector<PuiseuxSeries> rhs(static_cast<std::size_t>(n - k),
                                       PuiseuxSeries::zero(p, PuiseuxSeries::kExactHi));
        BandColl pw = w;
        for (std::int64_t j = 2; j <= fe.degree(); ++j) {
            pw = band_mul(pw, w, n, p, k);
            if (fe.coeff(j).is_zero()) continue;
            const auto& bk = pw[static_cast<std::size_t>(k)];
            for (std::int64_t e = 0; e + k < n; ++e)
                rhs[static_cast<std::size_t>(e)] =
                    add(rhs[static_cast<std::size_t>(e)],
                        bk[static_cast<std::size_t>(e)].scaled(fe.coeff(j)));
        }
        auto& out = bands[static_cast<std::size_t>(k)];
        out.reserve(static_cast<std::size_t>(n - k));
        for (std::int64_t e = 0; e + k < n; ++e)
            out.push_back(
                solve_band_entry(rhs[static_cast<std::size_t>(e)], mu, h.at(e, e + k), p, hi));
    }

    // Assemble the bands into one matrix series.
    MatSeries t = MatSeries::from_scalar(s, n);
    for (std::int64_t k = 1; k < n; ++k) {
        std::int64_t blo = PuiseuxSeries::kExactHi;
        std::int64_t bhi = PuiseuxSeries::kExactHi;
        for (const auto& e : bands[static_cast<std::size_t>(k)]) {
            if (!e.is_zero()) blo = std::min(blo, e.lo());
            bhi = std::min(bhi, e.hi());
        }
        MatSeries bs = MatSeries::zero(n, p, bhi);
        if (blo <= bhi) {
            std::vector<Mat> mats(static_cast<std::size_t>(bhi - blo + 1), Mat::zero(n));
            for (std::int64_t e = 0; e + k < n; ++e) {
                const auto& ser = bands[static_cast<std::size_t>(k)][static_cast<std::size_t>(e)];
                for (std::int64_t num : ser.support())
                    mats[static_cast<std::size_t>(num - blo)].at(e, e + k) = ser.coeff_num(num);
            }
            bs = MatSeries::from_coeffs(n, p, blo, std::move(mats), bhi);
        }
        t = add(t, bs);
    }
    return t.truncated(hi);
}

VerificationReport check_module_axioms_series(const MatSeries& t, const Poly& f, std::int64_t p,
                                              std::int64_t degmax, Tolerance tol) {
    if (degmax < 1) throw std::domain_error("check_module_axioms: degmax must be >= 1");
    (void)tol;  // thresholds are applied by callers; the report carries raw residuals
    VerificationReport rep;
    rep.condition_i.ram = t.ram();

    std::vector<MatSeries> tp;
    tp.push_back(MatSeries::identity_series(t.n(), t.ram()));
    for (std::int64_t j = 1; j <= degmax; ++j) {
        MatSeries next = mul(tp.back(), t);
        if (!t.is_zero() && next.is_zero() && next.hi() < next.lo())
            throw WindowExhausted("check_module_axioms: window exhausted at generator degree " +
                                      std::to_string(j),
                                  j - 1, t.ram());
        tp.push_back(std::move(next));
    }

    // (M2) identity field.
    rep.axiom_results["M2"] = max_abs_diff(tp[0], MatSeries::identity_series(t.n(), t.ram())).first;

    for (std::int64_t j = 1; j <= degmax; ++j)
        for (std::int64_t k = j; j + k <= degmax; ++k) {
            const MatSeries pjk = mul(tp[static_cast<std::size_t>(j)], tp[static_cast<std::size_t>(k)]);
            const MatSeries pkj = mul(tp[static_cast<std::size_t>(k)], tp[static_cast<std::size_t>(j)]);
            const std::string suffix = std::to_string(j) + "," + std::to_string(k);
            rep.axiom_results["M3:" + suffix] = max_abs_diff(pjk, pkj).first;
            rep.axiom_results["M4:" + suffix] =
                residual_or_throw(tp[static_cast<std::size_t>(j + k)], pjk, "check_module_axioms (M4)")
                    .first;
        }

    for (std::int64_t j = 1; j <= degmax; ++j) {
        // (M5) on t^j: Y(D t^j, x) = d/dx Y(t^j, x).
        const Poly da = f * Poly::t_power(j - 1).scaled(Coeff(static_cast<double>(j)));
        const MatSeries lhs = apply_poly(da, t);
        const MatSeries rhs = derivative(tp[static_cast<std::size_t>(j)]);
        rep.axiom_results["M5:" + std::to_string(j)] =
            residual_or_throw(lhs, rhs, "check_module_axioms (M5)").first;

        // (M1) grading: exponents of Y(t^j, x) lie on -(j mod p)/p + Z.
        double off = 0.0;
        const MatSeries& pj = tp[static_cast<std::size_t>(j)];
        for (std::int64_t num : pj.support())
            if (!on_coset(num, pj.ram(), j % p, p)) off = std::max(off, pj.mode_num(num).max_abs());
        rep.axiom_results["M1:" + std::to_string(j)] = off;
    }
    return rep;
}

Mat pole_mode_nilpotent(const MatSeries& t, std::int64_t p, Tolerance tol) {
    if (t.ram() % p != 0)
        throw std::domain_error("pole_mode_nilpotent: ramification incompatible with p");
    const std::int64_t num = -t.ram() - t.ram() / p;  // exponent -1 - 1/p
    return nilpotent_part(t.mode_num(num), tol.eps_eq);
}

bool check_indecomposable_series(const MatSeries& t, std::int64_t p, Tolerance tol,
                                 std::vector<std::int64_t>* profile_out) {
    const Mat h = pole_mode_nilpotent(t, p, tol);
    const auto prof = rank_profile(h, tol.eps_eq);
    if (profile_out) *profile_out = prof;
    for (std::int64_t k = 0; k <= t.n(); ++k)
        if (prof[static_cast<std::size_t>(k)] != t.n() - k) return false;
    return true;
}

double mode_algebra_membership_residual(const MatSeries& t, std::int64_t p, Tolerance tol) {
    const Mat h = pole_mode_nilpotent(t, p, tol);
    const double hn = frobenius_norm(h);
    if (hn <= 1e-300) return 0.0;

    const auto gens = nonzero_modes(t);
    MatSpan span;
    span.absorb(Mat::identity(t.n()), 1e-9);
    // Close the unital span under right multiplication by the generators.
    std::vector<Mat> frontier = span.basis;
    while (!frontier.empty()) {
        std::vector<Mat> next;
        for (const Mat& b : frontier)
            for (const Mat& g : gens) {
                const Mat cand = b * g;
                const std::size_t before = span.basis.size();
                if (span.absorb(cand, 1e-9) && span.basis.size() > before)
                    next.push_back(span.basis.back());
            }
        frontier = std::move(next);
        if (static_cast<std::int64_t>(span.basis.size()) >= t.n() * t.n()) break;
    }
    return span.residual_of(h) / hn;
}

double modes_polynomial_in_nilpotent_residual(const MatSeries& t, std::int64_t p, Tolerance tol) {
    const Mat h = pole_mode_nilpotent(t, p, tol);
    MatSpan span;
    Mat pw = Mat::identity(t.n());
    for (std::int64_t k = 0; k < t.n(); ++k) {
        span.absorb(pw, 1e-9);
        pw = pw * h;
    }
    double worst = 0.0;
    for (const Mat& m : nonzero_modes(t)) {
        const double nrm = frobenius_norm(m);
        if (nrm <= 1e-300) continue;
        worst = std::max(worst, span.residual_of(m) / nrm);
    }
    return worst;
}

}  // namespace polyvert
