#include "polyvert/modules.hpp"

#include <string>

namespace polyvert {

namespace {

// Window padding covering the shrinkage from inversion, the matrix binomial
// factor, and the construction-time existence check.
std::int64_t construct_pad(std::int64_t n, std::int64_t p) { return p * ((n - 1) * p + 12); }

void validate_common(std::int64_t n, std::int64_t p, std::int64_t l, std::int64_t hi) {
    if (n < 1) throw std::domain_error("module construction: n must be positive");
    if (p < 1) throw std::domain_error("module construction: p must be positive");
    if (l < 0 || l >= p) throw std::domain_error("module construction: l out of range");
    if (hi < 0) throw std::domain_error("module construction: truncation bound must be >= 0");
}

void run_existence_check(const MatSeries& t, const Poly& f, std::int64_t p, Tolerance tol,
                         const char* what) {
    const auto rep = check_lemma_conditions(t, f, p, tol);
    if (!rep.condition_i.pass || rep.condition_ii > tol.eps_residual ||
        rep.condition_iii > tol.eps_residual)
        throw std::runtime_error(std::string(what) +
                                 ": constructed series failed the existence conditions"
                                 " (ode residual " +
                                 std::to_string(rep.condition_iii) + ")");
}

// gamma zeta^l * scalar-part and the matrix binomial factor for the twisted
// closed form, built at the padded internal window.
MatSeries assemble_twisted(std::int64_t n, std::int64_t p, std::int64_t l, Coeff c1, Coeff cp1,
                           const Mat& nil_seed, std::int64_t hi_internal, Tolerance tol,
                           Coeff* gamma_out) {
    const Coeff gamma = gamma_root(cp1, p);
    if (gamma_out) *gamma_out = gamma;
    const Coeff lead = gamma * pow_int(root_of_unity(p), l);

    PuiseuxSeries s;       // scalar part, ramification p
    PuiseuxSeries f_pole;  // the pole series multiplying the nilpotent seed, ramification 1
    if (c1.abs() <= tol.eps_eq) {
        s = PuiseuxSeries::monomial(lead, -1, p);
        f_pole = PuiseuxSeries::monomial(Coeff(1.0), -1, 1);
    } else {
        const std::int64_t hi1 = hi_internal / p + n + 4;
        const Coeff u = c1 * Coeff(static_cast<double>(p));
        const PuiseuxSeries e = exp_linear(-u, hi1);
        const PuiseuxSeries d = sub(e, PuiseuxSeries::one());
        s = power_x_times_unit(d.scaled(Coeff(1.0) / (-u)), Rational(-1, p)).scaled(lead);
        f_pole = mul(e, invert(d));
    }
    const MatSeries binom_part = mat_binomial_power(
        f_pole.scaled(Coeff(static_cast<double>(-p))), nil_seed, Rational(-1, p), tol.eps_eq);
    return mul(s, lift_ram(binom_part, p));
}

}  // namespace

Poly family_polynomial(const ModuleSpec& spec) {
    if (spec.family == Family::untwisted) {
        const Coeff a = spec.alpha, b = spec.beta, c = spec.c;
        return Poly::from_coeffs({c * a * b, -(c * (a + b)), c});
    }
    std::vector<Coeff> cs(static_cast<std::size_t>(spec.p) + 2);
    cs[1] = spec.c1;
    cs[static_cast<std::size_t>(spec.p) + 1] = spec.cp1;
    return Poly::from_coeffs(std::move(cs));
}

TwistedModule construct_untwisted(std::int64_t n, Coeff alpha, Coeff beta, Coeff c,
                                  std::int64_t hi, Tolerance tol) {
    validate_common(n, 1, 0, hi);
    if (c.abs() <= tol.eps_eq)
        throw std::domain_error("construct_untwisted: c != 0 required");

    ModuleSpec spec;
    spec.family = Family::untwisted;
    spec.p = 1;
    spec.n = n;
    spec.l = 0;
    spec.alpha = alpha;
    spec.beta = beta;
    spec.c = c;
    spec.hi = hi;
    const Poly f = family_polynomial(spec);
    const Mat j = jordan_block(n);
    const std::int64_t hi_internal = hi + construct_pad(n, 1);

    MatSeries t;
    if ((alpha - beta).abs() <= tol.eps_eq) {
        // T = alpha E - (1/c) sum_i J^i x^{-i-1}, a finite exact series.
        const Coeff mid = Coeff(0.5) * (alpha + beta);
        std::vector<Mat> mats(static_cast<std::size_t>(n) + 1, Mat::zero(n));
        Mat pw = Mat::identity(n);
        for (std::int64_t i = 0; i < n; ++i) {
            mats[static_cast<std::size_t>(n - 1 - i)] = scaled(pw, -(Coeff(1.0) / c));
            pw = pw * j;
        }
        mats[static_cast<std::size_t>(n)] = scaled(Mat::identity(n), mid);
        t = MatSeries::from_coeffs(n, 1, -n, std::move(mats), MatSeries::kExactHi);
    } else {
        const std::int64_t hi1 = hi_internal + n + 4;
        const Coeff u = c * (alpha - beta);
        const PuiseuxSeries e = exp_linear(-u, hi1);
        const PuiseuxSeries d = sub(e, PuiseuxSeries::one());
        const PuiseuxSeries invd = invert(d);
        const PuiseuxSeries f_pole = mul(e, invd);
        const MatSeries binom_part =
            mat_binomial_power(f_pole.scaled(Coeff(-1.0)), j, Rational(-1, 1), tol.eps_eq);
        t = add(MatSeries::constant(scaled(Mat::identity(n), alpha), 1),
                mul(invd.scaled(alpha - beta), binom_part));
    }
    run_existence_check(t.truncated(hi), f, 1, tol, "construct_untwisted");

    // The scalar band's pole coefficient is -1/c in either branch.
    const Coeff lead = t.mode_num(-1).at(0, 0);
    if ((lead - gamma_root(c, 1)).abs() > tol.eps_residual * std::max(1.0, 1.0 / c.abs()))
        throw std::runtime_error("construct_untwisted: scalar pole coefficient mismatch");

    TwistedModule mod;
    mod.spec = spec;
    mod.gamma = gamma_root(c, 1);
    mod.T = t.truncated(hi);
    mod.nil_seed = j;
    mod.f = f;
    return mod;
}

TwistedModule construct_twisted(std::int64_t n, std::int64_t p, std::int64_t l, Coeff c1,
                                Coeff cp1, std::int64_t hi, Tolerance tol) {
    return construct_twisted_with_nilpotent(
        n, p, l, c1, cp1, scaled(jordan_block(n), Coeff(1.0 / static_cast<double>(p))), hi, tol);
}

TwistedModule construct_twisted_with_nilpotent(std::int64_t n, std::int64_t p, std::int64_t l,
                                               Coeff c1, Coeff cp1, const Mat& nil_seed,
                                               std::int64_t hi, Tolerance tol) {
    validate_common(n, p, l, hi);
    if (cp1.abs() <= tol.eps_eq)
        throw std::domain_error(
            "construct_twisted: c_{p+1} != 0 required (no twisted module with Y(t,x) != 0 exists)");
    if (nil_seed.n() != n)
        throw std::domain_error("construct_twisted: seed matrix size mismatch");

    ModuleSpec spec;
    spec.family = Family::twisted;
    spec.p = p;
    spec.n = n;
    spec.l = l;
    spec.c1 = c1;
    spec.cp1 = cp1;
    spec.hi = hi;
    const Poly f = family_polynomial(spec);
    const std::int64_t hi_internal = hi + construct_pad(n, p);

    Coeff gamma;
    MatSeries t = assemble_twisted(n, p, l, c1, cp1, nil_seed, hi_internal, tol, &gamma);
    run_existence_check(t.truncated(hi), f, p, tol, "construct_twisted");

    // The scalar band's leading coefficient pins the branch label l.
    const Coeff lead = t.mode_num(-1).at(0, 0);
    const Coeff expect = gamma * pow_int(root_of_unity(p), l);
    if ((lead - expect).abs() > tol.eps_residual * std::max(1.0, expect.abs()))
        throw std::runtime_error("construct_twisted: scalar leading coefficient mismatch");

    TwistedModule mod;
    mod.spec = spec;
    mod.gamma = gamma;
    mod.T = t.truncated(hi);
    if (mod.T.hi() < hi)
        throw std::runtime_error("construct_twisted: internal padding too small");
    mod.nil_seed = nil_seed;
    mod.f = f;
    return mod;
}

TwistedModule construct_trivial(std::int64_t n, std::int64_t p, Coeff c1, Coeff cp1,
                                std::int64_t hi, Tolerance tol) {
    validate_common(n, p, 0, hi);
    ModuleSpec spec;
    spec.family = Family::twisted;
    spec.p = p;
    spec.n = n;
    spec.l = 0;
    spec.c1 = c1;
    spec.cp1 = cp1;
    spec.hi = hi;
    spec.trivial = true;
    const Poly f = family_polynomial(spec);
    MatSeries t = MatSeries::zero(n, p, hi);
    run_existence_check(t, f, p, tol, "construct_trivial");

    TwistedModule mod;
    mod.spec = spec;
    mod.gamma = Coeff(0.0);
    mod.T = std::move(t);
    mod.nil_seed = Mat::zero(n);
    mod.f = f;
    return mod;
}

MatSeries evaluate_Y(const TwistedModule& mod, const Poly& P) {
    MatSeries r = apply_poly(P, mod.T);
    if (!mod.T.is_zero() && !P.is_zero() && P.degree() >= 1 && r.is_zero() && r.hi() < r.lo())
        throw WindowExhausted("evaluate_Y: truncation window is empty", r.hi(), r.ram());
    return r;
}

MatSeries restrict_to_fixed_subalgebra(const TwistedModule& mod, Tolerance tol,
                                       double* residual_out) {
    const std::int64_t p = mod.spec.p;

    // D must map C[t^p] into itself: D(t^p) = p f t^{p-1} supported on
    // exponents divisible by p.
    const Poly dtp =
        mod.f * Poly::t_power(p - 1).scaled(Coeff(static_cast<double>(p)));
    for (std::int64_t i = 0; i <= dtp.degree(); ++i)
        if (i % p != 0 && dtp.coeff(i).abs() > tol.eps_eq)
            throw std::domain_error(
                "restrict_to_fixed_subalgebra: D does not preserve the fixed subalgebra");

    const MatSeries a = evaluate_Y(mod, Poly::t_power(p));
    if (mod.spec.family == Family::untwisted || mod.spec.trivial) {
        if (residual_out) *residual_out = 0.0;
        return a;
    }

    // Closed form of Y(t^p, x) for the twisted parametrization.
    const std::int64_t n = mod.spec.n;
    const Coeff c1 = mod.spec.c1, cp1 = mod.spec.cp1;
    MatSeries b;
    if (c1.abs() <= tol.eps_eq) {
        const Coeff lead = Coeff(1.0) / (Coeff(static_cast<double>(-p)) * cp1);
        const MatSeries binom_part =
            mat_binomial_power(PuiseuxSeries::monomial(Coeff(static_cast<double>(-p)), -1, 1),
                               mod.nil_seed, Rational(-1, 1), tol.eps_eq);
        b = mul(PuiseuxSeries::monomial(lead, -1, 1), binom_part);
    } else {
        const std::int64_t hi1 = a.hi() / p + n + 4;
        const Coeff u = c1 * Coeff(static_cast<double>(p));
        const PuiseuxSeries e = exp_linear(-u, hi1);
        const PuiseuxSeries d = sub(e, PuiseuxSeries::one());
        const PuiseuxSeries invd = invert(d);
        const PuiseuxSeries scalar = invd.scaled(c1 / cp1);  // (-c1/cp1)(1 - e^{-c1 p x})^{-1}
        const PuiseuxSeries f_pole = mul(e, invd);
        const MatSeries binom_part = mat_binomial_power(
            f_pole.scaled(Coeff(static_cast<double>(-p))), mod.nil_seed, Rational(-1, 1),
            tol.eps_eq);
        b = mul(scalar, binom_part);
    }
    const auto [res, win] = max_abs_diff(a, b);
    if (residual_out) *residual_out = res;
    if (res > tol.eps_residual)
        throw std::runtime_error(
            "restrict_to_fixed_subalgebra: Y(t^p, x) deviates from its closed form (residual " +
            std::to_string(res) + ")");
    return a;
}

Mat pole_mode(const TwistedModule& mod) {
    const std::int64_t ram = mod.T.ram();
    return mod.T.mode_num(-ram - ram / mod.spec.p);
}

}  // namespace polyvert
