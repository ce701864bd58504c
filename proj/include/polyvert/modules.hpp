#pragma once

#include <cstdint>

#include "polyvert/coeff.hpp"
#include "polyvert/matser.hpp"
#include "polyvert/polyalg.hpp"
#include "polyvert/verify.hpp"

namespace polyvert {

enum class Family { twisted, untwisted };

// Parameters of a constructed module.  The twisted family is parametrized by
// (p, n, l, c1, c_{p+1}); the untwisted one by (n, alpha, beta, c) with p = 1.
// hi is the truncation bound in exponent numerators over p.
struct ModuleSpec {
    Family family = Family::twisted;
    std::int64_t p = 1;
    std::int64_t n = 1;
    std::int64_t l = 0;
    Coeff c1, cp1;
    Coeff alpha, beta, c;
    std::int64_t hi = 20;
    bool trivial = false;
};

// A realized module: the generator field T = Y(t, x) determines Y on all of
// C[t].  nil_seed is the nilpotent matrix behind the matrix binomial factor
// (J_n / p for the standard members).  f is the derivation polynomial.
struct TwistedModule {
    ModuleSpec spec;
    Coeff gamma;
    MatSeries T;
    Mat nil_seed;
    Poly f;
};

// Derivation polynomial determined by the spec parameters.
Poly family_polynomial(const ModuleSpec& spec);

// Indecomposable module with Y(t,x) having a pole, for f = c(t-alpha)(t-beta),
// c != 0.  The lowest exponent of T is exactly -n.  Construction runs the
// module-existence checks and fails loudly if they do not pass.
TwistedModule construct_untwisted(std::int64_t n, Coeff alpha, Coeff beta, Coeff c,
                                  std::int64_t hi, Tolerance tol = {});

// The l-th of the p twisted modules for f = c1*t + c_{p+1}*t^{p+1},
// c_{p+1} != 0 (p = 1 gives the plain-module family in twisted coordinates).
TwistedModule construct_twisted(std::int64_t n, std::int64_t p, std::int64_t l, Coeff c1,
                                Coeff cp1, std::int64_t hi, Tolerance tol = {});

// Same closed form with the standard J_n/p block replaced by an arbitrary
// nilpotent upper-triangular seed; decomposable examples come from here.
TwistedModule construct_twisted_with_nilpotent(std::int64_t n, std::int64_t p, std::int64_t l,
                                               Coeff c1, Coeff cp1, const Mat& nil_seed,
                                               std::int64_t hi, Tolerance tol = {});

// The unique module with Y(t,x) = 0; excluded from classification listings.
TwistedModule construct_trivial(std::int64_t n, std::int64_t p, Coeff c1, Coeff cp1,
                                std::int64_t hi, Tolerance tol = {});

// Y(P(t), x) = P(Y(t, x)); the window shrinks per the product rules and the
// call fails with WindowExhausted when nothing remains.
MatSeries evaluate_Y(const TwistedModule& mod, const Poly& P);

// Y(t^p, x) restricted to the fixed-point subalgebra C[t^p]; checked against
// its closed form, and independent of l.  The closed-form deviation is
// written to residual_out when given.
MatSeries restrict_to_fixed_subalgebra(const TwistedModule& mod, Tolerance tol = {},
                                       double* residual_out = nullptr);

// Mode at the pole exponent -1-1/p (zero when outside the stored range).
Mat pole_mode(const TwistedModule& mod);

}  // namespace polyvert
