#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polyvert/coeff.hpp"
#include "polyvert/matser.hpp"
#include "polyvert/polyalg.hpp"
#include "polyvert/puiseux.hpp"

namespace polyvert {

// Horner evaluation of a polynomial on a matrix series.
MatSeries apply_poly(const Poly& p, const MatSeries& t);

struct ConditionIReport {
    bool pass = true;
    std::int64_t lowest_num = 0;  // lowest exponent numerator (over ram)
    std::int64_t ram = 1;
    bool has_negative_exponent = false;   // T not in (End M)[[x^(1/p)]]
    double off_lattice_norm = 0.0;        // mass off the -1/p + Z lattice
};

struct VerificationReport {
    ConditionIReport condition_i{};
    double condition_ii = 0.0;   // max commutator norm over stored mode pairs
    double condition_iii = 0.0;  // max |dT/dx - f(T)| over the valid window
    std::vector<std::pair<std::int64_t, double>> residual_by_exponent;
    std::map<std::string, double> axiom_results;  // axiom name + degrees -> residual
    bool indecomposable = false;
    std::vector<std::int64_t> profile;

    double max_axiom_residual() const;
    bool pass(Tolerance tol) const;
};

// The three module-existence conditions for T = Y(t,x): lowest-degree data,
// mode commutativity, and the matrix ODE dT/dx = f(T).
VerificationReport check_lemma_conditions(const MatSeries& t, const Poly& f, std::int64_t p,
                                          Tolerance tol = {});

enum class NonexistenceReason { ok, deg_f_not_2, f_not_c1t_plus_cp1, D_zero };

const char* reason_name(NonexistenceReason r);

struct FamilyDescriptor {
    std::int64_t l = 0;
    bool untwisted = false;
    Coeff c1, cp1;          // twisted parameters (p >= 1 family)
    Coeff alpha, beta, c;   // untwisted parameters (p = 1)
};

struct ClassificationResult {
    bool exists = false;
    NonexistenceReason reason = NonexistenceReason::ok;
    std::vector<FamilyDescriptor> families;  // one entry per l, all n >= 1
};

// Decision procedure: for p = 1 modules exist iff deg f = 2 (parameters
// recovered as f = c(t-alpha)(t-beta)); for p >= 2 iff
// f = c1*t + c_{p+1}*t^{p+1} with c_{p+1} != 0.
ClassificationResult classify(const Poly& f, std::int64_t p, Tolerance tol = {});

// Coefficient recursion for the singular scalar solution of ds/dx = f(s)
// with leading datum s_{(-1/p)} = gamma_p * zeta_p^l.  Independent of the
// closed-form constructors.
PuiseuxSeries solve_scalar_ode(const Poly& f, std::int64_t p, std::int64_t l, std::int64_t hi,
                               Tolerance tol = {});

// Band-by-band linear recursion reconstructing T from the scalar part s and
// the nilpotent seed H (the mode at exponent -1-1/p).  This is the principal
// independent oracle for the closed-form constructions.
MatSeries solve_band_recursion(const PuiseuxSeries& s, const Mat& h, const Poly& f,
                               std::int64_t p, std::int64_t hi, Tolerance tol = {});

// Module axioms on the generators t^j: identity field, mode commutation,
// multiplicativity, the derivation rule, and the exponent-lattice grading.
VerificationReport check_module_axioms_series(const MatSeries& t, const Poly& f, std::int64_t p,
                                              std::int64_t degmax, Tolerance tol = {});

// Nilpotent part of the mode at exponent -1-1/p.
Mat pole_mode_nilpotent(const MatSeries& t, std::int64_t p, Tolerance tol = {});

// True when the pole mode's nilpotent part has rank profile [n, n-1, ..., 0].
bool check_indecomposable_series(const MatSeries& t, std::int64_t p, Tolerance tol = {},
                                 std::vector<std::int64_t>* profile_out = nullptr);

// Residual of expressing the pole-mode nilpotent part inside the unital
// algebra generated by the stored modes (least squares over that algebra).
double mode_algebra_membership_residual(const MatSeries& t, std::int64_t p, Tolerance tol = {});

// Residual of expressing each stored mode as a polynomial in the pole-mode
// nilpotent part (the companion claim to the generation check).
double modes_polynomial_in_nilpotent_residual(const MatSeries& t, std::int64_t p,
                                              Tolerance tol = {});

}  // namespace polyvert
