#pragma once

#include "polyvert/modules.hpp"
#include "polyvert/verify.hpp"

namespace polyvert {

// Module-axiom suite on the generators t^j, j + k <= degmax.
inline VerificationReport check_module_axioms(const TwistedModule& mod, std::int64_t degmax,
                                              Tolerance tol = {}) {
    return check_module_axioms_series(mod.T, mod.f, mod.spec.p, degmax, tol);
}

// Rank-profile indecomposability test on the pole mode's nilpotent part.
inline bool check_indecomposable(const TwistedModule& mod, Tolerance tol = {},
                                 std::vector<std::int64_t>* profile_out = nullptr) {
    if (mod.spec.trivial || mod.T.is_zero()) {
        // Y(t,x) = 0: the action is by scalars, so only n = 1 is indecomposable.
        if (profile_out) profile_out->clear();
        return mod.spec.n == 1;
    }
    return check_indecomposable_series(mod.T, mod.spec.p, tol, profile_out);
}

}  // namespace polyvert
