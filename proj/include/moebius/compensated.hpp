#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "moebius/common.hpp"

namespace moebius {

// Neumaier (Kahan-Babuska) compensated accumulator that also maintains a
// rigorous bound on its own rounding error.
//
// The compensated sum satisfies |fl(sum) - sum| <= 2u * Sigma|x_i| with
// u the unit roundoff, up to O(n u^2) terms that the padding factor absorbs
// for any realistic n (n < 2^40).  On top of that, each pushed term may
// itself be the result of a few rounded operations (log, divide, multiply);
// the caller declares how many ulps of relative error the term carries and
// the bound accounts for ulps * u * |term| per term.
template <class F = double>
struct CompensatedSumT {
    F principal   = F(0);
    F compensation = F(0);
    F abs_accum   = F(0);   // running Sigma |term|
    F ulp_accum   = F(0);   // running Sigma ulps_i * |term_i|
    u64 nterms    = 0;

    static constexpr F unit_roundoff = std::numeric_limits<F>::epsilon() / F(2);

    void add(F term, int term_ulps = 0) {
        F t = principal + term;
        if (std::abs(principal) >= std::abs(term))
            compensation += (principal - t) + term;
        else
            compensation += (term - t) + principal;
        principal = t;
        F a = std::abs(term);
        abs_accum += a;
        if (term_ulps) ulp_accum += F(term_ulps) * a;
        ++nterms;
    }

    F value() const { return principal + compensation; }

    // Upper bound on |value() - exact sum|, assuming each term_i was within
    // ulps_i * u * |term_i| of its exact value.  The 1e-6 pads cover the
    // rounding of abs_accum / ulp_accum themselves.
    F error_bound() const {
        return unit_roundoff * (F(2.000001L) * abs_accum + F(1.000001L) * ulp_accum);
    }

    ErrValue as_errvalue() const {
        return {static_cast<double>(value()), static_cast<double>(error_bound())};
    }
};

using CompensatedSum = CompensatedSumT<double>;

} // namespace moebius
