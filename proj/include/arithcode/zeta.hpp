#pragma once

#include "arithcode/number_field.hpp"

#include <map>

namespace arithcode {

struct CutoffTooSmallError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated Euler product for zeta_F(j) together with a rigorous bound on
// the relative truncation error: the true value lies in
// [value * (1 - error_bound), value * (1 + error_bound)].
struct ZetaValue {
    double value = 0;
    double error_bound = 0;  // relative
    uint64_t prime_cutoff = 0;
    std::vector<uint64_t> skipped_primes;  // ramified primes with no supplied factor

    double lower() const { return value * (1 - error_bound); }
    double upper() const { return value * (1 + error_bound); }
};

struct ZetaOptions {
    // Euler factors at primes dividing disc(defining_poly), as the local
    // factor value prod_{p | p} (1 - N(p)^{-j})^{-1}. Missing primes are
    // skipped and the error bracket widened by (1 - p^{-j})^{±n}.
    std::map<uint64_t, double> ramified_factors;
    double error_cap = 1e-2;  // CutoffTooSmall above this
};

ZetaValue dedekind_zeta(const NumberField& F, int j, uint64_t prime_cutoff,
                        const ZetaOptions& opts = {});

}  // namespace arithcode
