#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace arithcode {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p/q" or "p". Throws on malformed input or zero denominator.
Rational parse_rational(const std::string& s);

std::string to_string(const Rational& r);
std::string to_string(const Int& z);

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(const Int& z) { return z.get_d(); }

// Exact conversion: every finite double is a rational with power-of-two denominator.
Rational rational_from_double(double x);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Floor of the exact square root; throws if z < 0.
Int isqrt(const Int& z);

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational pow_rat(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Rational r;
    unsigned long a = e > 0 ? e : -e;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), a);
    if (e < 0) {
        if (base == 0) throw std::domain_error("pow_rat: 0^negative");
        r = 1 / r;
    }
    r.canonicalize();
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

std::vector<uint64_t> primes_up_to(uint64_t bound);

bool is_prime(const Int& n);
Int next_prime(const Int& n);

}  // namespace arithcode
