#include "arithcode/rational.hpp"

#include <cmath>

namespace arithcode {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("parse_rational: bad rational '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }
std::string to_string(const Int& z) { return z.get_str(); }

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite");
    Rational r;
    mpq_set_d(r.get_mpq_t(), x);
    return r;
}

Int isqrt(const Int& z) {
    if (z < 0) throw std::domain_error("isqrt: negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
    return r;
}

std::vector<uint64_t> primes_up_to(uint64_t bound) {
    std::vector<uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> sieve(bound + 1, true);
    sieve[0] = sieve[1] = false;
    for (uint64_t i = 2; i * i <= bound; ++i)
        if (sieve[i])
            for (uint64_t j = i * i; j <= bound; j += i) sieve[j] = false;
    for (uint64_t i = 2; i <= bound; ++i)
        if (sieve[i]) out.push_back(i);
    return out;
}

bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Int next_prime(const Int& n) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

}  // namespace arithcode
