#pragma once

#include "arithcode/rational.hpp"

#include <set>

namespace arithcode {

// Classical Hilbert symbol (a,b)_v over Q. v = 0 denotes the infinite place.
int hilbert_symbol(const Rational& a, const Rational& b, uint64_t v);

struct Ramification {
    std::set<uint64_t> finite;  // ramified rational primes
    bool real_ramified = false; // the infinite place
    Int reduced_discriminant_norm = 1;  // N(delta_A) = product of finite ramified primes (d = 2)

    bool is_division() const { return !finite.empty() || real_ramified; }
    size_t place_count() const { return finite.size() + (real_ramified ? 1 : 0); }
};

// Ramification set of (a,b | Q) via Hilbert symbols. Product formula implies
// even cardinality; checked.
Ramification ramification_set(const Rational& a, const Rational& b);

}  // namespace arithcode
