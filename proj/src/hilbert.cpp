#include "arithcode/hilbert.hpp"

#include <stdexcept>

namespace arithcode {

namespace {

// v_p(z) and the unit part for nonzero integers.
std::pair<long, Int> split_valuation(Int z, const Int& p) {
    long v = 0;
    while (z % p == 0) {
        z /= p;
        ++v;
    }
    return {v, z};
}

int legendre(const Int& u, const Int& p) { return mpz_legendre(u.get_mpz_t(), p.get_mpz_t()); }

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, uint64_t v) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: zero argument");
    // symbol depends only on square classes; replace x/y by x*y
    Int za = Int(a.get_num()) * Int(a.get_den());
    Int zb = Int(b.get_num()) * Int(b.get_den());

    if (v == 0) return (za < 0 && zb < 0) ? -1 : 1;

    Int p(static_cast<unsigned long>(v));
    if (!is_prime(p)) throw std::invalid_argument("hilbert_symbol: place is not prime");

    auto [alpha, u] = split_valuation(za, p);
    auto [beta, w] = split_valuation(zb, p);

    if (v == 2) {
        auto eps = [](const Int& z) -> Int { return (((z - 1) / 2) % 2 + 2) % 2; };
        auto omega = [](const Int& z) -> Int { return (((z * z - 1) / 8) % 2 + 2) % 2; };
        Int e = eps(u) * eps(w) + Int(alpha) * omega(w) + Int(beta) * omega(u);
        return (e % 2 != 0) ? -1 : 1;
    }

    int s = 1;
    if ((alpha % 2) && (beta % 2) && ((p - 1) / 2) % 2 == 1) s = -s;
    if (beta % 2) s *= legendre(u, p);
    if (alpha % 2) s *= legendre(w, p);
    return s;
}

Ramification ramification_set(const Rational& a, const Rational& b) {
    Ramification out;
    std::set<uint64_t> candidates{2};
    auto add_support = [&](const Rational& r) {
        for (Int z : {Int(r.get_num()), Int(r.get_den())}) {
            z = abs(z);
            for (Int d(2); d * d <= z; d = d + 1)
                while (z % d == 0) {
                    candidates.insert(d.get_ui());
                    z /= d;
                }
            if (z > 1) candidates.insert(z.get_ui());
        }
    };
    add_support(a);
    add_support(b);

    for (uint64_t p : candidates)
        if (hilbert_symbol(a, b, p) == -1) {
            out.finite.insert(p);
            out.reduced_discriminant_norm *= Int(static_cast<unsigned long>(p));
        }
    out.real_ramified = hilbert_symbol(a, b, 0) == -1;

    if (out.place_count() % 2 != 0)
        throw std::logic_error("ramification_set: odd number of ramified places (product formula violated)");
    return out;
}

}  // namespace arithcode
