#pragma once

#include "arithcode/rational.hpp"

#include <map>

namespace arithcode {

// Univariate polynomials over Q, coefficient vector with coeffs[i] the
// coefficient of X^i. Trailing zeros are stripped; the zero polynomial has
// an empty coefficient vector and degree -1.
struct QPoly {
    std::vector<Rational> coeffs;

    QPoly() = default;
    explicit QPoly(std::vector<Rational> c) : coeffs(std::move(c)) { normalize(); }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }
    Rational leading() const { return coeffs.empty() ? Rational(0) : coeffs.back(); }

    void normalize();
    Rational eval(const Rational& x) const;

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rational& c) const;

    QPoly derivative() const;
    // Euclidean remainder (this mod o); o must be nonzero.
    QPoly mod(const QPoly& o) const;
    QPoly divexact(const QPoly& o) const;
};

QPoly poly_from_int_coeffs(const std::vector<Int>& c);

// Resultant of two polynomials via subresultant-free rational Euclid
// (desk-scale degrees).
Rational resultant(const QPoly& f, const QPoly& g);

// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f); for monic degree-1, equals 1.
Rational discriminant(const QPoly& f);

// Number of real roots, by Sturm's theorem. Requires squarefree not needed;
// handles repeated roots by counting distinct real roots.
int count_real_roots(const QPoly& f);

bool has_rational_root(const QPoly& f);

// ---------------------------------------------------------------------------
// Polynomials over F_p, p < 2^62, coefficients reduced representatives.
// ---------------------------------------------------------------------------

struct FpPoly {
    uint64_t p = 0;
    std::vector<uint64_t> coeffs;  // coeffs[i] < p, trailing zeros stripped

    FpPoly() = default;
    FpPoly(uint64_t p_, std::vector<uint64_t> c) : p(p_), coeffs(std::move(c)) { normalize(); }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    void normalize();

    static FpPoly x(uint64_t p);
    static FpPoly constant(uint64_t p, uint64_t c);
    static FpPoly from_int_poly(const std::vector<Int>& c, uint64_t p);

    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator*(const FpPoly& o) const;
    FpPoly mod(const FpPoly& o) const;

    // Makes the polynomial monic (multiplies by lc^{-1}); zero stays zero.
    FpPoly monic() const;
};

uint64_t mod_inverse(uint64_t a, uint64_t p);
uint64_t mod_pow(uint64_t base, uint64_t e, uint64_t p);

FpPoly fp_gcd(FpPoly a, FpPoly b);
// x^(p^k) mod f via repeated Frobenius powering.
FpPoly fp_pow_mod(const FpPoly& base, const Int& e, const FpPoly& modulus);

// Distinct-degree factorization of a squarefree monic f over F_p:
// pairs (d, product of all irreducible factors of degree d), increasing d.
std::vector<std::pair<int, FpPoly>> distinct_degree_pieces(const FpPoly& f);

// Map degree -> number of irreducible factors of that degree.
std::map<int, int> distinct_degree_factor(const FpPoly& f);

bool fp_is_irreducible(const FpPoly& f);

// The n-th (0-based) irreducible factor of the target degree, scanning monic
// polynomials in lexicographic coefficient order; used to pick the prime
// ideal factor g of the defining polynomial. f must be squarefree.
FpPoly fp_nth_irreducible_factor(const FpPoly& f, int target_degree, int n = 0);

}  // namespace arithcode
