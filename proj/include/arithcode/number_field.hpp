#pragma once

#include "arithcode/poly.hpp"
#include "arithcode/qmatrix.hpp"
#include "arithcode/rational.hpp"

namespace arithcode {

struct RamifiedPrimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of a number field, as exact rational coordinates on the field's
// integral basis.
struct NFElem {
    std::vector<Rational> coords;

    bool operator==(const NFElem& o) const = default;
    bool is_zero() const {
        for (const auto& c : coords)
            if (c != 0) return false;
        return true;
    }
};

struct FieldVerification {
    bool signature_ok = false;       // r1 counted by Sturm, r1 + 2 r2 == n
    bool basis_full_rank = false;
    bool index_integral = false;     // disc(f) = index^2 * disc_F with integral index
    bool ring_closed = false;        // products of basis elements stay in the Z-span
    bool contains_one = false;
    bool irreducible_certified = false;  // mod-p certificate found (sufficient condition)
    Int index = 0;

    bool ok() const {
        return signature_ok && basis_full_rank && index_integral && ring_closed && contains_one;
    }
};

// A number field F = Q[X]/(f) together with a declared integral basis.
// The basis rows give Z_F generators in power-basis coordinates.
class NumberField {
  public:
    // poly: monic integer coefficients (c0..cn, cn = 1).
    // basis: n x n rational matrix, rows = integral basis on the power basis.
    NumberField(std::vector<Int> poly_coeffs, QMatrix basis, int r1, int r2);

    static NumberField rationals();  // F = Q

    int degree() const { return n_; }
    int r1() const { return r1_; }
    int r2() const { return r2_; }
    const std::vector<Int>& poly_coeffs() const { return poly_; }
    const QPoly& poly() const { return qpoly_; }
    const QMatrix& integral_basis() const { return basis_; }
    const QMatrix& basis_inverse() const { return basis_inv_; }

    Int discriminant_signed() const { return disc_signed_; }
    Int discriminant_abs() const { return abs(disc_signed_); }
    double root_discriminant() const;
    Int poly_discriminant_num() const { return poly_disc_; }
    const Int& index() const { return index_; }  // [Z_F : Z[theta]]

    const FieldVerification& verification() const { return verif_; }

    NFElem zero() const { return NFElem{std::vector<Rational>(n_)}; }
    NFElem one() const;
    NFElem from_rational(const Rational& r) const;
    NFElem from_power_basis(const std::vector<Rational>& pb) const;
    std::vector<Rational> to_power_basis(const NFElem& x) const;

    NFElem add(const NFElem& x, const NFElem& y) const;
    NFElem sub(const NFElem& x, const NFElem& y) const;
    NFElem mul(const NFElem& x, const NFElem& y) const;
    NFElem mul_scalar(const NFElem& x, const Rational& c) const;
    NFElem neg(const NFElem& x) const;
    // Multiplicative inverse; throws for zero.
    NFElem inv(const NFElem& x) const;

    // Determinant and trace of the multiplication-by-x matrix.
    std::pair<Rational, Rational> norm_trace(const NFElem& x) const;
    Rational norm(const NFElem& x) const { return norm_trace(x).first; }
    Rational trace(const NFElem& x) const { return norm_trace(x).second; }

    bool is_integral(const NFElem& x) const;  // lies in Z_F (integer coords)

  private:
    QMatrix mul_matrix(const NFElem& x) const;  // on the power basis
    void verify();

    int n_;
    int r1_, r2_;
    std::vector<Int> poly_;
    QPoly qpoly_;
    QMatrix basis_, basis_inv_;
    Int poly_disc_;
    Int disc_signed_;
    Int index_;
    FieldVerification verif_;
};

// Degrees (with multiplicity) of the irreducible factors of f mod p.
// Throws RamifiedPrimeError if p divides disc(f).
std::vector<int> factor_degrees_mod_p(const std::vector<Int>& poly, uint64_t p);

}  // namespace arithcode
