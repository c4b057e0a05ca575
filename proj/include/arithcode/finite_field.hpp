#pragma once

#include "arithcode/poly.hpp"

#include <memory>

namespace arithcode {

struct NotPrimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of F_{p^f}: coefficient vector of length f on the power basis of
// the field modulus (coeffs[i] < p).
using FFElem = std::vector<uint64_t>;

// F_{p^f} with a deterministic modulus: the lexicographically first monic
// irreducible polynomial of degree f over F_p (coefficient counter with the
// constant coefficient fastest). Reports are bit-reproducible.
class FiniteField {
  public:
    FiniteField(uint64_t p, int f);
    // Explicit modulus (must be monic irreducible of degree f).
    FiniteField(uint64_t p, int f, FpPoly modulus);

    uint64_t p() const { return p_; }
    int f() const { return f_; }
    uint64_t size() const;  // p^f, throws if it does not fit in 64 bits
    const FpPoly& modulus() const { return modulus_; }

    FFElem zero() const { return FFElem(f_, 0); }
    FFElem one() const;
    FFElem from_uint(uint64_t v) const;        // image of an integer
    FFElem from_index(uint64_t idx) const;     // base-p digits, for enumeration
    uint64_t to_index(const FFElem& x) const;

    bool is_zero(const FFElem& x) const;
    FFElem add(const FFElem& x, const FFElem& y) const;
    FFElem sub(const FFElem& x, const FFElem& y) const;
    FFElem neg(const FFElem& x) const;
    FFElem mul(const FFElem& x, const FFElem& y) const;
    FFElem inverse(const FFElem& x) const;  // throws on zero
    FFElem frobenius(const FFElem& x) const;  // x^p
    FFElem pow(const FFElem& x, const Int& e) const;

  private:
    uint64_t p_;
    int f_;
    FpPoly modulus_;
};

// d x d matrix over a finite field, row-major.
class FFMatrix {
  public:
    FFMatrix() = default;
    FFMatrix(std::shared_ptr<const FiniteField> fld, int d);
    static FFMatrix identity(std::shared_ptr<const FiniteField> fld, int d);

    int dim() const { return d_; }
    const FiniteField& field() const { return *fld_; }
    std::shared_ptr<const FiniteField> field_ptr() const { return fld_; }

    FFElem& at(int i, int j) { return a_[i * d_ + j]; }
    const FFElem& at(int i, int j) const { return a_[i * d_ + j]; }

    FFMatrix operator+(const FFMatrix& o) const;
    FFMatrix operator-(const FFMatrix& o) const;
    FFMatrix operator*(const FFMatrix& o) const;
    FFMatrix scale(const FFElem& c) const;

    int rank() const;
    FFElem det() const;
    FFElem trace() const;
    bool is_zero() const;

    bool operator==(const FFMatrix& o) const { return d_ == o.d_ && a_ == o.a_; }

    // Canonical integer key (base-p digits of all entries), for dedup/sorting.
    std::vector<uint64_t> key() const;

  private:
    std::shared_ptr<const FiniteField> fld_;
    int d_ = 0;
    std::vector<FFElem> a_;
};

}  // namespace arithcode
