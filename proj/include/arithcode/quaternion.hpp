#pragma once

#include "arithcode/number_field.hpp"

#include <memory>

namespace arithcode {

// Element of a quaternion algebra, coordinates on the basis {1, i, j, ij}.
struct AlgElem {
    NFElem x, y, z, w;

    bool operator==(const AlgElem& o) const = default;
};

// Quaternion algebra (a,b | F): i^2 = a, j^2 = b, ij = -ji. Constructive
// element arithmetic is limited to degree 2; higher-degree content is
// formula-level and lives in the volumes module.
class QuatAlgebra {
  public:
    QuatAlgebra(std::shared_ptr<const NumberField> F, NFElem a, NFElem b);

    const NumberField& field() const { return *F_; }
    std::shared_ptr<const NumberField> field_ptr() const { return F_; }
    const NFElem& a() const { return a_; }
    const NFElem& b() const { return b_; }
    int degree() const { return 2; }

    AlgElem zero() const;
    AlgElem one() const;
    AlgElem from_scalar(const Rational& c) const;
    AlgElem gen_i() const;
    AlgElem gen_j() const;
    AlgElem gen_k() const;

    AlgElem add(const AlgElem& u, const AlgElem& v) const;
    AlgElem sub(const AlgElem& u, const AlgElem& v) const;
    AlgElem neg(const AlgElem& u) const;
    AlgElem mul(const AlgElem& u, const AlgElem& v) const;
    AlgElem mul_scalar(const AlgElem& u, const Rational& c) const;
    AlgElem conj(const AlgElem& u) const;  // trd(u) - u

    NFElem nrd(const AlgElem& u) const;  // x^2 - a y^2 - b z^2 + ab w^2
    NFElem trd(const AlgElem& u) const;  // 2x
    // |N_{F/Q}(nrd(u))^d|, the absolute norm.
    Rational absolute_norm(const AlgElem& u) const;

    // Inverse of a unit (nrd != 0): conj(u)/nrd(u).
    AlgElem inverse(const AlgElem& u) const;

    bool is_zero(const AlgElem& u) const { return u.x.is_zero() && u.y.is_zero() && u.z.is_zero() && u.w.is_zero(); }

    // Flattened coordinates on (integral basis of F) x {1,i,j,ij}; length 4n.
    std::vector<Rational> flatten(const AlgElem& u) const;
    AlgElem unflatten(const std::vector<Rational>& v) const;

  private:
    std::shared_ptr<const NumberField> F_;
    NFElem a_, b_, ab_;
};

}  // namespace arithcode
