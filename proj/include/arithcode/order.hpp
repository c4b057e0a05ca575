#pragma once

#include "arithcode/quaternion.hpp"
#include "arithcode/qmatrix.hpp"

namespace arithcode {

struct NotFullRankError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OrderReport {
    bool is_ring = false;
    bool is_integral = false;
    bool contains_one = false;
    Int disc_norm = 0;   // |det Tr_{F/Q}(trd(b_i conj(b_j)))|
    bool is_maximal = false;

    bool ok() const { return is_ring && is_integral && contains_one; }
};

// An order given by an explicit Z-basis of 4n elements. Verification is
// exact; maximality is certified against the absolute discriminant
// Delta_F^{d^2} N(delta_A)^d (which reduces to N(delta_A)^2 over Q).
class Order {
  public:
    Order(std::shared_ptr<const QuatAlgebra> A, std::vector<AlgElem> basis);

    const QuatAlgebra& algebra() const { return *A_; }
    std::shared_ptr<const QuatAlgebra> algebra_ptr() const { return A_; }
    const std::vector<AlgElem>& basis() const { return basis_; }
    size_t rank() const { return basis_.size(); }

    // Coordinates of an algebra element on the order basis (exact).
    std::vector<Rational> coords(const AlgElem& u) const;
    bool contains(const AlgElem& u) const;
    AlgElem from_coords(const std::vector<Int>& c) const;
    AlgElem from_coords(const std::vector<Rational>& c) const;

    // N(delta_A) to certify maximality against.
    OrderReport verify(const Int& reduced_disc_norm) const;

  private:
    std::shared_ptr<const QuatAlgebra> A_;
    std::vector<AlgElem> basis_;
    QMatrix coord_matrix_;      // rows = flattened basis elements
    QMatrix coord_matrix_inv_;
};

}  // namespace arithcode
