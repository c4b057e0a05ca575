#pragma once

#include "arithcode/finite_field.hpp"
#include "arithcode/order.hpp"

namespace arithcode {

struct NoIsomorphismError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotRamifiedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A rational prime p together with the degree-f factor g of the defining
// polynomial mod p that singles out the prime ideal of Z_F above p.
struct PrimeData {
    uint64_t p = 0;
    int residue_degree = 1;
    FpPoly ideal_factor;
    bool unramified_in_A = true;
};

// Requires p coprime to [Z_F : Z[theta]] and p unramified in F. Picks the
// (which+1)-th irreducible degree-f factor in lexicographic order, so a set S
// containing several primes above the same p enumerates them by `which`.
PrimeData make_prime_data(const NumberField& F, uint64_t p, int f, bool unramified_in_A = true,
                          int which = 0);

// Explicit ring isomorphism O/pO -> M_2(F_{q0}) for a prime unramified in A
// and in F. Construction: reduce the order basis into the coordinate algebra
// over F_{q0}, locate a zero divisor by deterministic lexicographic search,
// split off a rank-1 idempotent e, and represent O/pO on the left module
// (O/pO)e. All choices are deterministic, so maps are reproducible.
class SplittingMap {
  public:
    SplittingMap(std::shared_ptr<const Order> order, PrimeData prime);

    const PrimeData& prime() const { return prime_; }
    std::shared_ptr<const FiniteField> field() const { return fq_; }
    const Order& order() const { return *order_; }
    int d() const { return 2; }

    const std::vector<FFMatrix>& basis_images() const { return images_; }
    FFMatrix apply_coords(const std::vector<Int>& order_coords) const;
    FFMatrix apply(const AlgElem& u) const;  // u must lie in the order

    // Reduction Z_F -> F_{q0} along the chosen prime (denominators must be
    // coprime to p).
    FFElem reduce_field(const NFElem& x) const;

  private:
    void build();
    void verify();

    std::shared_ptr<const Order> order_;
    PrimeData prime_;
    std::shared_ptr<const FiniteField> fq_;
    FFElem theta_bar_;
    FFElem abar_, bbar_;
    std::vector<FFMatrix> images_;
};

// Residue map O -> F_{p^2} at a finite prime p ramified in A (quaternion
// case, base field Q). The kernel is the unique maximal two-sided ideal P
// above p; P^2 containing pO is verified at construction.
class RamifiedResidueMap {
  public:
    RamifiedResidueMap(std::shared_ptr<const Order> order, uint64_t p);

    uint64_t p() const { return p_; }
    std::shared_ptr<const FiniteField> field() const { return fq2_; }
    const Order& order() const { return *order_; }

    FFElem apply_coords(const std::vector<Int>& order_coords) const;
    FFElem apply(const AlgElem& u) const;

    // Generators of P in order coordinates (p*e_i plus radical lifts).
    const std::vector<std::vector<Int>>& ideal_generators() const { return ideal_gens_; }
    bool square_contains_pO() const { return square_contains_pO_; }

  private:
    std::shared_ptr<const Order> order_;
    uint64_t p_;
    std::shared_ptr<const FiniteField> fq2_;
    // reduced-row-echelon basis of the radical J of O/pO (F_p vectors)
    std::vector<std::vector<uint64_t>> radical_;
    std::vector<size_t> radical_pivots_;
    std::vector<size_t> quot_positions_;   // non-pivot coordinate positions
    // change of basis from quotient coordinates to (1, gamma)
    uint64_t solve_[4] = {0, 0, 0, 0};     // inverse matrix entries
    FFElem gamma_image_;                   // image of gamma in F_{p^2}
    std::vector<std::vector<Int>> ideal_gens_;
    bool square_contains_pO_ = false;
};

// |O/(pO + xO)| via the rank formula q0^{d(d-r)} and via the dimension of
// the left ideal m*M_d(F_{q0}); the two must agree.
struct QuotientSize {
    Int formula;
    Int left_ideal_count;
    int rank = 0;
};

QuotientSize quotient_size(const SplittingMap& map, const std::vector<Int>& order_coords);
Int quotient_size_formula(const FFMatrix& m);
Int quotient_size_left_ideal(const FFMatrix& m);

}  // namespace arithcode
