#include "arithcode/order.hpp"

namespace arithcode {

Order::Order(std::shared_ptr<const QuatAlgebra> A, std::vector<AlgElem> basis)
    : A_(std::move(A)), basis_(std::move(basis)) {
    const size_t m = 4 * static_cast<size_t>(A_->field().degree());
    if (basis_.size() != m) throw NotFullRankError("Order: basis must have 4n elements");
    coord_matrix_ = QMatrix(m, m);
    for (size_t i = 0; i < m; ++i) {
        auto row = A_->flatten(basis_[i]);
        for (size_t j = 0; j < m; ++j) coord_matrix_.at(i, j) = row[j];
    }
    auto inv = coord_matrix_.inverse();
    if (!inv) throw NotFullRankError("Order: basis is not full rank");
    coord_matrix_inv_ = *inv;
}

std::vector<Rational> Order::coords(const AlgElem& u) const {
    return vec_mat(A_->flatten(u), coord_matrix_inv_);
}

bool Order::contains(const AlgElem& u) const {
    for (const auto& c : coords(u))
        if (!is_integer(c)) return false;
    return true;
}

AlgElem Order::from_coords(const std::vector<Int>& c) const {
    std::vector<Rational> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = Rational(c[i]);
    return from_coords(r);
}

AlgElem Order::from_coords(const std::vector<Rational>& c) const {
    if (c.size() != basis_.size()) throw std::invalid_argument("Order::from_coords: wrong length");
    AlgElem acc = A_->zero();
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        acc = A_->add(acc, A_->mul_scalar(basis_[i], c[i]));
    }
    return acc;
}

OrderReport Order::verify(const Int& reduced_disc_norm) const {
    const NumberField& F = A_->field();
    const size_t m = basis_.size();
    OrderReport rep;

    rep.contains_one = contains(A_->one());

    rep.is_ring = true;
    for (size_t i = 0; i < m && rep.is_ring; ++i)
        for (size_t j = 0; j < m && rep.is_ring; ++j)
            if (!contains(A_->mul(basis_[i], basis_[j]))) rep.is_ring = false;

    rep.is_integral = true;
    for (const auto& b : basis_) {
        if (!F.is_integral(A_->trd(b)) || !F.is_integral(A_->nrd(b))) {
            rep.is_integral = false;
            break;
        }
    }

    // Gram of the conjugate reduced-trace pairing, taken down to Q.
    QMatrix gram(m, m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i; j < m; ++j) {
            NFElem t = A_->trd(A_->mul(basis_[i], A_->conj(basis_[j])));
            Rational tq = F.trace(t);
            gram.at(i, j) = tq;
            gram.at(j, i) = tq;
        }
    Rational det = gram.det();
    if (!is_integer(det)) throw std::logic_error("Order::verify: non-integral discriminant");
    rep.disc_norm = abs(det.get_num());

    // maximal <=> |disc| = Delta_F^{d^2} N(delta)^d  (d = 2)
    Int expected = pow_int(F.discriminant_abs(), 4) * reduced_disc_norm * reduced_disc_norm;
    rep.is_maximal = rep.ok() && rep.disc_norm == expected;
    return rep;
}

}  // namespace arithcode
