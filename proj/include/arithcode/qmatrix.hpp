#pragma once

#include "arithcode/rational.hpp"

#include <cstddef>
#include <optional>

namespace arithcode {

// Dense matrix over Q, row-major. Sized for desk scale (<= ~20x20).
class QMatrix {
  public:
    QMatrix() = default;
    QMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static QMatrix identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Rational& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    QMatrix operator*(const QMatrix& o) const;
    QMatrix transpose() const;

    Rational det() const;
    size_t rank() const;
    // Returns the inverse, or nullopt if singular.
    std::optional<QMatrix> inverse() const;

    // Solves x * (*this) = rhs for a row vector x (rhs has cols() entries).
    // Requires the matrix to be square and invertible.
    std::vector<Rational> solve_left(const std::vector<Rational>& rhs) const;

    bool operator==(const QMatrix& o) const = default;

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

std::vector<Rational> mat_vec(const QMatrix& m, const std::vector<Rational>& v);
std::vector<Rational> vec_mat(const std::vector<Rational>& v, const QMatrix& m);

// Hermite normal form machinery for integer lattices, used for lattice
// inclusion tests. Rows generate the lattice; returns a row-style HNF basis.
class ZLattice {
  public:
    explicit ZLattice(size_t dim) : dim_(dim) {}

    void add_generator(const std::vector<Int>& v);
    bool contains(const std::vector<Int>& v) const;
    size_t rank() const { return basis_.size(); }

  private:
    void reduce();
    size_t dim_;
    std::vector<std::vector<Int>> basis_;  // kept in row echelon (HNF-ish) form
    std::vector<std::vector<Int>> pending_;
};

}  // namespace arithcode
