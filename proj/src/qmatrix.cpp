#include "arithcode/qmatrix.hpp"

#include <stdexcept>

namespace arithcode {

QMatrix QMatrix::identity(size_t n) {
    QMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("QMatrix::mul: shape mismatch");
    QMatrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Rational& x = at(i, k);
            if (x == 0) continue;
            for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

QMatrix QMatrix::transpose() const {
    QMatrix r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Rational QMatrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("QMatrix::det: not square");
    QMatrix w = *this;
    size_t n = rows_;
    Rational d(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && w.at(piv, col) == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            for (size_t j = 0; j < n; ++j) std::swap(w.at(piv, j), w.at(col, j));
            d = -d;
        }
        d *= w.at(col, col);
        Rational inv = 1 / w.at(col, col);
        for (size_t i = col + 1; i < n; ++i) {
            if (w.at(i, col) == 0) continue;
            Rational f = w.at(i, col) * inv;
            for (size_t j = col; j < n; ++j) w.at(i, j) -= f * w.at(col, j);
        }
    }
    return d;
}

size_t QMatrix::rank() const {
    QMatrix w = *this;
    size_t r = 0;
    for (size_t col = 0; col < cols_ && r < rows_; ++col) {
        size_t piv = r;
        while (piv < rows_ && w.at(piv, col) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != r)
            for (size_t j = 0; j < cols_; ++j) std::swap(w.at(piv, j), w.at(r, j));
        Rational inv = 1 / w.at(r, col);
        for (size_t i = r + 1; i < rows_; ++i) {
            if (w.at(i, col) == 0) continue;
            Rational f = w.at(i, col) * inv;
            for (size_t j = col; j < cols_; ++j) w.at(i, j) -= f * w.at(r, j);
        }
        ++r;
    }
    return r;
}

std::optional<QMatrix> QMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("QMatrix::inverse: not square");
    size_t n = rows_;
    QMatrix w = *this;
    QMatrix inv = identity(n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && w.at(piv, col) == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != col)
            for (size_t j = 0; j < n; ++j) {
                std::swap(w.at(piv, j), w.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        Rational pinv = 1 / w.at(col, col);
        for (size_t j = 0; j < n; ++j) {
            w.at(col, j) *= pinv;
            inv.at(col, j) *= pinv;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || w.at(i, col) == 0) continue;
            Rational f = w.at(i, col);
            for (size_t j = 0; j < n; ++j) {
                w.at(i, j) -= f * w.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

std::vector<Rational> QMatrix::solve_left(const std::vector<Rational>& rhs) const {
    auto inv = inverse();
    if (!inv) throw std::domain_error("QMatrix::solve_left: singular");
    return vec_mat(rhs, *inv);
}

std::vector<Rational> mat_vec(const QMatrix& m, const std::vector<Rational>& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("mat_vec: shape mismatch");
    std::vector<Rational> r(m.rows());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

std::vector<Rational> vec_mat(const std::vector<Rational>& v, const QMatrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("vec_mat: shape mismatch");
    std::vector<Rational> r(m.cols());
    for (size_t j = 0; j < m.cols(); ++j)
        for (size_t i = 0; i < m.rows(); ++i) r[j] += v[i] * m.at(i, j);
    return r;
}

void ZLattice::add_generator(const std::vector<Int>& v) {
    if (v.size() != dim_) throw std::invalid_argument("ZLattice: wrong dimension");
    pending_.push_back(v);
    reduce();
}

// Row-echelon reduction over Z: maintains rows sorted by pivot column, each
// pivot positive, entries above a pivot reduced mod the pivot.
void ZLattice::reduce() {
    for (auto& v : pending_) basis_.push_back(v);
    pending_.clear();

    std::vector<std::vector<Int>> rows = std::move(basis_);
    basis_.clear();
    // Gaussian elimination with gcd steps, column by column.
    size_t start = 0;
    for (size_t col = 0; col < dim_ && start < rows.size(); ++col) {
        // Repeatedly combine rows to leave a single nonzero entry in col.
        while (true) {
            size_t best = SIZE_MAX;
            for (size_t i = start; i < rows.size(); ++i) {
                if (rows[i][col] != 0 && (best == SIZE_MAX || abs(rows[i][col]) < abs(rows[best][col])))
                    best = i;
            }
            if (best == SIZE_MAX) break;
            std::swap(rows[start], rows[best]);
            bool again = false;
            for (size_t i = start + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                Int q = rows[i][col] / rows[start][col];  // truncated division is fine here
                for (size_t j = 0; j < dim_; ++j) rows[i][j] -= q * rows[start][j];
                if (rows[i][col] != 0) again = true;
            }
            if (!again) break;
        }
        if (start < rows.size() && rows[start][col] != 0) {
            if (rows[start][col] < 0)
                for (auto& x : rows[start]) x = -x;
            ++start;
        }
    }
    for (size_t i = 0; i < start; ++i) basis_.push_back(std::move(rows[i]));
}

bool ZLattice::contains(const std::vector<Int>& v) const {
    if (v.size() != dim_) throw std::invalid_argument("ZLattice: wrong dimension");
    std::vector<Int> w = v;
    for (const auto& row : basis_) {
        size_t piv = 0;
        while (piv < dim_ && row[piv] == 0) ++piv;
        if (piv == dim_) continue;
        if (w[piv] % row[piv] != 0) return false;
        Int q = w[piv] / row[piv];
        if (q != 0)
            for (size_t j = 0; j < dim_; ++j) w[j] -= q * row[j];
    }
    for (const auto& x : w)
        if (x != 0) return false;
    return true;
}

}  // namespace arithcode
