#include "arithcode/finite_field.hpp"

#include <stdexcept>

namespace arithcode {

namespace {
inline uint64_t addm(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
}
inline uint64_t subm(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }
inline uint64_t mulm(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

bool small_is_prime(uint64_t p) {
    if (p < 2) return false;
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

FpPoly find_modulus(uint64_t p, int f) {
    if (f == 1) return FpPoly(p, {0, 1});  // x itself; arithmetic is mod p directly
    std::vector<uint64_t> c(f + 1, 0);
    c[f] = 1;
    while (true) {
        FpPoly cand(p, c);
        if (fp_is_irreducible(cand)) return cand;
        int i = 0;
        for (; i < f; ++i) {
            if (++c[i] < p) break;
            c[i] = 0;
        }
        if (i == f) throw std::logic_error("FiniteField: no irreducible modulus found");
    }
}
}  // namespace

FiniteField::FiniteField(uint64_t p, int f) : p_(p), f_(f) {
    if (!small_is_prime(p)) throw NotPrimeError("FiniteField: p is not prime");
    if (f < 1) throw std::invalid_argument("FiniteField: f < 1");
    modulus_ = find_modulus(p, f);
}

FiniteField::FiniteField(uint64_t p, int f, FpPoly modulus) : p_(p), f_(f), modulus_(std::move(modulus)) {
    if (!small_is_prime(p)) throw NotPrimeError("FiniteField: p is not prime");
    if (f < 1) throw std::invalid_argument("FiniteField: f < 1");
    if (f > 1 && (modulus_.degree() != f || !fp_is_irreducible(modulus_)))
        throw std::invalid_argument("FiniteField: modulus not irreducible of degree f");
}

uint64_t FiniteField::size() const {
    unsigned __int128 s = 1;
    for (int i = 0; i < f_; ++i) {
        s *= p_;
        if (s > UINT64_MAX) throw std::overflow_error("FiniteField::size: too large");
    }
    return static_cast<uint64_t>(s);
}

FFElem FiniteField::one() const {
    FFElem e(f_, 0);
    e[0] = 1 % p_;
    return e;
}

FFElem FiniteField::from_uint(uint64_t v) const {
    FFElem e(f_, 0);
    e[0] = v % p_;
    return e;
}

FFElem FiniteField::from_index(uint64_t idx) const {
    FFElem e(f_, 0);
    for (int i = 0; i < f_; ++i) {
        e[i] = idx % p_;
        idx /= p_;
    }
    return e;
}

uint64_t FiniteField::to_index(const FFElem& x) const {
    uint64_t idx = 0;
    for (int i = f_ - 1; i >= 0; --i) idx = idx * p_ + x[i];
    return idx;
}

bool FiniteField::is_zero(const FFElem& x) const {
    for (auto c : x)
        if (c) return false;
    return true;
}

FFElem FiniteField::add(const FFElem& x, const FFElem& y) const {
    FFElem r(f_);
    for (int i = 0; i < f_; ++i) r[i] = addm(x[i], y[i], p_);
    return r;
}

FFElem FiniteField::sub(const FFElem& x, const FFElem& y) const {
    FFElem r(f_);
    for (int i = 0; i < f_; ++i) r[i] = subm(x[i], y[i], p_);
    return r;
}

FFElem FiniteField::neg(const FFElem& x) const {
    FFElem r(f_);
    for (int i = 0; i < f_; ++i) r[i] = x[i] ? p_ - x[i] : 0;
    return r;
}

FFElem FiniteField::mul(const FFElem& x, const FFElem& y) const {
    if (f_ == 1) return FFElem{mulm(x[0], y[0], p_)};
    FpPoly px(p_, x), py(p_, y);
    FpPoly prod = (px * py).mod(modulus_);
    FFElem r(f_, 0);
    for (int i = 0; i <= prod.degree(); ++i) r[i] = prod.coeffs[i];
    return r;
}

FFElem FiniteField::inverse(const FFElem& x) const {
    if (is_zero(x)) throw std::domain_error("FiniteField::inverse: zero");
    if (f_ == 1) return FFElem{mod_inverse(x[0], p_)};
    // extended Euclid in F_p[X]
    FpPoly a(p_, x), b = modulus_;
    FpPoly s0 = FpPoly::constant(p_, 1), s1(p_, {});
    while (!b.is_zero()) {
        // division with quotient
        FpPoly r = a, q(p_, {});
        {
            std::vector<uint64_t> qc(std::max(0, a.degree() - b.degree() + 1), 0);
            uint64_t lcinv = mod_inverse(b.coeffs.back(), p_);
            while (r.degree() >= b.degree()) {
                uint64_t fac = mulm(r.coeffs.back(), lcinv, p_);
                int shift = r.degree() - b.degree();
                qc[shift] = fac;
                for (int i = 0; i <= b.degree(); ++i)
                    r.coeffs[i + shift] = subm(r.coeffs[i + shift], mulm(fac, b.coeffs[i], p_), p_);
                r.normalize();
            }
            q = FpPoly(p_, std::move(qc));
        }
        FpPoly s2 = s0 - q * s1;
        a = b;
        b = r;
        s0 = s1;
        s1 = s2;
    }
    if (a.degree() != 0) throw std::domain_error("FiniteField::inverse: not invertible");
    uint64_t lcinv = mod_inverse(a.coeffs[0], p_);
    FpPoly inv = s0 * FpPoly::constant(p_, lcinv);
    inv = inv.mod(modulus_);
    FFElem r(f_, 0);
    for (int i = 0; i <= inv.degree(); ++i) r[i] = inv.coeffs[i];
    return r;
}

FFElem FiniteField::frobenius(const FFElem& x) const { return pow(x, Int(static_cast<unsigned long>(p_))); }

FFElem FiniteField::pow(const FFElem& x, const Int& e) const {
    if (e < 0) return pow(inverse(x), -e);
    FFElem r = one(), b = x;
    Int exp = e;
    while (exp > 0) {
        if (mpz_odd_p(exp.get_mpz_t())) r = mul(r, b);
        b = mul(b, b);
        exp >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------

FFMatrix::FFMatrix(std::shared_ptr<const FiniteField> fld, int d)
    : fld_(std::move(fld)), d_(d), a_(static_cast<size_t>(d) * d, fld_->zero()) {}

FFMatrix FFMatrix::identity(std::shared_ptr<const FiniteField> fld, int d) {
    FFMatrix m(fld, d);
    for (int i = 0; i < d; ++i) m.at(i, i) = fld->one();
    return m;
}

FFMatrix FFMatrix::operator+(const FFMatrix& o) const {
    FFMatrix r(fld_, d_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = fld_->add(a_[i], o.a_[i]);
    return r;
}

FFMatrix FFMatrix::operator-(const FFMatrix& o) const {
    FFMatrix r(fld_, d_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = fld_->sub(a_[i], o.a_[i]);
    return r;
}

FFMatrix FFMatrix::operator*(const FFMatrix& o) const {
    FFMatrix r(fld_, d_);
    for (int i = 0; i < d_; ++i)
        for (int k = 0; k < d_; ++k) {
            if (fld_->is_zero(at(i, k))) continue;
            for (int j = 0; j < d_; ++j)
                r.at(i, j) = fld_->add(r.at(i, j), fld_->mul(at(i, k), o.at(k, j)));
        }
    return r;
}

FFMatrix FFMatrix::scale(const FFElem& c) const {
    FFMatrix r(fld_, d_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = fld_->mul(a_[i], c);
    return r;
}

int FFMatrix::rank() const {
    FFMatrix w = *this;
    int r = 0;
    for (int col = 0; col < d_ && r < d_; ++col) {
        int piv = r;
        while (piv < d_ && fld_->is_zero(w.at(piv, col))) ++piv;
        if (piv == d_) continue;
        if (piv != r)
            for (int j = 0; j < d_; ++j) std::swap(w.at(piv, j), w.at(r, j));
        FFElem inv = fld_->inverse(w.at(r, col));
        for (int i = r + 1; i < d_; ++i) {
            if (fld_->is_zero(w.at(i, col))) continue;
            FFElem f = fld_->mul(w.at(i, col), inv);
            for (int j = col; j < d_; ++j)
                w.at(i, j) = fld_->sub(w.at(i, j), fld_->mul(f, w.at(r, j)));
        }
        ++r;
    }
    return r;
}

FFElem FFMatrix::det() const {
    FFMatrix w = *this;
    FFElem d = fld_->one();
    for (int col = 0; col < d_; ++col) {
        int piv = col;
        while (piv < d_ && fld_->is_zero(w.at(piv, col))) ++piv;
        if (piv == d_) return fld_->zero();
        if (piv != col) {
            for (int j = 0; j < d_; ++j) std::swap(w.at(piv, j), w.at(col, j));
            d = fld_->neg(d);
        }
        d = fld_->mul(d, w.at(col, col));
        FFElem inv = fld_->inverse(w.at(col, col));
        for (int i = col + 1; i < d_; ++i) {
            if (fld_->is_zero(w.at(i, col))) continue;
            FFElem f = fld_->mul(w.at(i, col), inv);
            for (int j = col; j < d_; ++j)
                w.at(i, j) = fld_->sub(w.at(i, j), fld_->mul(f, w.at(col, j)));
        }
    }
    return d;
}

FFElem FFMatrix::trace() const {
    FFElem t = fld_->zero();
    for (int i = 0; i < d_; ++i) t = fld_->add(t, at(i, i));
    return t;
}

bool FFMatrix::is_zero() const {
    for (const auto& e : a_)
        if (!fld_->is_zero(e)) return false;
    return true;
}

std::vector<uint64_t> FFMatrix::key() const {
    std::vector<uint64_t> k;
    k.reserve(a_.size());
    for (const auto& e : a_) k.push_back(fld_->to_index(e));
    return k;
}

}  // namespace arithcode
