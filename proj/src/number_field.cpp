#include "arithcode/number_field.hpp"

#include <cmath>

namespace arithcode {

NumberField::NumberField(std::vector<Int> poly_coeffs, QMatrix basis, int r1, int r2)
    : n_(static_cast<int>(poly_coeffs.size()) - 1),
      r1_(r1),
      r2_(r2),
      poly_(std::move(poly_coeffs)),
      basis_(std::move(basis)) {
    if (n_ < 1) throw std::invalid_argument("NumberField: degree < 1");
    if (poly_.back() != 1) throw std::invalid_argument("NumberField: polynomial not monic");
    qpoly_ = poly_from_int_coeffs(poly_);
    if (basis_.rows() != static_cast<size_t>(n_) || basis_.cols() != static_cast<size_t>(n_))
        throw std::invalid_argument("NumberField: basis shape");
    auto inv = basis_.inverse();
    if (!inv) throw std::invalid_argument("NumberField: integral basis is singular");
    basis_inv_ = *inv;

    Rational pd = discriminant(qpoly_);
    if (!is_integer(pd)) throw std::logic_error("NumberField: non-integral poly discriminant");
    poly_disc_ = pd.get_num();

    // disc(f) = index^2 * disc_F with index = 1/|det(basis)|
    Rational det = basis_.det();
    Rational idx = 1 / abs(det);
    Rational discF = pd * det * det;
    verif_.basis_full_rank = det != 0;
    verif_.index_integral = is_integer(idx) && is_integer(discF);
    index_ = is_integer(idx) ? Int(idx.get_num()) : Int(0);
    disc_signed_ = is_integer(discF) ? Int(discF.get_num()) : Int(0);

    verify();
}

NumberField NumberField::rationals() {
    QMatrix b(1, 1);
    b.at(0, 0) = 1;
    return NumberField({Int(0), Int(1)}, b, 1, 0);
}

double NumberField::root_discriminant() const {
    return std::pow(std::fabs(disc_signed_.get_d()), 1.0 / n_);
}

void NumberField::verify() {
    verif_.signature_ok = (r1_ + 2 * r2_ == n_) && (count_real_roots(qpoly_) == r1_);
    // sign of the discriminant must be (-1)^r2
    if (verif_.signature_ok && disc_signed_ != 0)
        verif_.signature_ok = (r2_ % 2 == 0) == (disc_signed_ > 0);

    // 1 in the Z-span of the basis
    std::vector<Rational> one_pb(n_);
    one_pb[0] = 1;
    {
        auto c = basis_.solve_left(one_pb);
        verif_.contains_one = true;
        for (auto& x : c)
            if (!is_integer(x)) verif_.contains_one = false;
    }

    // ring closure: all pairwise products of basis rows have integer coords
    verif_.ring_closed = true;
    for (int i = 0; i < n_ && verif_.ring_closed; ++i)
        for (int j = i; j < n_ && verif_.ring_closed; ++j) {
            NFElem bi{std::vector<Rational>(n_)}, bj{std::vector<Rational>(n_)};
            bi.coords[i] = 1;
            bj.coords[j] = 1;
            NFElem prod = mul(bi, bj);
            for (const auto& c : prod.coords)
                if (!is_integer(c)) verif_.ring_closed = false;
        }

    // irreducibility: rational-root-free always; mod-p certificate when found
    if (has_rational_root(qpoly_) && n_ > 1) throw std::invalid_argument("NumberField: reducible polynomial");
    verif_.irreducible_certified = (n_ == 1);
    if (n_ > 1) {
        for (uint64_t p : primes_up_to(200)) {
            if (poly_disc_ % Int(static_cast<unsigned long>(p)) == 0) continue;
            FpPoly fp = FpPoly::from_int_poly(poly_, p);
            if (fp.degree() == n_ && fp_is_irreducible(fp)) {
                verif_.irreducible_certified = true;
                break;
            }
        }
    }
}

NFElem NumberField::one() const { return from_rational(Rational(1)); }

NFElem NumberField::from_rational(const Rational& r) const {
    std::vector<Rational> pb(n_);
    pb[0] = r;
    return from_power_basis(pb);
}

NFElem NumberField::from_power_basis(const std::vector<Rational>& pb) const {
    return NFElem{basis_.solve_left(pb)};
}

std::vector<Rational> NumberField::to_power_basis(const NFElem& x) const {
    return vec_mat(x.coords, basis_);
}

NFElem NumberField::add(const NFElem& x, const NFElem& y) const {
    NFElem r = x;
    for (int i = 0; i < n_; ++i) r.coords[i] += y.coords[i];
    return r;
}

NFElem NumberField::sub(const NFElem& x, const NFElem& y) const {
    NFElem r = x;
    for (int i = 0; i < n_; ++i) r.coords[i] -= y.coords[i];
    return r;
}

NFElem NumberField::neg(const NFElem& x) const {
    NFElem r = x;
    for (auto& c : r.coords) c = -c;
    return r;
}

NFElem NumberField::mul_scalar(const NFElem& x, const Rational& c) const {
    NFElem r = x;
    for (auto& v : r.coords) v *= c;
    return r;
}

NFElem NumberField::mul(const NFElem& x, const NFElem& y) const {
    QPoly px{to_power_basis(x)}, py{to_power_basis(y)};
    QPoly prod = (px * py).mod(qpoly_);
    std::vector<Rational> pb(n_);
    for (int i = 0; i <= prod.degree(); ++i) pb[i] = prod.coeffs[i];
    return from_power_basis(pb);
}

QMatrix NumberField::mul_matrix(const NFElem& x) const {
    // rows: image of power-basis elements theta^i * x, in power-basis coords
    QMatrix m(n_, n_);
    QPoly px{to_power_basis(x)};
    QPoly cur = px;
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j <= cur.degree(); ++j) m.at(i, j) = cur.coeffs[j];
        // multiply by theta for the next row
        std::vector<Rational> shifted(cur.coeffs.size() + 1);
        for (size_t j = 0; j < cur.coeffs.size(); ++j) shifted[j + 1] = cur.coeffs[j];
        cur = QPoly(std::move(shifted)).mod(qpoly_);
    }
    return m;
}

std::pair<Rational, Rational> NumberField::norm_trace(const NFElem& x) const {
    QMatrix m = mul_matrix(x);
    Rational tr(0);
    for (int i = 0; i < n_; ++i) tr += m.at(i, i);
    return {m.det(), tr};
}

NFElem NumberField::inv(const NFElem& x) const {
    if (x.is_zero()) throw std::domain_error("NumberField::inv: zero");
    QMatrix m = mul_matrix(x);
    auto mi = m.inverse();
    if (!mi) throw std::domain_error("NumberField::inv: singular (reducible modulus?)");
    // row of the inverse matrix corresponding to 1 in power basis
    std::vector<Rational> one_pb(n_);
    one_pb[0] = 1;
    std::vector<Rational> pb = vec_mat(one_pb, *mi);
    return from_power_basis(pb);
}

bool NumberField::is_integral(const NFElem& x) const {
    for (const auto& c : x.coords)
        if (!is_integer(c)) return false;
    return true;
}

std::vector<int> factor_degrees_mod_p(const std::vector<Int>& poly, uint64_t p) {
    QPoly f = poly_from_int_coeffs(poly);
    if (f.degree() < 1) throw std::invalid_argument("factor_degrees_mod_p: constant");
    Rational d = f.degree() == 1 ? Rational(1) : discriminant(f);
    Int dn = d.get_num();
    if (dn % Int(static_cast<unsigned long>(p)) == 0)
        throw RamifiedPrimeError("factor_degrees_mod_p: p divides disc(f)");
    FpPoly fp = FpPoly::from_int_poly(poly, p);
    if (fp.degree() != f.degree()) throw std::logic_error("factor_degrees_mod_p: leading coeff vanished");
    auto ddf = distinct_degree_factor(fp);
    std::vector<int> out;
    for (auto [deg, count] : ddf)
        for (int i = 0; i < count; ++i) out.push_back(deg);
    return out;
}

}  // namespace arithcode
