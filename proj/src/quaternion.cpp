#include "arithcode/quaternion.hpp"

namespace arithcode {

QuatAlgebra::QuatAlgebra(std::shared_ptr<const NumberField> F, NFElem a, NFElem b)
    : F_(std::move(F)), a_(std::move(a)), b_(std::move(b)) {
    if (a_.is_zero() || b_.is_zero()) throw std::invalid_argument("QuatAlgebra: a, b must be nonzero");
    ab_ = F_->mul(a_, b_);
}

AlgElem QuatAlgebra::zero() const {
    return AlgElem{F_->zero(), F_->zero(), F_->zero(), F_->zero()};
}

AlgElem QuatAlgebra::one() const {
    return AlgElem{F_->one(), F_->zero(), F_->zero(), F_->zero()};
}

AlgElem QuatAlgebra::from_scalar(const Rational& c) const {
    return AlgElem{F_->from_rational(c), F_->zero(), F_->zero(), F_->zero()};
}

AlgElem QuatAlgebra::gen_i() const {
    return AlgElem{F_->zero(), F_->one(), F_->zero(), F_->zero()};
}
AlgElem QuatAlgebra::gen_j() const {
    return AlgElem{F_->zero(), F_->zero(), F_->one(), F_->zero()};
}
AlgElem QuatAlgebra::gen_k() const {
    return AlgElem{F_->zero(), F_->zero(), F_->zero(), F_->one()};
}

AlgElem QuatAlgebra::add(const AlgElem& u, const AlgElem& v) const {
    return AlgElem{F_->add(u.x, v.x), F_->add(u.y, v.y), F_->add(u.z, v.z), F_->add(u.w, v.w)};
}

AlgElem QuatAlgebra::sub(const AlgElem& u, const AlgElem& v) const {
    return AlgElem{F_->sub(u.x, v.x), F_->sub(u.y, v.y), F_->sub(u.z, v.z), F_->sub(u.w, v.w)};
}

AlgElem QuatAlgebra::neg(const AlgElem& u) const {
    return AlgElem{F_->neg(u.x), F_->neg(u.y), F_->neg(u.z), F_->neg(u.w)};
}

AlgElem QuatAlgebra::mul_scalar(const AlgElem& u, const Rational& c) const {
    return AlgElem{F_->mul_scalar(u.x, c), F_->mul_scalar(u.y, c), F_->mul_scalar(u.z, c),
                   F_->mul_scalar(u.w, c)};
}

// Product under i^2 = a, j^2 = b, ij = -ji = k, whence ik = aj, ki = -aj,
// jk = -bi, kj = bi, k^2 = -ab.
AlgElem QuatAlgebra::mul(const AlgElem& u, const AlgElem& v) const {
    const NumberField& F = *F_;
    auto m = [&](const NFElem& s, const NFElem& t) { return F.mul(s, t); };

    NFElem x = m(u.x, v.x);
    x = F.add(x, m(a_, m(u.y, v.y)));
    x = F.add(x, m(b_, m(u.z, v.z)));
    x = F.sub(x, m(ab_, m(u.w, v.w)));

    NFElem y = F.add(m(u.x, v.y), m(u.y, v.x));
    y = F.sub(y, m(b_, m(u.z, v.w)));
    y = F.add(y, m(b_, m(u.w, v.z)));

    NFElem z = F.add(m(u.x, v.z), m(u.z, v.x));
    z = F.add(z, m(a_, m(u.y, v.w)));
    z = F.sub(z, m(a_, m(u.w, v.y)));

    NFElem w = F.add(m(u.x, v.w), m(u.w, v.x));
    w = F.add(w, m(u.y, v.z));
    w = F.sub(w, m(u.z, v.y));

    return AlgElem{x, y, z, w};
}

AlgElem QuatAlgebra::conj(const AlgElem& u) const {
    return AlgElem{u.x, F_->neg(u.y), F_->neg(u.z), F_->neg(u.w)};
}

NFElem QuatAlgebra::nrd(const AlgElem& u) const {
    const NumberField& F = *F_;
    NFElem r = F.mul(u.x, u.x);
    r = F.sub(r, F.mul(a_, F.mul(u.y, u.y)));
    r = F.sub(r, F.mul(b_, F.mul(u.z, u.z)));
    r = F.add(r, F.mul(ab_, F.mul(u.w, u.w)));
    return r;
}

NFElem QuatAlgebra::trd(const AlgElem& u) const { return F_->mul_scalar(u.x, Rational(2)); }

Rational QuatAlgebra::absolute_norm(const AlgElem& u) const {
    Rational nr = F_->norm(nrd(u));
    Rational r = nr * nr;  // d = 2
    return abs(r);
}

AlgElem QuatAlgebra::inverse(const AlgElem& u) const {
    NFElem n = nrd(u);
    if (n.is_zero()) throw std::domain_error("QuatAlgebra::inverse: zero divisor");
    NFElem ninv = F_->inv(n);
    AlgElem c = conj(u);
    return AlgElem{F_->mul(c.x, ninv), F_->mul(c.y, ninv), F_->mul(c.z, ninv), F_->mul(c.w, ninv)};
}

std::vector<Rational> QuatAlgebra::flatten(const AlgElem& u) const {
    int n = F_->degree();
    std::vector<Rational> v;
    v.reserve(4 * n);
    for (const NFElem* c : {&u.x, &u.y, &u.z, &u.w})
        for (int i = 0; i < n; ++i) v.push_back(c->coords[i]);
    return v;
}

AlgElem QuatAlgebra::unflatten(const std::vector<Rational>& v) const {
    int n = F_->degree();
    if (v.size() != static_cast<size_t>(4 * n)) throw std::invalid_argument("unflatten: wrong length");
    AlgElem u{F_->zero(), F_->zero(), F_->zero(), F_->zero()};
    NFElem* parts[4] = {&u.x, &u.y, &u.z, &u.w};
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < n; ++i) parts[k]->coords[i] = v[k * n + i];
    return u;
}

}  // namespace arithcode
