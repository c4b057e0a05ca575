#include "arithcode/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace arithcode {

void QPoly::normalize() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

Rational QPoly::eval(const Rational& x) const {
    Rational r(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
    return r;
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rational> c(std::max(coeffs.size(), o.coeffs.size()));
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] += coeffs[i];
    for (size_t i = 0; i < o.coeffs.size(); ++i) c[i] += o.coeffs[i];
    return QPoly(std::move(c));
}

QPoly QPoly::operator-(const QPoly& o) const {
    std::vector<Rational> c(std::max(coeffs.size(), o.coeffs.size()));
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] += coeffs[i];
    for (size_t i = 0; i < o.coeffs.size(); ++i) c[i] -= o.coeffs[i];
    return QPoly(std::move(c));
}

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return QPoly();
    std::vector<Rational> c(coeffs.size() + o.coeffs.size() - 1);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        for (size_t j = 0; j < o.coeffs.size(); ++j) c[i + j] += coeffs[i] * o.coeffs[j];
    }
    return QPoly(std::move(c));
}

QPoly QPoly::operator*(const Rational& k) const {
    std::vector<Rational> c = coeffs;
    for (auto& x : c) x *= k;
    return QPoly(std::move(c));
}

QPoly QPoly::derivative() const {
    if (coeffs.size() <= 1) return QPoly();
    std::vector<Rational> c(coeffs.size() - 1);
    for (size_t i = 1; i < coeffs.size(); ++i) c[i - 1] = coeffs[i] * Rational(static_cast<long>(i));
    return QPoly(std::move(c));
}

QPoly QPoly::mod(const QPoly& o) const {
    if (o.is_zero()) throw std::domain_error("QPoly::mod: division by zero");
    QPoly r = *this;
    Rational lcinv = 1 / o.leading();
    while (r.degree() >= o.degree()) {
        Rational f = r.leading() * lcinv;
        int shift = r.degree() - o.degree();
        for (int i = 0; i <= o.degree(); ++i) r.coeffs[i + shift] -= f * o.coeffs[i];
        r.normalize();
    }
    return r;
}

QPoly QPoly::divexact(const QPoly& o) const {
    if (o.is_zero()) throw std::domain_error("QPoly::divexact: division by zero");
    QPoly r = *this;
    std::vector<Rational> q(std::max(0, degree() - o.degree() + 1));
    Rational lcinv = 1 / o.leading();
    while (r.degree() >= o.degree()) {
        Rational f = r.leading() * lcinv;
        int shift = r.degree() - o.degree();
        q[shift] = f;
        for (int i = 0; i <= o.degree(); ++i) r.coeffs[i + shift] -= f * o.coeffs[i];
        r.normalize();
    }
    if (!r.is_zero()) throw std::domain_error("QPoly::divexact: not divisible");
    return QPoly(std::move(q));
}

QPoly poly_from_int_coeffs(const std::vector<Int>& c) {
    std::vector<Rational> q(c.size());
    for (size_t i = 0; i < c.size(); ++i) q[i] = Rational(c[i]);
    return QPoly(std::move(q));
}

Rational resultant(const QPoly& f, const QPoly& g) {
    // Res(f,g) by the Euclidean relation Res(f,g) = lc(g)^(deg f - deg r) *
    // (-1)^(deg f * deg g) * Res(g, r) where r = f mod g.
    if (f.is_zero() || g.is_zero()) return Rational(0);
    if (g.degree() == 0) return pow_rat(g.leading(), f.degree());
    if (f.degree() == 0) return pow_rat(f.leading(), g.degree());
    if (f.degree() < g.degree()) {
        Rational sign = (f.degree() % 2 == 1 && g.degree() % 2 == 1) ? Rational(-1) : Rational(1);
        return sign * resultant(g, f);
    }
    QPoly r = f.mod(g);
    if (r.is_zero()) return Rational(0);
    Rational sign = (f.degree() % 2 == 1 && g.degree() % 2 == 1) ? Rational(-1) : Rational(1);
    return pow_rat(g.leading(), f.degree() - r.degree()) * sign * resultant(g, r);
}

Rational discriminant(const QPoly& f) {
    int n = f.degree();
    if (n < 1) throw std::domain_error("discriminant: degree < 1");
    if (n == 1) return Rational(1);
    Rational res = resultant(f, f.derivative());
    Rational sign = ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) ? Rational(-1) : Rational(1);
    return sign * res / f.leading();
}

namespace {

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

int sign_at_infinity(const QPoly& f, bool plus) {
    if (f.is_zero()) return 0;
    int s = sign_of(f.leading());
    if (!plus && f.degree() % 2 == 1) s = -s;
    return s;
}

}  // namespace

int count_real_roots(const QPoly& f) {
    if (f.degree() < 1) return 0;
    // Sturm chain on the squarefree part.
    QPoly g = f;
    // squarefree part: f / gcd(f, f')
    QPoly a = f, b = f.derivative();
    while (!b.is_zero()) {
        QPoly r = a.mod(b);
        a = b;
        b = r;
    }
    if (a.degree() > 0) g = f.divexact(a);

    std::vector<QPoly> chain{g, g.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        QPoly r = chain[chain.size() - 2].mod(chain.back());
        chain.push_back(r * Rational(-1));
    }
    auto variations = [&](bool plus) {
        int count = 0, prev = 0;
        for (const auto& pcl : chain) {
            int s = sign_at_infinity(pcl, plus);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    };
    return variations(false) - variations(true);
}

bool has_rational_root(const QPoly& f) {
    if (f.degree() < 1) return false;
    // Clear denominators, then rational root theorem.
    Int den(1);
    for (const auto& c : f.coeffs) den = den / gcd(den, Int(c.get_den())) * Int(c.get_den());
    std::vector<Int> z(f.coeffs.size());
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        Rational scaled = f.coeffs[i] * Rational(den);
        z[i] = scaled.get_num();
    }
    Int a0 = z[0], an = z.back();
    if (a0 == 0) return true;
    auto divisors = [](Int v) {
        std::vector<Int> d;
        v = abs(v);
        for (Int i = 1; i * i <= v; ++i)
            if (v % i == 0) {
                d.push_back(i);
                d.push_back(v / i);
            }
        return d;
    };
    for (const Int& p : divisors(a0))
        for (const Int& q : divisors(an)) {
            for (int s : {1, -1}) {
                Rational cand(p * s, q);
                cand.canonicalize();
                if (f.eval(cand) == 0) return true;
            }
        }
    return false;
}

// ---------------------------------------------------------------------------

namespace {

inline uint64_t addm(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
}
inline uint64_t subm(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }
inline uint64_t mulm(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

}  // namespace

uint64_t mod_pow(uint64_t base, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    base %= p;
    while (e) {
        if (e & 1) r = mulm(r, base, p);
        base = mulm(base, base, p);
        e >>= 1;
    }
    return r;
}

uint64_t mod_inverse(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) throw std::domain_error("mod_inverse: zero");
    // extended Euclid in signed 128-bit to avoid overflow
    __int128 t = 0, newt = 1, r = p, newr = a;
    while (newr != 0) {
        __int128 q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1) throw std::domain_error("mod_inverse: not invertible");
    if (t < 0) t += p;
    return static_cast<uint64_t>(t);
}

void FpPoly::normalize() {
    for (auto& c : coeffs) c %= p;
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

FpPoly FpPoly::x(uint64_t p) { return FpPoly(p, {0, 1}); }
FpPoly FpPoly::constant(uint64_t p, uint64_t c) { return FpPoly(p, {c % p}); }

FpPoly FpPoly::from_int_poly(const std::vector<Int>& c, uint64_t p) {
    std::vector<uint64_t> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        Int m = c[i] % Int(static_cast<unsigned long>(p));
        if (m < 0) m += Int(static_cast<unsigned long>(p));
        r[i] = m.get_ui();
    }
    return FpPoly(p, std::move(r));
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
    std::vector<uint64_t> c(std::max(coeffs.size(), o.coeffs.size()), 0);
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i];
    for (size_t i = 0; i < o.coeffs.size(); ++i) c[i] = addm(c[i], o.coeffs[i], p);
    return FpPoly(p, std::move(c));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
    std::vector<uint64_t> c(std::max(coeffs.size(), o.coeffs.size()), 0);
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i];
    for (size_t i = 0; i < o.coeffs.size(); ++i) c[i] = subm(c[i], o.coeffs[i], p);
    return FpPoly(p, std::move(c));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    if (is_zero() || o.is_zero()) return FpPoly(p, {});
    std::vector<uint64_t> c(coeffs.size() + o.coeffs.size() - 1, 0);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        for (size_t j = 0; j < o.coeffs.size(); ++j)
            c[i + j] = addm(c[i + j], mulm(coeffs[i], o.coeffs[j], p), p);
    }
    return FpPoly(p, std::move(c));
}

FpPoly FpPoly::mod(const FpPoly& o) const {
    if (o.is_zero()) throw std::domain_error("FpPoly::mod: division by zero");
    FpPoly r = *this;
    uint64_t lcinv = mod_inverse(o.coeffs.back(), p);
    while (r.degree() >= o.degree()) {
        uint64_t f = mulm(r.coeffs.back(), lcinv, p);
        int shift = r.degree() - o.degree();
        for (int i = 0; i <= o.degree(); ++i)
            r.coeffs[i + shift] = subm(r.coeffs[i + shift], mulm(f, o.coeffs[i], p), p);
        r.normalize();
    }
    return r;
}

FpPoly FpPoly::monic() const {
    if (is_zero()) return *this;
    uint64_t inv = mod_inverse(coeffs.back(), p);
    FpPoly r = *this;
    for (auto& c : r.coeffs) c = mulm(c, inv, p);
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FpPoly fp_pow_mod(const FpPoly& base, const Int& e, const FpPoly& modulus) {
    FpPoly result = FpPoly::constant(base.p, 1);
    FpPoly b = base.mod(modulus);
    Int exp = e;
    while (exp > 0) {
        if (mpz_odd_p(exp.get_mpz_t())) result = (result * b).mod(modulus);
        b = (b * b).mod(modulus);
        exp >>= 1;
    }
    return result;
}

std::vector<std::pair<int, FpPoly>> distinct_degree_pieces(const FpPoly& f_in) {
    FpPoly f = f_in.monic();
    int n = f.degree();
    if (n < 1) throw std::domain_error("distinct_degree_pieces: constant polynomial");
    std::vector<std::pair<int, FpPoly>> pieces;
    FpPoly x = FpPoly::x(f.p);
    FpPoly h = x;  // x^(p^d) mod f, built incrementally
    int d = 0;
    while (f.degree() > 0) {
        ++d;
        if (2 * d > f.degree()) {
            // remaining factor is irreducible
            pieces.emplace_back(f.degree(), f);
            break;
        }
        h = fp_pow_mod(h, Int(static_cast<unsigned long>(f.p)), f);
        FpPoly g = fp_gcd(h - x, f);
        if (g.degree() > 0) {
            if (g.degree() % d != 0) throw std::logic_error("ddf: inconsistent degree");
            pieces.emplace_back(d, g);
            // exact division f /= g
            FpPoly r = f;
            std::vector<uint64_t> qc(f.degree() - g.degree() + 1, 0);
            uint64_t lcinv = mod_inverse(g.coeffs.back(), f.p);
            while (r.degree() >= g.degree()) {
                uint64_t fac = mulm(r.coeffs.back(), lcinv, f.p);
                int shift = r.degree() - g.degree();
                qc[shift] = fac;
                for (int i = 0; i <= g.degree(); ++i)
                    r.coeffs[i + shift] = subm(r.coeffs[i + shift], mulm(fac, g.coeffs[i], f.p), f.p);
                r.normalize();
            }
            if (!r.is_zero()) throw std::logic_error("ddf: non-exact division");
            f = FpPoly(f.p, std::move(qc));
            h = h.mod(f);
        }
    }
    return pieces;
}

std::map<int, int> distinct_degree_factor(const FpPoly& f) {
    std::map<int, int> degs;
    for (const auto& [d, g] : distinct_degree_pieces(f)) degs[d] += g.degree() / d;
    return degs;
}

bool fp_is_irreducible(const FpPoly& f) {
    int n = f.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    FpPoly x = FpPoly::x(f.p);
    // x^(p^n) == x mod f
    Int pn = pow_int(Int(static_cast<unsigned long>(f.p)), n);
    FpPoly xpn = fp_pow_mod(x, pn, f);
    if (!((xpn - x).mod(f).is_zero())) return false;
    // gcd(x^(p^(n/l)) - x, f) == 1 for prime divisors l of n
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool lprime = true;
        for (int m = 2; m * m <= l; ++m)
            if (l % m == 0) lprime = false;
        if (!lprime) continue;
        Int pk = pow_int(Int(static_cast<unsigned long>(f.p)), n / l);
        FpPoly xk = fp_pow_mod(x, pk, f);
        if (fp_gcd(xk - x, f).degree() != 0) return false;
    }
    return true;
}

FpPoly fp_nth_irreducible_factor(const FpPoly& f, int target_degree, int n) {
    // Deterministic scan over monic polynomials of the target degree in
    // lexicographic coefficient order (constant coefficient fastest).
    uint64_t p = f.p;
    int seen = 0;
    if (target_degree == 1) {
        for (uint64_t c = 0; c < p; ++c) {
            FpPoly cand(p, {(p - c) % p, 1});  // x - c
            if (f.mod(cand).is_zero() && seen++ == n) return cand;
        }
        throw std::domain_error("fp_nth_irreducible_factor: not enough linear factors");
    }
    std::vector<uint64_t> c(target_degree + 1, 0);
    c[target_degree] = 1;
    while (true) {
        FpPoly cand(p, c);
        if (cand.degree() == target_degree && f.mod(cand).is_zero() && fp_is_irreducible(cand) &&
            seen++ == n)
            return cand;
        int i = 0;
        for (; i < target_degree; ++i) {
            if (++c[i] < p) break;
            c[i] = 0;
        }
        if (i == target_degree) throw std::domain_error("fp_nth_irreducible_factor: not enough factors");
    }
}

}  // namespace arithcode
