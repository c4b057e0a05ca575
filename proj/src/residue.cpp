#include "arithcode/residue.hpp"

#include "arithcode/hilbert.hpp"

#include <array>
#include <functional>

namespace arithcode {

namespace {

using Vec4 = std::array<FFElem, 4>;  // coordinates on 1, i, j, ij over F_{q0}

struct LocalQuat {
    const FiniteField* F;
    FFElem a, b, ab;

    Vec4 zero() const { return {F->zero(), F->zero(), F->zero(), F->zero()}; }

    bool is_zero(const Vec4& u) const {
        for (const auto& c : u)
            if (!F->is_zero(c)) return false;
        return true;
    }

    Vec4 mul(const Vec4& u, const Vec4& v) const {
        auto& f = *F;
        FFElem x = f.mul(u[0], v[0]);
        x = f.add(x, f.mul(a, f.mul(u[1], v[1])));
        x = f.add(x, f.mul(b, f.mul(u[2], v[2])));
        x = f.sub(x, f.mul(ab, f.mul(u[3], v[3])));
        FFElem y = f.add(f.mul(u[0], v[1]), f.mul(u[1], v[0]));
        y = f.sub(y, f.mul(b, f.mul(u[2], v[3])));
        y = f.add(y, f.mul(b, f.mul(u[3], v[2])));
        FFElem z = f.add(f.mul(u[0], v[2]), f.mul(u[2], v[0]));
        z = f.add(z, f.mul(a, f.mul(u[1], v[3])));
        z = f.sub(z, f.mul(a, f.mul(u[3], v[1])));
        FFElem w = f.add(f.mul(u[0], v[3]), f.mul(u[3], v[0]));
        w = f.add(w, f.mul(u[1], v[2]));
        w = f.sub(w, f.mul(u[2], v[1]));
        return {x, y, z, w};
    }

    FFElem nrd(const Vec4& u) const {
        auto& f = *F;
        FFElem r = f.mul(u[0], u[0]);
        r = f.sub(r, f.mul(a, f.mul(u[1], u[1])));
        r = f.sub(r, f.mul(b, f.mul(u[2], u[2])));
        r = f.add(r, f.mul(ab, f.mul(u[3], u[3])));
        return r;
    }

    FFElem trd(const Vec4& u) const { return F->add(u[0], u[0]); }

    Vec4 scale(const Vec4& u, const FFElem& c) const {
        return {F->mul(u[0], c), F->mul(u[1], c), F->mul(u[2], c), F->mul(u[3], c)};
    }

    Vec4 from_index(uint64_t idx) const {
        uint64_t q = F->size();
        Vec4 u;
        for (int k = 0; k < 4; ++k) {
            u[k] = F->from_index(idx % q);
            idx /= q;
        }
        return u;
    }
};

// Abstract 4-dimensional quotient algebra over F_{q0}, with a hook for the
// two realizations: structure constants on the order basis (base field Q)
// and quaternion coordinates (larger base fields, denominators permitting).
struct QuotOps {
    const FiniteField* F;
    std::function<Vec4(const Vec4&, const Vec4&)> mul;
    std::function<FFElem(const Vec4&)> nrd;
    std::function<FFElem(const Vec4&)> trd;
    Vec4 one;
    std::vector<Vec4> basis_images;  // images of the order basis

    Vec4 zero() const { return {F->zero(), F->zero(), F->zero(), F->zero()}; }
    bool is_zero(const Vec4& u) const {
        for (const auto& c : u)
            if (!F->is_zero(c)) return false;
        return true;
    }
    Vec4 scale(const Vec4& u, const FFElem& c) const {
        return {F->mul(u[0], c), F->mul(u[1], c), F->mul(u[2], c), F->mul(u[3], c)};
    }
    Vec4 from_index(uint64_t idx) const {
        uint64_t q = F->size();
        Vec4 u;
        for (int k = 0; k < 4; ++k) {
            u[k] = F->from_index(idx % q);
            idx /= q;
        }
        return u;
    }
};

// Reduced row echelon over F_{q0} for vectors in F_{q0}^4, returning the
// echelon rows and pivot positions.
struct Echelon4 {
    const FiniteField* F;
    std::vector<Vec4> rows;
    std::vector<int> pivots;

    void insert(Vec4 v) {
        for (size_t r = 0; r < rows.size(); ++r) {
            const FFElem& c = v[pivots[r]];
            if (!F->is_zero(c)) {
                FFElem f = c;
                for (int k = 0; k < 4; ++k) v[k] = F->sub(v[k], F->mul(f, rows[r][k]));
            }
        }
        int piv = -1;
        for (int k = 0; k < 4; ++k)
            if (!F->is_zero(v[k])) {
                piv = k;
                break;
            }
        if (piv < 0) return;
        FFElem inv = F->inverse(v[piv]);
        for (int k = 0; k < 4; ++k) v[k] = F->mul(v[k], inv);
        // back-substitute into existing rows
        for (size_t r = 0; r < rows.size(); ++r) {
            FFElem c = rows[r][piv];
            if (!F->is_zero(c))
                for (int k = 0; k < 4; ++k) rows[r][k] = F->sub(rows[r][k], F->mul(c, v[k]));
        }
        rows.push_back(v);
        pivots.push_back(piv);
    }

    // Coordinates of v in the echelon basis; nullopt if v is outside the span.
    std::optional<std::vector<FFElem>> solve(const Vec4& v) const {
        std::vector<FFElem> coords(rows.size(), F->zero());
        Vec4 w = v;
        for (size_t r = 0; r < rows.size(); ++r) {
            coords[r] = w[pivots[r]];
            if (!F->is_zero(coords[r]))
                for (int k = 0; k < 4; ++k) w[k] = F->sub(w[k], F->mul(coords[r], rows[r][k]));
        }
        for (int k = 0; k < 4; ++k)
            if (!F->is_zero(w[k])) return std::nullopt;
        return coords;
    }
};

uint64_t reduce_rational_mod_p(const Rational& r, uint64_t p) {
    Int den(r.get_den());
    Int pz(static_cast<unsigned long>(p));
    if (den % pz == 0) throw NoIsomorphismError("residue: denominator not coprime to p");
    Int num = Int(r.get_num()) % pz;
    if (num < 0) num += pz;
    uint64_t d = mpz_fdiv_ui(den.get_mpz_t(), p);
    return static_cast<uint64_t>((static_cast<unsigned __int128>(num.get_ui()) * mod_inverse(d, p)) % p);
}

}  // namespace

PrimeData make_prime_data(const NumberField& F, uint64_t p, int f, bool unramified_in_A, int which) {
    if (F.index() % Int(static_cast<unsigned long>(p)) == 0)
        throw std::invalid_argument("make_prime_data: p divides the index [Z_F : Z[theta]]");
    FpPoly fp = FpPoly::from_int_poly(F.poly_coeffs(), p);
    if (fp.degree() != F.degree()) throw std::invalid_argument("make_prime_data: degree drop mod p");
    if (F.degree() > 1) {
        // squarefree mod p <=> p unramified in Z[theta]
        FpPoly der(p, {});
        {
            std::vector<uint64_t> dc(fp.coeffs.size() - 1);
            for (size_t i = 1; i < fp.coeffs.size(); ++i)
                dc[i - 1] = static_cast<uint64_t>((static_cast<unsigned __int128>(fp.coeffs[i]) * (i % p)) % p);
            der = FpPoly(p, std::move(dc));
        }
        if (fp_gcd(fp, der).degree() != 0)
            throw RamifiedPrimeError("make_prime_data: p ramifies in F");
    }
    PrimeData pd;
    pd.p = p;
    pd.residue_degree = f;
    pd.unramified_in_A = unramified_in_A;
    pd.ideal_factor = fp_nth_irreducible_factor(fp, f, which);
    return pd;
}

SplittingMap::SplittingMap(std::shared_ptr<const Order> order, PrimeData prime)
    : order_(std::move(order)), prime_(std::move(prime)) {
    if (!prime_.unramified_in_A) throw RamifiedPrimeError("SplittingMap: prime is ramified in A");
    fq_ = std::make_shared<FiniteField>(prime_.p, prime_.residue_degree);
    build();
    verify();
}

FFElem SplittingMap::reduce_field(const NFElem& x) const {
    const NumberField& F = order_->algebra().field();
    auto pb = F.to_power_basis(x);
    FFElem acc = fq_->zero();
    FFElem pw = fq_->one();
    for (size_t i = 0; i < pb.size(); ++i) {
        uint64_t c = reduce_rational_mod_p(pb[i], prime_.p);
        acc = fq_->add(acc, fq_->mul(fq_->from_uint(c), pw));
        pw = fq_->mul(pw, theta_bar_);
    }
    return acc;
}

void SplittingMap::build() {
    const QuatAlgebra& A = order_->algebra();
    const uint64_t p = prime_.p;

    // theta mod the chosen prime: smallest root of the ideal factor in F_{q0}
    {
        const FpPoly& g = prime_.ideal_factor;
        uint64_t q = fq_->size();
        bool found = false;
        for (uint64_t idx = 0; idx < q && !found; ++idx) {
            FFElem cand = fq_->from_index(idx);
            FFElem acc = fq_->zero(), pw = fq_->one();
            for (int i = 0; i <= g.degree(); ++i) {
                acc = fq_->add(acc, fq_->mul(fq_->from_uint(g.coeffs[i]), pw));
                pw = fq_->mul(pw, cand);
            }
            if (fq_->is_zero(acc)) {
                theta_bar_ = cand;
                found = true;
            }
        }
        if (!found) throw NoIsomorphismError("SplittingMap: ideal factor has no root in F_{q0}");
    }

    QuotOps R;
    R.F = fq_.get();
    const auto& basis = order_->basis();
    if (A.field().degree() == 1) {
        // O/pO from structure constants on the order basis; works at every
        // unramified p regardless of coordinate denominators
        uint64_t p_ = p;
        auto sc = std::make_shared<std::array<std::array<std::array<uint64_t, 4>, 4>, 4>>();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                auto pc = order_->coords(A.mul(basis[i], basis[j]));
                for (int k = 0; k < 4; ++k) {
                    if (!is_integer(pc[k])) throw NoIsomorphismError("SplittingMap: order not closed");
                    (*sc)[i][j][k] = mpz_fdiv_ui(pc[k].get_num_mpz_t(), p_);
                }
            }
        auto fq = fq_;
        R.mul = [sc, fq, p_](const Vec4& u, const Vec4& v) -> Vec4 {
            Vec4 r{fq->zero(), fq->zero(), fq->zero(), fq->zero()};
            for (int i = 0; i < 4; ++i) {
                if (fq->is_zero(u[i])) continue;
                for (int j = 0; j < 4; ++j) {
                    if (fq->is_zero(v[j])) continue;
                    uint64_t c = static_cast<uint64_t>(
                        (static_cast<unsigned __int128>(u[i][0]) * v[j][0]) % p_);
                    if (!c) continue;
                    for (int k = 0; k < 4; ++k) {
                        uint64_t add = static_cast<uint64_t>(
                            (static_cast<unsigned __int128>(c) * (*sc)[i][j][k]) % p_);
                        r[k][0] = (r[k][0] + add) % p_;
                    }
                }
            }
            return r;
        };
        // nrd as a quadratic form on order coordinates, trd as a linear form
        auto q_diag = std::make_shared<std::array<uint64_t, 4>>();
        auto q_off = std::make_shared<std::array<std::array<uint64_t, 4>, 4>>();
        auto t_lin = std::make_shared<std::array<uint64_t, 4>>();
        auto red = [&](const Rational& r) -> uint64_t {
            if (!is_integer(r)) throw NoIsomorphismError("SplittingMap: non-integral nrd/trd");
            return mpz_fdiv_ui(r.get_num_mpz_t(), p_);
        };
        for (int i = 0; i < 4; ++i) {
            (*q_diag)[i] = red(A.nrd(basis[i]).coords[0]);
            (*t_lin)[i] = red(A.trd(basis[i]).coords[0]);
            for (int j = i + 1; j < 4; ++j) {
                Rational bij = A.nrd(A.add(basis[i], basis[j])).coords[0] -
                               A.nrd(basis[i]).coords[0] - A.nrd(basis[j]).coords[0];
                (*q_off)[i][j] = red(bij);
            }
        }
        R.nrd = [q_diag, q_off, fq, p_](const Vec4& u) -> FFElem {
            uint64_t acc = 0;
            for (int i = 0; i < 4; ++i) {
                unsigned __int128 ci = u[i][0];
                acc = static_cast<uint64_t>((acc + ci * u[i][0] % p_ * (*q_diag)[i]) % p_);
                for (int j = i + 1; j < 4; ++j)
                    acc = static_cast<uint64_t>((acc + ci * u[j][0] % p_ * (*q_off)[i][j]) % p_);
            }
            return fq->from_uint(acc);
        };
        R.trd = [t_lin, fq, p_](const Vec4& u) -> FFElem {
            uint64_t acc = 0;
            for (int i = 0; i < 4; ++i)
                acc = static_cast<uint64_t>(
                    (acc + static_cast<unsigned __int128>(u[i][0]) * (*t_lin)[i]) % p_);
            return fq->from_uint(acc);
        };
        for (int k = 0; k < 4; ++k) {
            Vec4 e = R.zero();
            e[k] = fq_->one();
            R.basis_images.push_back(e);
        }
        {
            auto oc = order_->coords(A.one());
            Vec4 one = R.zero();
            for (int k = 0; k < 4; ++k) one[k] = fq_->from_uint(mpz_fdiv_ui(oc[k].get_num_mpz_t(), p_));
            R.one = one;
        }
    } else {
        // coordinate realization over F_{q0}; requires denominators coprime
        // to p (the final verification certifies the construction)
        abar_ = reduce_field(A.a());
        bbar_ = reduce_field(A.b());
        if (fq_->is_zero(abar_) || fq_->is_zero(bbar_))
            throw NoIsomorphismError("SplittingMap: a or b vanishes mod p; pick a prime coprime to a, b");
        LocalQuat LQ{fq_.get(), abar_, bbar_, fq_->mul(abar_, bbar_)};
        auto lq = std::make_shared<LocalQuat>(LQ);
        R.mul = [lq](const Vec4& u, const Vec4& v) { return lq->mul(u, v); };
        R.nrd = [lq](const Vec4& u) { return lq->nrd(u); };
        R.trd = [lq](const Vec4& u) { return lq->trd(u); };
        for (const auto& bm : basis)
            R.basis_images.push_back(
                {reduce_field(bm.x), reduce_field(bm.y), reduce_field(bm.z), reduce_field(bm.w)});
        R.one = Vec4{fq_->one(), fq_->zero(), fq_->zero(), fq_->zero()};
    }

    // zero divisor by deterministic search
    Vec4 zd = R.zero();
    {
        uint64_t q = fq_->size();
        uint64_t total = q * q * q * q;
        bool found = false;
        for (uint64_t idx = 1; idx < total && !found; ++idx) {
            Vec4 u = R.from_index(idx);
            if (fq_->is_zero(R.nrd(u))) {
                zd = u;
                found = true;
            }
        }
        if (!found) throw NoIsomorphismError("SplittingMap: no zero divisor (division algebra mod p?)");
    }

    // rank-1 idempotent e = w / trd(w) with w a trace-nonzero zero divisor
    Vec4 idem;
    {
        FFElem t = R.trd(zd);
        Vec4 w = zd;
        if (fq_->is_zero(t)) {
            uint64_t q = fq_->size();
            uint64_t total = q * q * q * q;
            bool found = false;
            for (uint64_t idx = 1; idx < total && !found; ++idx) {
                Vec4 v = R.from_index(idx);
                Vec4 cand = R.mul(zd, v);
                FFElem tc = R.trd(cand);
                if (!fq_->is_zero(tc)) {
                    w = cand;
                    t = tc;
                    found = true;
                }
            }
            if (!found) throw NoIsomorphismError("SplittingMap: trace pairing degenerate");
        }
        idem = R.scale(w, fq_->inverse(t));
    }

    // left module M = R*e, must be 2-dimensional over F_{q0}
    Echelon4 M{fq_.get(), {}, {}};
    std::array<Vec4, 4> gens_std;
    for (int k = 0; k < 4; ++k) {
        Vec4 g = R.zero();
        g[k] = fq_->one();
        gens_std[k] = g;
    }
    for (int k = 0; k < 4; ++k) M.insert(R.mul(gens_std[k], idem));
    if (M.rows.size() != 2) throw NoIsomorphismError("SplittingMap: module dimension != 2");

    // left multiplication matrices on M
    auto phi = [&](const Vec4& r) {
        FFMatrix m(fq_, 2);
        for (int col = 0; col < 2; ++col) {
            Vec4 rm = R.mul(r, M.rows[col]);
            auto coords = M.solve(rm);
            if (!coords) throw NoIsomorphismError("SplittingMap: module not stable");
            for (int row = 0; row < 2; ++row) m.at(row, col) = (*coords)[row];
        }
        return m;
    };

    images_.clear();
    for (const auto& r : R.basis_images) images_.push_back(phi(r));
}

void SplittingMap::verify() {
    const QuatAlgebra& A = order_->algebra();
    const auto& basis = order_->basis();
    const size_t m = basis.size();
    const uint64_t p = prime_.p;

    // identity
    {
        auto one_coords = order_->coords(A.one());
        std::vector<Int> c(m);
        for (size_t i = 0; i < m; ++i) c[i] = one_coords[i].get_num();
        if (!(apply_coords(c) == FFMatrix::identity(fq_, 2)))
            throw NoIsomorphismError("SplittingMap: image of 1 is not the identity");
    }

    // ring homomorphism on basis pairs, and nrd/trd compatibility
    for (size_t i = 0; i < m; ++i) {
        FFMatrix mi = images_[i];
        FFElem di = mi.det();
        FFElem ni = reduce_field(A.nrd(basis[i]));
        if (di != ni) throw NoIsomorphismError("SplittingMap: det != nrd mod p");
        FFElem ti = mi.trace();
        if (ti != reduce_field(A.trd(basis[i]))) throw NoIsomorphismError("SplittingMap: tr != trd mod p");
        for (size_t j = 0; j < m; ++j) {
            AlgElem prod = A.mul(basis[i], basis[j]);
            auto pc = order_->coords(prod);
            std::vector<Int> c(m);
            for (size_t k = 0; k < m; ++k) {
                if (!is_integer(pc[k])) throw NoIsomorphismError("SplittingMap: order not closed");
                c[k] = pc[k].get_num();
            }
            if (!(images_[i] * images_[j] == apply_coords(c)))
                throw NoIsomorphismError("SplittingMap: not multiplicative");
        }
    }

    // bijectivity by counting: images span M_2(F_{q0}) over F_p
    {
        int f = prime_.residue_degree;
        size_t dim = 4 * static_cast<size_t>(f);
        // F_p-rank of the images, flattened entrywise
        std::vector<std::vector<uint64_t>> rows;
        for (const auto& img : images_) {
            std::vector<uint64_t> r;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < f; ++k) r.push_back(img.at(i, j)[k]);
            rows.push_back(std::move(r));
        }
        size_t rank = 0;
        for (size_t col = 0; col < dim && rank < rows.size(); ++col) {
            size_t piv = rank;
            while (piv < rows.size() && rows[piv][col] == 0) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[piv], rows[rank]);
            uint64_t inv = mod_inverse(rows[rank][col], p);
            for (size_t i = 0; i < rows.size(); ++i) {
                if (i == rank || rows[i][col] == 0) continue;
                uint64_t fmul = static_cast<uint64_t>(
                    (static_cast<unsigned __int128>(rows[i][col]) * inv) % p);
                for (size_t j = col; j < dim; ++j) {
                    unsigned __int128 t = static_cast<unsigned __int128>(fmul) * rows[rank][j] % p;
                    rows[i][j] = (rows[i][j] + p - static_cast<uint64_t>(t)) % p;
                }
            }
            ++rank;
        }
        if (rank != dim) throw NoIsomorphismError("SplittingMap: reduction not surjective");
    }
}

FFMatrix SplittingMap::apply_coords(const std::vector<Int>& order_coords) const {
    if (order_coords.size() != images_.size())
        throw std::invalid_argument("SplittingMap::apply_coords: wrong length");
    FFMatrix acc(fq_, 2);
    for (size_t i = 0; i < images_.size(); ++i) {
        uint64_t c = mpz_fdiv_ui(order_coords[i].get_mpz_t(), prime_.p);
        if (c == 0) continue;
        acc = acc + images_[i].scale(fq_->from_uint(c));
    }
    return acc;
}

FFMatrix SplittingMap::apply(const AlgElem& u) const {
    auto rc = order_->coords(u);
    std::vector<Int> c(rc.size());
    for (size_t i = 0; i < rc.size(); ++i) {
        if (!is_integer(rc[i])) throw std::invalid_argument("SplittingMap::apply: element not in order");
        c[i] = rc[i].get_num();
    }
    return apply_coords(c);
}

// ---------------------------------------------------------------------------

RamifiedResidueMap::RamifiedResidueMap(std::shared_ptr<const Order> order, uint64_t p)
    : order_(std::move(order)), p_(p) {
    const QuatAlgebra& A = order_->algebra();
    const NumberField& F = A.field();
    if (F.degree() != 1)
        throw std::invalid_argument("RamifiedResidueMap: implemented over Q only");
    // confirm ramification via Hilbert symbols
    Rational aq = A.a().coords[0], bq = A.b().coords[0];
    if (hilbert_symbol(aq, bq, p) != -1)
        throw NotRamifiedError("RamifiedResidueMap: p is not ramified in A");

    const auto& basis = order_->basis();
    const size_t m = basis.size();  // 4

    // structure constants of O/pO
    std::vector<std::vector<std::vector<uint64_t>>> sc(m, std::vector<std::vector<uint64_t>>(m));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            auto pc = order_->coords(A.mul(basis[i], basis[j]));
            std::vector<uint64_t> row(m);
            for (size_t k = 0; k < m; ++k) {
                if (!is_integer(pc[k])) throw std::logic_error("RamifiedResidueMap: order not closed");
                row[k] = mpz_fdiv_ui(pc[k].get_num_mpz_t(), p);
            }
            sc[i][j] = std::move(row);
        }

    auto mulm = [&](uint64_t a, uint64_t b) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
    };
    auto mul_vec = [&](const std::vector<uint64_t>& u, const std::vector<uint64_t>& v) {
        std::vector<uint64_t> r(m, 0);
        for (size_t i = 0; i < m; ++i) {
            if (!u[i]) continue;
            for (size_t j = 0; j < m; ++j) {
                if (!v[j]) continue;
                uint64_t c = mulm(u[i], v[j]);
                for (size_t k = 0; k < m; ++k) r[k] = (r[k] + mulm(c, sc[i][j][k])) % p_;
            }
        }
        return r;
    };

    // radical of O/pO
    std::vector<std::vector<uint64_t>> jbasis;
    if (p % 2 == 1) {
        // kernel of the reduced-trace pairing trd(b_i b_j) mod p
        std::vector<std::vector<uint64_t>> T(m, std::vector<uint64_t>(m));
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
                Rational t = F.trace(A.trd(A.mul(basis[i], basis[j])));
                if (!is_integer(t)) throw std::logic_error("RamifiedResidueMap: non-integral trace");
                T[i][j] = mpz_fdiv_ui(t.get_num_mpz_t(), p);
            }
        // kernel via Gaussian elimination
        std::vector<std::vector<uint64_t>> w = T;
        std::vector<size_t> pivcols;
        size_t rank = 0;
        for (size_t col = 0; col < m && rank < m; ++col) {
            size_t piv = rank;
            while (piv < m && w[piv][col] == 0) ++piv;
            if (piv == m) continue;
            std::swap(w[piv], w[rank]);
            uint64_t inv = mod_inverse(w[rank][col], p);
            for (size_t i = 0; i < m; ++i) {
                if (i == rank || w[i][col] == 0) continue;
                uint64_t f = mulm(w[i][col], inv);
                for (size_t j = 0; j < m; ++j) w[i][j] = (w[i][j] + p - mulm(f, w[rank][j])) % p;
            }
            pivcols.push_back(col);
            ++rank;
        }
        // free columns give kernel vectors of x -> x*T (T symmetric)
        std::vector<bool> ispiv(m, false);
        for (size_t c : pivcols) ispiv[c] = true;
        for (size_t free = 0; free < m; ++free) {
            if (ispiv[free]) continue;
            std::vector<uint64_t> v(m, 0);
            v[free] = 1;
            for (size_t r = 0; r < rank; ++r) {
                // w[r] is normalized with pivot pivcols[r]
                uint64_t inv = mod_inverse(w[r][pivcols[r]], p);
                uint64_t val = mulm(w[r][free], inv);
                v[pivcols[r]] = (p - val) % p;
            }
            jbasis.push_back(v);
        }
    } else {
        // p = 2: brute force over the 16 residue classes
        auto nilpotent = [&](const std::vector<uint64_t>& x) {
            std::vector<uint64_t> z = x;
            for (int it = 0; it < 2; ++it) z = mul_vec(z, z);  // x^4
            for (auto c : z)
                if (c) return false;
            return true;
        };
        std::vector<std::vector<uint64_t>> members;
        for (uint64_t idx = 0; idx < 16; ++idx) {
            std::vector<uint64_t> x(m);
            uint64_t t = idx;
            for (size_t k = 0; k < m; ++k) {
                x[k] = t & 1;
                t >>= 1;
            }
            bool in_rad = true;
            for (uint64_t idy = 0; idy < 16 && in_rad; ++idy) {
                std::vector<uint64_t> y(m);
                uint64_t s = idy;
                for (size_t k = 0; k < m; ++k) {
                    y[k] = s & 1;
                    s >>= 1;
                }
                if (!nilpotent(mul_vec(x, y))) in_rad = false;
            }
            if (in_rad) members.push_back(x);
        }
        jbasis = std::move(members);
    }

    // echelonize the radical basis (reduced form), record pivots
    {
        std::vector<std::vector<uint64_t>> ech;
        std::vector<size_t> pivs;
        for (auto v : jbasis) {
            for (size_t r = 0; r < ech.size(); ++r) {
                uint64_t c = v[pivs[r]];
                if (c)
                    for (size_t k = 0; k < m; ++k) v[k] = (v[k] + p - mulm(c, ech[r][k])) % p;
            }
            size_t piv = m;
            for (size_t k = 0; k < m; ++k)
                if (v[k]) {
                    piv = k;
                    break;
                }
            if (piv == m) continue;
            uint64_t inv = mod_inverse(v[piv], p);
            for (size_t k = 0; k < m; ++k) v[k] = mulm(v[k], inv);
            for (size_t r = 0; r < ech.size(); ++r) {
                uint64_t c = ech[r][piv];
                if (c)
                    for (size_t k = 0; k < m; ++k) ech[r][k] = (ech[r][k] + p - mulm(c, v[k])) % p;
            }
            ech.push_back(v);
            pivs.push_back(piv);
        }
        radical_ = std::move(ech);
        radical_pivots_ = std::move(pivs);
    }
    if (radical_.size() != 2)
        throw NotRamifiedError("RamifiedResidueMap: radical dimension != 2 (p not ramified?)");

    std::vector<bool> ispiv(m, false);
    for (size_t c : radical_pivots_) ispiv[c] = true;
    for (size_t k = 0; k < m; ++k)
        if (!ispiv[k]) quot_positions_.push_back(k);

    auto reduce_mod_J = [&](std::vector<uint64_t> v) {
        for (size_t r = 0; r < radical_.size(); ++r) {
            uint64_t c = v[radical_pivots_[r]];
            if (c)
                for (size_t k = 0; k < m; ++k) v[k] = (v[k] + p - mulm(c, radical_[r][k])) % p;
        }
        return std::array<uint64_t, 2>{v[quot_positions_[0]], v[quot_positions_[1]]};
    };

    // quotient classes of 1 and of the unit vectors; build (1, gamma) basis
    std::vector<uint64_t> one_coords(m);
    {
        auto oc = order_->coords(A.one());
        for (size_t k = 0; k < m; ++k) one_coords[k] = mpz_fdiv_ui(oc[k].get_num_mpz_t(), p);
    }
    auto one_q = reduce_mod_J(one_coords);
    std::vector<uint64_t> gamma_lift(m, 0);
    std::array<uint64_t, 2> gamma_q{0, 0};
    {
        bool found = false;
        for (size_t k = 0; k < m && !found; ++k) {
            std::vector<uint64_t> v(m, 0);
            v[k] = 1;
            auto q = reduce_mod_J(v);
            // independent of one_q?
            uint64_t det = (mulm(one_q[0], q[1]) + p - mulm(one_q[1], q[0])) % p;
            if (det) {
                gamma_lift = v;
                gamma_q = q;
                found = true;
            }
        }
        if (!found) throw std::logic_error("RamifiedResidueMap: quotient not 2-dimensional");
    }

    // expression of quotient coordinates in the (1, gamma) basis: inverse of
    // the 2x2 matrix with columns one_q, gamma_q
    {
        uint64_t det = (mulm(one_q[0], gamma_q[1]) + p - mulm(one_q[1], gamma_q[0])) % p;
        uint64_t dinv = mod_inverse(det, p);
        solve_[0] = mulm(gamma_q[1], dinv);
        solve_[1] = (p - mulm(gamma_q[0], dinv)) % p;
        solve_[2] = (p - mulm(one_q[1], dinv)) % p;
        solve_[3] = mulm(one_q[0], dinv);
    }

    // minimal polynomial of gamma: gamma^2 = alpha*1 + beta*gamma
    uint64_t alpha, beta;
    {
        auto g2 = reduce_mod_J(mul_vec(gamma_lift, gamma_lift));
        alpha = (mulm(solve_[0], g2[0]) + mulm(solve_[1], g2[1])) % p;
        beta = (mulm(solve_[2], g2[0]) + mulm(solve_[3], g2[1])) % p;
    }
    FpPoly minpoly(p, {(p - alpha) % p, (p - beta) % p, 1});
    if (!fp_is_irreducible(minpoly))
        throw NotRamifiedError("RamifiedResidueMap: residue algebra is not a field");

    fq2_ = std::make_shared<FiniteField>(p, 2);
    {
        bool found = false;
        for (uint64_t idx = 0; idx < p * p && !found; ++idx) {
            FFElem cand = fq2_->from_index(idx);
            FFElem val = fq2_->add(fq2_->mul(cand, cand),
                                   fq2_->neg(fq2_->add(fq2_->from_uint(alpha),
                                                       fq2_->mul(fq2_->from_uint(beta), cand))));
            if (fq2_->is_zero(val)) {
                gamma_image_ = cand;
                found = true;
            }
        }
        if (!found) throw std::logic_error("RamifiedResidueMap: minimal polynomial has no root in F_{p^2}");
    }

    // ideal generators: p*e_k and radical lifts
    for (size_t k = 0; k < m; ++k) {
        std::vector<Int> g(m, Int(0));
        g[k] = Int(static_cast<unsigned long>(p));
        ideal_gens_.push_back(std::move(g));
    }
    for (const auto& v : radical_) {
        std::vector<Int> g(m);
        for (size_t k = 0; k < m; ++k) g[k] = Int(static_cast<unsigned long>(v[k]));
        ideal_gens_.push_back(std::move(g));
    }

    // P^2 contains pO
    {
        ZLattice lat(m);
        for (const auto& g1 : ideal_gens_)
            for (const auto& g2 : ideal_gens_) {
                AlgElem prod = A.mul(order_->from_coords(g1), order_->from_coords(g2));
                auto pc = order_->coords(prod);
                std::vector<Int> row(m);
                for (size_t k = 0; k < m; ++k) row[k] = pc[k].get_num();
                lat.add_generator(row);
            }
        square_contains_pO_ = true;
        for (size_t k = 0; k < m; ++k) {
            std::vector<Int> v(m, Int(0));
            v[k] = Int(static_cast<unsigned long>(p));
            if (!lat.contains(v)) square_contains_pO_ = false;
        }
    }
    if (!square_contains_pO_)
        throw NotRamifiedError("RamifiedResidueMap: P^2 does not contain pO");

    // multiplicativity and unitality on basis pairs
    {
        FFElem one_img = apply(A.one());
        if (!(one_img == fq2_->one())) throw std::logic_error("RamifiedResidueMap: 1 does not map to 1");
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
                FFElem lhs = apply(A.mul(basis[i], basis[j]));
                FFElem rhs = fq2_->mul(apply(basis[i]), apply(basis[j]));
                if (!(lhs == rhs)) throw std::logic_error("RamifiedResidueMap: not multiplicative");
            }
    }
}

FFElem RamifiedResidueMap::apply_coords(const std::vector<Int>& order_coords) const {
    const size_t m = order_->basis().size();
    if (order_coords.size() != m) throw std::invalid_argument("RamifiedResidueMap: wrong length");
    auto mulm = [&](uint64_t a, uint64_t b) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
    };
    std::vector<uint64_t> v(m);
    for (size_t k = 0; k < m; ++k) v[k] = mpz_fdiv_ui(order_coords[k].get_mpz_t(), p_);
    for (size_t r = 0; r < radical_.size(); ++r) {
        uint64_t c = v[radical_pivots_[r]];
        if (c)
            for (size_t k = 0; k < m; ++k) v[k] = (v[k] + p_ - mulm(c, radical_[r][k])) % p_;
    }
    uint64_t q0 = v[quot_positions_[0]], q1 = v[quot_positions_[1]];
    uint64_t c1 = (mulm(solve_[0], q0) + mulm(solve_[1], q1)) % p_;
    uint64_t c2 = (mulm(solve_[2], q0) + mulm(solve_[3], q1)) % p_;
    return fq2_->add(fq2_->from_uint(c1), fq2_->mul(fq2_->from_uint(c2), gamma_image_));
}

FFElem RamifiedResidueMap::apply(const AlgElem& u) const {
    auto rc = order_->coords(u);
    std::vector<Int> c(rc.size());
    for (size_t i = 0; i < rc.size(); ++i) {
        if (!is_integer(rc[i])) throw std::invalid_argument("RamifiedResidueMap::apply: element not in order");
        c[i] = rc[i].get_num();
    }
    return apply_coords(c);
}

// ---------------------------------------------------------------------------

Int quotient_size_formula(const FFMatrix& m) {
    int d = m.dim();
    int r = m.rank();
    Int q0(static_cast<unsigned long>(m.field().size()));
    return pow_int(q0, static_cast<unsigned long>(d * (d - r)));
}

Int quotient_size_left_ideal(const FFMatrix& m) {
    int d = m.dim();
    auto fld = m.field_ptr();
    // dimension over F_{q0} of m * M_d, from the spans m * E_{kl}
    std::vector<std::vector<FFElem>> rows;
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
            FFMatrix e(fld, d);
            e.at(k, l) = fld->one();
            FFMatrix prod = m * e;
            std::vector<FFElem> flat;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) flat.push_back(prod.at(i, j));
            rows.push_back(std::move(flat));
        }
    // rank over F_{q0}
    size_t dim = static_cast<size_t>(d) * d;
    size_t rank = 0;
    for (size_t col = 0; col < dim && rank < rows.size(); ++col) {
        size_t piv = rank;
        while (piv < rows.size() && fld->is_zero(rows[piv][col])) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        FFElem inv = fld->inverse(rows[rank][col]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || fld->is_zero(rows[i][col])) continue;
            FFElem f = fld->mul(rows[i][col], inv);
            for (size_t j = col; j < dim; ++j)
                rows[i][j] = fld->sub(rows[i][j], fld->mul(f, rows[rank][j]));
        }
        ++rank;
    }
    Int q0(static_cast<unsigned long>(fld->size()));
    return pow_int(q0, static_cast<unsigned long>(dim - rank));
}

QuotientSize quotient_size(const SplittingMap& map, const std::vector<Int>& order_coords) {
    FFMatrix m = map.apply_coords(order_coords);
    QuotientSize qs;
    qs.rank = m.rank();
    qs.formula = quotient_size_formula(m);
    qs.left_ideal_count = quotient_size_left_ideal(m);
    return qs;
}

}  // namespace arithcode
