#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arithcode/config.hpp"
#include "arithcode/hilbert.hpp"
#include "arithcode/residue.hpp"

#include <random>

using namespace arithcode;

namespace {

AlgebraConfig load(const Json& j) { return algebra_from_json(j); }

// Solvability of z^2 = a x^2 + b y^2 over Q_p, tested by brute force modulo
// p^k on primitive triples. Independent oracle for the Hilbert symbol.
bool qp_solvable(long a, long b, uint64_t p, int k) {
    uint64_t pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    auto norm = [&](long v) {
        long m = v % static_cast<long>(pk);
        if (m < 0) m += pk;
        return static_cast<uint64_t>(m);
    };
    for (uint64_t x = 0; x < pk; ++x)
        for (uint64_t y = 0; y < pk; ++y)
            for (uint64_t z = 0; z < pk; ++z) {
                if (x % p == 0 && y % p == 0 && z % p == 0) continue;
                unsigned __int128 lhs = static_cast<unsigned __int128>(z) * z % pk;
                unsigned __int128 rhs =
                    (static_cast<unsigned __int128>(norm(a)) * x % pk * x +
                     static_cast<unsigned __int128>(norm(b)) * y % pk * y) %
                    pk;
                if (lhs == rhs) return true;
            }
    return false;
}

}  // namespace

TEST_CASE("quaternion multiplication relations") {
    auto cfg = load(builtin_config_hurwitz());
    const QuatAlgebra& A = *cfg.algebra;
    AlgElem i = A.gen_i(), j = A.gen_j(), k = A.gen_k();
    CHECK(A.mul(i, j) == k);
    CHECK(A.mul(j, i) == A.neg(k));
    AlgElem u{A.field().from_rational(rat(3, 2)), A.field().from_rational(rat(-1, 3)),
              A.field().one(), A.field().zero()};
    CHECK(A.mul(u, A.one()) == u);
    // (1+i)(1-i) = 2 for a = -1
    AlgElem onePlusI = A.add(A.one(), i);
    AlgElem oneMinusI = A.sub(A.one(), i);
    CHECK(A.mul(onePlusI, oneMinusI) == A.from_scalar(Rational(2)));
}

TEST_CASE("nrd and trd") {
    auto cfg = load(builtin_config_hurwitz());
    const QuatAlgebra& A = *cfg.algebra;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto rc = [&]() {
            return A.field().from_rational(rat(static_cast<long>(rng() % 11) - 5, 1 + rng() % 2));
        };
        AlgElem u{rc(), rc(), rc(), rc()};
        // Hamiltonians: nrd = x^2 + y^2 + z^2 + w^2, trd = 2x
        Rational expect = u.x.coords[0] * u.x.coords[0] + u.y.coords[0] * u.y.coords[0] +
                          u.z.coords[0] * u.z.coords[0] + u.w.coords[0] * u.w.coords[0];
        CHECK(A.nrd(u).coords[0] == expect);
        CHECK(A.trd(u).coords[0] == 2 * u.x.coords[0]);
        // u * conj(u) = nrd(u)
        AlgElem prod = A.mul(u, A.conj(u));
        AlgElem expected{A.nrd(u), A.field().zero(), A.field().zero(), A.field().zero()};
        CHECK(prod == expected);
    }
    CHECK(A.nrd(A.one()).coords[0] == 1);
    CHECK(A.trd(A.one()).coords[0] == 2);

    auto b6 = load(builtin_config_b6());
    AlgElem onePlusJ = b6.algebra->add(b6.algebra->one(), b6.algebra->gen_j());
    CHECK(b6.algebra->nrd(onePlusJ).coords[0] == -2);
}

TEST_CASE("nrd multiplicative, trd additive") {
    auto cfg = load(builtin_config_b6());
    const QuatAlgebra& A = *cfg.algebra;
    std::mt19937_64 rng(17);
    auto re = [&]() {
        return A.field().from_rational(rat(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3));
    };
    for (int trial = 0; trial < 40; ++trial) {
        AlgElem u{re(), re(), re(), re()}, v{re(), re(), re(), re()};
        CHECK(A.nrd(A.mul(u, v)) == A.field().mul(A.nrd(u), A.nrd(v)));
        CHECK(A.trd(A.add(u, v)) == A.field().add(A.trd(u), A.trd(v)));
    }
}

TEST_CASE("verify_order: Lipschitz vs Hurwitz") {
    auto F = std::make_shared<NumberField>(NumberField::rationals());
    auto A = std::make_shared<QuatAlgebra>(F, F->from_rational(Rational(-1)),
                                           F->from_rational(Rational(-1)));
    std::vector<AlgElem> lipschitz{A->one(), A->gen_i(), A->gen_j(), A->gen_k()};
    Order L(A, lipschitz);
    auto repL = L.verify(Int(2));
    CHECK(repL.is_ring);
    CHECK(repL.is_integral);
    CHECK(repL.contains_one);
    CHECK(repL.disc_norm == 16);
    CHECK_FALSE(repL.is_maximal);

    auto cfg = load(builtin_config_hurwitz());
    auto repH = cfg.order->verify(cfg.ramification.reduced_discriminant_norm);
    CHECK(repH.disc_norm == 4);
    CHECK(repH.is_maximal);

    // scaled basis loses 1
    std::vector<AlgElem> scaled;
    for (const auto& b : lipschitz) scaled.push_back(A->mul_scalar(b, Rational(2)));
    Order S(A, scaled);
    CHECK_FALSE(S.verify(Int(2)).contains_one);

    // dependent basis is rejected
    std::vector<AlgElem> dep{A->one(), A->gen_i(), A->gen_j(), A->add(A->one(), A->gen_i())};
    CHECK_THROWS_AS(Order(A, dep), NotFullRankError);
}

TEST_CASE("B6 and disc3 orders are maximal") {
    auto b6 = load(builtin_config_b6());
    CHECK(b6.ramification.reduced_discriminant_norm == 6);
    auto rep = b6.order->verify(b6.ramification.reduced_discriminant_norm);
    CHECK(rep.is_ring);
    CHECK(rep.disc_norm == 36);
    CHECK(rep.is_maximal);

    auto d3 = load(builtin_config_disc3());
    CHECK(d3.ramification.reduced_discriminant_norm == 3);
    auto rep3 = d3.order->verify(d3.ramification.reduced_discriminant_norm);
    CHECK(rep3.disc_norm == 9);
    CHECK(rep3.is_maximal);
}

TEST_CASE("hilbert symbols") {
    CHECK(hilbert_symbol(Rational(-1), Rational(-1), 0) == -1);
    CHECK(hilbert_symbol(Rational(-1), Rational(3), 3) == -1);
    for (uint64_t v : {uint64_t(0), uint64_t(2), uint64_t(3), uint64_t(5), uint64_t(7)})
        CHECK(hilbert_symbol(Rational(1), rat(-30), v) == 1);

    // brute-force solvability oracle over Q_p
    struct Case {
        long a, b;
        uint64_t p;
        int k;
    };
    for (const Case& c : {Case{-1, 3, 3, 5}, Case{-1, 3, 5, 3}, Case{-1, -1, 3, 3},
                          Case{3, -1, 3, 5}, Case{-2, 5, 5, 3}}) {
        bool solvable = qp_solvable(c.a, c.b, c.p, c.k);
        int sym = hilbert_symbol(Rational(c.a), Rational(c.b), c.p);
        CHECK(solvable == (sym == 1));
    }

    // product formula on random small-support pairs
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        long a = static_cast<long>(rng() % 60) - 30;
        long b = static_cast<long>(rng() % 60) - 30;
        if (a == 0 || b == 0) continue;
        int prod = hilbert_symbol(Rational(a), Rational(b), 0);
        for (uint64_t p : primes_up_to(61)) prod *= hilbert_symbol(Rational(a), Rational(b), p);
        CHECK(prod == 1);
    }
}

TEST_CASE("ramification sets") {
    Ramification h = ramification_set(Rational(-1), Rational(-1));
    CHECK(h.finite == std::set<uint64_t>{2});
    CHECK(h.real_ramified);
    CHECK(h.reduced_discriminant_norm == 2);

    Ramification b6 = ramification_set(Rational(-1), Rational(3));
    CHECK(b6.finite == std::set<uint64_t>{2, 3});
    CHECK_FALSE(b6.real_ramified);
    CHECK(b6.reduced_discriminant_norm == 6);

    Ramification split = ramification_set(Rational(1), Rational(1));
    CHECK(split.finite.empty());
    CHECK_FALSE(split.is_division());
}

TEST_CASE("splitting map at p = 5 for B6") {
    auto cfg = load(builtin_config_b6());
    SplittingMap sm(cfg.order, make_prime_data(cfg.order->algebra().field(), 5, 1));
    const QuatAlgebra& A = *cfg.algebra;
    auto fq = sm.field();
    CHECK(fq->size() == 5);

    // generators map to matrices satisfying the defining relations
    FFMatrix I = sm.apply(A.gen_i()), J = sm.apply(A.gen_j());
    FFMatrix id = FFMatrix::identity(fq, 2);
    CHECK(I * I == id.scale(fq->from_uint(4)));  // -1 mod 5
    CHECK(J * J == id.scale(fq->from_uint(3)));
    FFMatrix IJ = I * J, JI = J * I;
    CHECK(IJ == JI.scale(fq->from_uint(4)));     // IJ = -JI
    CHECK(sm.apply(A.one()) == id);

    // nrd compatibility: det(iota(u)) = nrd(u) mod p on random order elements
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Int> c(4);
        for (auto& v : c) v = Int(static_cast<long>(rng() % 41) - 20);
        AlgElem u = cfg.order->from_coords(c);
        FFMatrix img = sm.apply_coords(c);
        CHECK(img.det() == sm.reduce_field(A.nrd(u)));
        CHECK(img.trace() == sm.reduce_field(A.trd(u)));
    }

    // bijectivity by counting: all 625 residue classes hit distinct matrices
    std::set<std::vector<uint64_t>> images;
    for (int c0 = 0; c0 < 5; ++c0)
        for (int c1 = 0; c1 < 5; ++c1)
            for (int c2 = 0; c2 < 5; ++c2)
                for (int c3 = 0; c3 < 5; ++c3)
                    images.insert(sm.apply_coords({Int(c0), Int(c1), Int(c2), Int(c3)}).key());
    CHECK(images.size() == 625);
}

TEST_CASE("splitting map respects multiplication (independent recomputation)") {
    auto cfg = load(builtin_config_disc3());
    SplittingMap sm(cfg.order, make_prime_data(cfg.order->algebra().field(), 2, 1));
    CHECK(sm.field()->size() == 2);
    const QuatAlgebra& A = *cfg.algebra;
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Int> c1(4), c2(4);
        for (auto& v : c1) v = Int(static_cast<long>(rng() % 9) - 4);
        for (auto& v : c2) v = Int(static_cast<long>(rng() % 9) - 4);
        AlgElem u = cfg.order->from_coords(c1), v = cfg.order->from_coords(c2);
        CHECK(sm.apply(A.mul(u, v)) == sm.apply(u) * sm.apply(v));
    }
    CHECK_THROWS_AS(
        SplittingMap(cfg.order, make_prime_data(cfg.order->algebra().field(), 3, 1, false)),
        RamifiedPrimeError);

    // det and trace agree with nrd and trd on the whole quotient O/2O
    for (int c0 = 0; c0 < 2; ++c0)
        for (int c1 = 0; c1 < 2; ++c1)
            for (int c2 = 0; c2 < 2; ++c2)
                for (int c3 = 0; c3 < 2; ++c3) {
                    std::vector<Int> c{Int(c0), Int(c1), Int(c2), Int(c3)};
                    AlgElem u = cfg.order->from_coords(c);
                    FFMatrix img = sm.apply_coords(c);
                    CHECK(img.det() == sm.reduce_field(A.nrd(u)));
                    CHECK(img.trace() == sm.reduce_field(A.trd(u)));
                }
}

TEST_CASE("ramified residue map at p = 3 for B6") {
    auto cfg = load(builtin_config_b6());
    RamifiedResidueMap rm(cfg.order, 3);
    auto f9 = rm.field();
    CHECK(f9->size() == 9);
    CHECK(rm.apply(cfg.algebra->one()) == f9->one());
    CHECK(rm.square_contains_pO());

    // enumerate all 81 classes of O/3O: image must be all of F_9
    std::set<uint64_t> images;
    for (int c0 = 0; c0 < 3; ++c0)
        for (int c1 = 0; c1 < 3; ++c1)
            for (int c2 = 0; c2 < 3; ++c2)
                for (int c3 = 0; c3 < 3; ++c3)
                    images.insert(f9->to_index(rm.apply_coords({Int(c0), Int(c1), Int(c2), Int(c3)})));
    CHECK(images.size() == 9);

    // multiplicativity on random pairs (recomputed through the order)
    std::mt19937_64 rng(37);
    const QuatAlgebra& A = *cfg.algebra;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Int> c1(4), c2(4);
        for (auto& v : c1) v = Int(static_cast<long>(rng() % 21) - 10);
        for (auto& v : c2) v = Int(static_cast<long>(rng() % 21) - 10);
        AlgElem u = cfg.order->from_coords(c1), v = cfg.order->from_coords(c2);
        CHECK(rm.apply(A.mul(u, v)) == f9->mul(rm.apply(u), rm.apply(v)));
    }

    CHECK_THROWS_AS(RamifiedResidueMap(cfg.order, 5), NotRamifiedError);
}

TEST_CASE("ramified residue map at p = 2 for Hurwitz") {
    auto cfg = load(builtin_config_hurwitz());
    RamifiedResidueMap rm(cfg.order, 2);
    CHECK(rm.field()->size() == 4);
    CHECK(rm.square_contains_pO());
    std::set<uint64_t> images;
    for (int c0 = 0; c0 < 2; ++c0)
        for (int c1 = 0; c1 < 2; ++c1)
            for (int c2 = 0; c2 < 2; ++c2)
                for (int c3 = 0; c3 < 2; ++c3)
                    images.insert(
                        rm.field()->to_index(rm.apply_coords({Int(c0), Int(c1), Int(c2), Int(c3)})));
    CHECK(images.size() == 4);
}

TEST_CASE("splitting map with residue degree 2 over Q(sqrt 2)") {
    // (-1, 3) over Q(sqrt 2); 5 is inert, so the residue field is F_25
    auto F = std::make_shared<NumberField>(
        NumberField({Int(-2), Int(0), Int(1)}, QMatrix::identity(2), 2, 0));
    auto A = std::make_shared<QuatAlgebra>(F, F->from_rational(Rational(-1)),
                                           F->from_rational(Rational(3)));
    NFElem sqrt2{{Rational(0), Rational(1)}};
    std::vector<AlgElem> basis;
    for (const AlgElem& g : {A->one(), A->gen_i(), A->gen_j(), A->gen_k()}) {
        basis.push_back(g);
        basis.push_back(AlgElem{F->mul(sqrt2, g.x), F->mul(sqrt2, g.y), F->mul(sqrt2, g.z),
                                F->mul(sqrt2, g.w)});
    }
    auto O = std::make_shared<Order>(A, basis);
    PrimeData pd = make_prime_data(*F, 5, 2);
    CHECK(pd.ideal_factor.degree() == 2);
    SplittingMap sm(O, pd);
    CHECK(sm.field()->size() == 25);

    // relations and norm compatibility (the constructor has already verified
    // the homomorphism and bijectivity; spot-check independently)
    const auto fq = sm.field();
    FFMatrix I = sm.apply(A->gen_i()), J = sm.apply(A->gen_j());
    FFMatrix id = FFMatrix::identity(fq, 2);
    CHECK(I * I == id.scale(fq->neg(fq->one())));
    CHECK(J * J == id.scale(fq->from_uint(3)));
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Int> c(8);
        for (auto& v : c) v = Int(static_cast<long>(rng() % 21) - 10);
        AlgElem u = O->from_coords(c);
        CHECK(sm.apply_coords(c).det() == sm.reduce_field(A->nrd(u)));
    }

    // the square root of 2 reduces to a root of X^2 - 2 in F_25
    FFElem s2 = sm.reduce_field(sqrt2);
    CHECK(fq->mul(s2, s2) == fq->from_uint(2));

    // p dividing the index is rejected: f must exist among the factor degrees
    CHECK_THROWS(make_prime_data(*F, 7, 3));

    // p dividing [Z_F : Z[theta]] is rejected (Q(sqrt5), index 2)
    QMatrix gb(2, 2);
    gb.at(0, 0) = 1;
    gb.at(1, 0) = rat(1, 2);
    gb.at(1, 1) = rat(1, 2);
    NumberField F5({Int(-5), Int(0), Int(1)}, gb, 2, 0);
    CHECK_THROWS(make_prime_data(F5, 2, 1));
    CHECK_NOTHROW(make_prime_data(F5, 11, 1));  // 11 splits: x^2 - 5 = (x-4)(x+4)
}

TEST_CASE("absolute norm equals the lattice index |O/xO|") {
    auto cfg = load(builtin_config_b6());
    const QuatAlgebra& A = *cfg.algebra;
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Int> c(4);
        for (auto& v : c) v = Int(static_cast<long>(rng() % 7) - 3);
        AlgElem x = cfg.order->from_coords(c);
        if (A.is_zero(x)) continue;
        // index of the left ideal xO in O: |det| of the coordinate matrix of
        // the products x b_i
        QMatrix m(4, 4);
        for (int i = 0; i < 4; ++i) {
            auto pc = cfg.order->coords(A.mul(x, cfg.order->basis()[i]));
            for (int k = 0; k < 4; ++k) m.at(i, k) = pc[k];
        }
        CHECK(abs(m.det()) == A.absolute_norm(x));
    }
}

TEST_CASE("quotient size formula vs left-ideal count") {
    auto cfg = load(builtin_config_b6());
    SplittingMap sm(cfg.order, make_prime_data(cfg.order->algebra().field(), 5, 1));
    // invertible image: full ideal
    auto qs1 = quotient_size(sm, {Int(1), Int(0), Int(0), Int(0)});
    CHECK(qs1.rank == 2);
    CHECK(qs1.formula == 1);
    CHECK(qs1.left_ideal_count == 1);
    // zero image
    auto qs0 = quotient_size(sm, {Int(5), Int(0), Int(0), Int(0)});
    CHECK(qs0.rank == 0);
    CHECK(qs0.formula == 625);
    CHECK(qs0.left_ideal_count == 625);
    // every residue class: formula == dimension count
    for (int c0 = 0; c0 < 5; ++c0)
        for (int c1 = 0; c1 < 5; ++c1)
            for (int c2 = 0; c2 < 5; ++c2)
                for (int c3 = 0; c3 < 5; ++c3) {
                    auto qs = quotient_size(sm, {Int(c0), Int(c1), Int(c2), Int(c3)});
                    CHECK(qs.formula == qs.left_ideal_count);
                }
}
