#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arithcode/codes.hpp"
#include "arithcode/config.hpp"
#include "arithcode/enumerate.hpp"

#include <cmath>
#include <random>

using namespace arithcode;

namespace {

AlgebraConfig load(const Json& j) { return algebra_from_json(j); }

FFMatrix random_matrix(std::shared_ptr<const FiniteField> f, int d, std::mt19937_64& rng) {
    FFMatrix m(f, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m.at(i, j) = f->from_index(rng() % f->size());
    return m;
}

}  // namespace

TEST_CASE("theta maps 1 to identity words and collapses congruent elements") {
    auto cfg = load(builtin_config_b6());
    std::vector<SplittingMap> maps;
    maps.emplace_back(cfg.order, make_prime_data(cfg.order->algebra().field(), 5, 1));

    std::vector<Int> one_coords;
    {
        auto rc = cfg.order->coords(cfg.algebra->one());
        for (const auto& c : rc) one_coords.push_back(c.get_num());
    }
    Code c1 = theta({one_coords}, maps);
    REQUIRE(c1.words.size() == 1);
    CHECK(c1.words[0].blocks[0] == FFMatrix::identity(maps[0].field(), 2));
    CHECK(c1.N == 2);
    CHECK(c1.q == doctest::Approx(25.0));

    // x and x + 5 y reduce identically: collision recorded
    std::vector<Int> x{Int(1), Int(2), Int(0), Int(1)};
    std::vector<Int> y{Int(1) + 5 * 3, Int(2) - 5, Int(0), Int(1) + 5 * 7};
    Code c2 = theta({x, y}, maps);
    CHECK(c2.words.size() == 1);
    REQUIRE(c2.collisions.size() == 1);
    CHECK_FALSE(c2.injective());
}

TEST_CASE("distances: rank sums and column Hamming") {
    auto f5 = std::make_shared<FiniteField>(5, 1);
    std::mt19937_64 rng(61);

    Codeword x, y;
    x.blocks.push_back(FFMatrix::identity(f5, 2));
    y.blocks.push_back(FFMatrix::identity(f5, 2));
    auto [d0, h0] = distances(x, y);
    CHECK(d0 == 0);
    CHECK(h0 == 0);

    // invertible difference: full rank
    Codeword z;
    FFMatrix m(f5, 2);
    m.at(0, 0) = f5->from_uint(2);
    m.at(1, 1) = f5->from_uint(3);
    z.blocks.push_back(FFMatrix::identity(f5, 2) + m);
    auto [d1, h1] = distances(x, z);
    CHECK(d1 == 2);

    // d_R <= d_H on random pairs
    for (int trial = 0; trial < 1000; ++trial) {
        Codeword u, v;
        for (int b = 0; b < 3; ++b) {
            u.blocks.push_back(random_matrix(f5, 2, rng));
            v.blocks.push_back(random_matrix(f5, 2, rng));
        }
        auto [dr, dh] = distances(u, v);
        CHECK(dr <= dh);
        CHECK(dh <= 6);
    }

    Codeword w;
    w.blocks.push_back(FFMatrix::identity(f5, 2));
    w.blocks.push_back(FFMatrix::identity(f5, 2));
    CHECK_THROWS_AS(distances(x, w), ShapeMismatchError);
}

TEST_CASE("min_distance and expand_columns") {
    auto f3 = std::make_shared<FiniteField>(3, 1);
    Code c;
    c.s = 2;
    c.d = 2;
    c.q0 = 3;
    c.N = 4;
    c.q = 9;
    Codeword w1, w2;
    for (int b = 0; b < 2; ++b) {
        w1.blocks.push_back(FFMatrix(f3, 2));
        w2.blocks.push_back(FFMatrix::identity(f3, 2));
    }
    c.words = {w1, w2};
    auto rep = min_distance(c);
    CHECK(rep.d_R == 4);  // invertible difference in both blocks
    CHECK(rep.d_H == 4);

    ColumnCode col = expand_columns(c);
    CHECK(col.words.size() == c.words.size());
    CHECK(col.N == c.N);
    CHECK(col.min_hamming() >= rep.d_R);
    CHECK(col.rate() == doctest::Approx(c.rate()));
    // identity word expands to standard basis columns
    CHECK(col.words[1][0] == std::vector<uint64_t>{1, 0});
    CHECK(col.words[1][1] == std::vector<uint64_t>{0, 1});

    Code single;
    single.words = {w1};
    single.N = 4;
    single.q = 9;
    CHECK_THROWS_AS(min_distance(single), TooFewWordsError);
}

TEST_CASE("distance_bound_mult") {
    // n=1, d=2, s=1, q=25, t=0.5:
    // N - n d^2 log2/log q - 2 n d^2 t/log q = 2 - 0.8614 - 1.2427
    double b = distance_bound_mult(1, 2, 1, 0.5, 25.0);
    CHECK(b == doctest::Approx(-0.104023).epsilon(1e-3));
    // decreasing in t
    double prev = distance_bound_mult(1, 2, 1, 0.1, 25.0);
    for (double t : {0.2, 0.4, 0.8, 1.6}) {
        double cur = distance_bound_mult(1, 2, 1, t, 25.0);
        CHECK(cur < prev);
        prev = cur;
    }
    // t -> 0+, q -> infinity: bound -> N
    double b1 = distance_bound_mult(1, 2, 1, 1e-9, 1e12);
    double b2 = distance_bound_mult(1, 2, 1, 1e-12, 1e100);
    double b3 = distance_bound_mult(1, 2, 1, 1e-15, 1e300);
    CHECK(b1 < b2);
    CHECK(b2 < b3);
    CHECK(b3 == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("injectivity_threshold") {
    double t = injectivity_threshold(2, 1, 2, 25.0);
    CHECK(t == doctest::Approx(0.45815).epsilon(1e-4));
    // monotone increasing in q
    double prev = injectivity_threshold(2, 1, 2, 9.0);
    for (double q : {25.0, 49.0, 121.0}) {
        double cur = injectivity_threshold(2, 1, 2, q);
        CHECK(cur > prev);
        prev = cur;
    }
    CHECK_THROWS_AS(injectivity_threshold(1, 4, 2, 1.5), InfeasibleError);
}

TEST_CASE("distance_bound_add") {
    // t = sqrt(d)/2 cancels the correction terms
    double at_cancel = distance_bound_add(1, 2, 1, std::sqrt(2.0) / 2, 25.0);
    CHECK(at_cancel == doctest::Approx(2.0).epsilon(1e-12));
    // n=1, d=2, q=25, s=1, t=2
    double b = distance_bound_add(1, 2, 1, 2.0, 25.0);
    CHECK(b == doctest::Approx(0.70795).epsilon(1e-3));
    // decreasing in t
    CHECK(distance_bound_add(1, 2, 1, 3.0, 25.0) < b);
}

TEST_CASE("end-to-end: B6 with S = {5} below the injectivity threshold") {
    auto cfg = load(builtin_config_b6());
    Embeddings emb(cfg.algebra);
    std::vector<SplittingMap> maps;
    maps.emplace_back(cfg.order, make_prime_data(cfg.order->algebra().field(), 5, 1));

    double tmax = injectivity_threshold(2, 1, 2, 25.0);
    double t = 0.45;
    REQUIRE(t < tmax);
    EnumResult units = enumerate_units_in_ball(*cfg.order, emb, t);
    Code code = theta(units.elements, maps);
    CHECK(code.injective());
    CHECK(code.words.size() == units.elements.size());

    auto rep = min_distance(code);
    double bound = distance_bound_mult(1, 2, 1, t, 25.0);
    CHECK(rep.d_R >= bound);
    CHECK(rep.d_R <= rep.d_H);

    // rate consistency with the column code
    ColumnCode col = expand_columns(code);
    CHECK(col.rate() == doctest::Approx(code.rate()).epsilon(1e-12));
    CHECK(col.min_hamming() >= rep.d_R);
}

TEST_CASE("primes in S must share the residue field") {
    auto cfg = load(builtin_config_b6());
    std::vector<SplittingMap> bad;
    bad.emplace_back(cfg.order, make_prime_data(cfg.order->algebra().field(), 5, 1));
    bad.emplace_back(cfg.order, make_prime_data(cfg.order->algebra().field(), 7, 1));
    CHECK_THROWS_AS(theta({{Int(1), Int(0), Int(0), Int(0)}}, bad), MapMismatchError);
}

TEST_CASE("two-prime code: both primes above 7 in Q(sqrt 2)") {
    // 7 splits in Q(sqrt 2) (3^2 = 2 mod 7): S = {p_1, p_2}, common q0 = 7
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

    PrimeData p1 = make_prime_data(*F, 7, 1, true, 0);
    PrimeData p2 = make_prime_data(*F, 7, 1, true, 1);
    CHECK_FALSE(p1.ideal_factor.coeffs == p2.ideal_factor.coeffs);
    CHECK_THROWS(make_prime_data(*F, 7, 1, true, 2));
    std::vector<SplittingMap> maps;
    maps.emplace_back(O, p1);
    maps.emplace_back(O, p2);

    // the two reductions of sqrt2 are the two square roots of 2 mod 7
    uint64_t r1 = maps[0].reduce_field(sqrt2)[0], r2 = maps[1].reduce_field(sqrt2)[0];
    CHECK(r1 != r2);
    CHECK((r1 * r1) % 7 == 2);
    CHECK((r2 * r2) % 7 == 2);

    // N = ds = 4 over q = 49; elements congruent mod one prime but not the
    // other stay distinguishable
    std::vector<Int> x(8, Int(0)), y(8, Int(0));
    x[0] = 1;
    y[0] = 8;  // 1 + 7: congruent mod both primes' residue characteristic...
    Code c = theta({x, y}, maps);
    CHECK(c.N == 4);
    CHECK(c.words.size() == 1);  // 7 | (y - x): collision at both places
    std::vector<Int> z(8, Int(0));
    z[0] = 1;
    z[1] = 7;  // 1 + 7 sqrt2 is 1 + same multiple at both primes... differs
    Code c2 = theta({x, z}, maps);
    CHECK(c2.words.size() == 1);
    // an element differing by a generator of one prime only: sqrt2 - r1 maps
    // to 0 at p_1 but not at p_2
    std::vector<Int> w(8, Int(0));
    w[0] = 1 + static_cast<long>(r1);
    w[1] = -1;  // x + (r1 - sqrt2)
    Code c3 = theta({x, w}, maps);
    CHECK(c3.words.size() == 2);
    auto [dr, dh] = distances(c3.words[0], c3.words[1]);
    CHECK(dr >= 1);
    CHECK(dr <= dh);

    // end-to-end: units of the free order inside B(t), two-prime code
    Embeddings emb(A);
    double t = 0.6;
    double tmax = injectivity_threshold(4, 2, 2, 49.0);
    REQUIRE(t < tmax);
    EnumResult units = enumerate_units_in_ball(*O, emb, t);
    REQUIRE(units.elements.size() >= 2);
    Code code = theta(units.elements, maps);
    CHECK(code.injective());
    auto rep = min_distance(code);
    double bound = distance_bound_mult(2, 2, 2, t, 49.0);
    CHECK(rep.d_R >= bound);
    CHECK(rep.d_R <= rep.d_H);
    CHECK(rep.d_H <= code.N);
}

TEST_CASE("collision implies norm divisible by q0^{d d}") {
    auto cfg = load(builtin_config_b6());
    const QuatAlgebra& A = *cfg.algebra;
    std::vector<SplittingMap> maps;
    maps.emplace_back(cfg.order, make_prime_data(A.field(), 5, 1));
    std::vector<Int> x{Int(2), Int(1), Int(3), Int(0)};
    std::vector<Int> y{Int(2) + 5, Int(1) - 10, Int(3), Int(5)};
    Code c = theta({x, y}, maps);
    REQUIRE(c.collisions.size() == 1);
    std::vector<Int> diff(4);
    for (int i = 0; i < 4; ++i) diff[i] = x[i] - y[i];
    AlgElem z = cfg.order->from_coords(diff);
    Rational nz = A.absolute_norm(z);
    REQUIRE(is_integer(nz));
    CHECK(nz.get_num() % pow_int(Int(5), 4) == 0);
}
