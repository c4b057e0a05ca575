#pragma once

#include "arithcode/residue.hpp"

namespace arithcode {

struct MapMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShapeMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooFewWordsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A codeword: s blocks, each a d x d matrix over F_{q0}. The ramified
// variant uses 1 x 1 blocks over F_{p^e}.
struct Codeword {
    std::vector<FFMatrix> blocks;

    bool operator==(const Codeword& o) const = default;
    std::vector<uint64_t> key() const;
};

struct Collision {
    std::vector<Int> first, second;  // order coordinates of colliding inputs
};

struct Code {
    std::vector<Codeword> words;  // deduplicated, canonical order
    int s = 0;
    int d = 0;
    uint64_t q0 = 0;
    int N = 0;         // d * s
    double q = 0;      // q0^d
    std::vector<Collision> collisions;
    double t = 0;      // construction metadata
    std::string algebra_id;

    bool injective() const { return collisions.empty(); }
    double rate() const;
};

// Theta: one codeword per element (order coordinates); duplicate codewords
// collapse and the colliding pair is recorded.
Code theta(const std::vector<std::vector<Int>>& elements, const std::vector<SplittingMap>& maps);

// Ramified-alphabet variant: blocks are scalars in F_{p^2}.
Code theta_ramified(const std::vector<std::vector<Int>>& elements,
                    const std::vector<RamifiedResidueMap>& maps);

// (sum-rank distance, Hamming distance of the column expansion)
std::pair<int, int> distances(const Codeword& x, const Codeword& y);

struct DistanceReport {
    int d_R = 0;
    int d_H = 0;
    double rate = 0;
    double bound_dR = 0;  // caller-provided bound echoed into the report
    bool bound_vacuous = false;
    std::pair<size_t, size_t> witnesses{0, 0};
};

DistanceReport min_distance(const Code& c);

// The column code: length N = d*s over the alphabet F_{q0}^d.
struct ColumnCode {
    std::vector<std::vector<std::vector<uint64_t>>> words;  // word -> position -> column key
    int N = 0;
    double q = 0;
    size_t size() const { return words.size(); }
    double rate() const;
    int min_hamming() const;
};

ColumnCode expand_columns(const Code& c);

// d_R(C) >= N - n d^2 log2/log q - 2 n d^2 t / log q
double distance_bound_mult(int n, int d, int s, double t, double q);
// t_max = ((N log q)/(n d^2) - log 2)/2; throws InfeasibleError
double injectivity_threshold(int N, int n, int d, double q);
// d_R(C) >= N - d^2 n log(2t)/log q + (d^2 n / 2) log d / log q
double distance_bound_add(int n, int d, int s, double t, double q);

}  // namespace arithcode
