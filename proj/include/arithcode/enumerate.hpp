#pragma once

#include "arithcode/embeddings.hpp"
#include "arithcode/order.hpp"

#include <functional>

namespace arithcode {

struct NumericallyDegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnumStats {
    uint64_t nodes = 0;
    uint64_t candidates = 0;
};

// Lattice elements as integer coordinate vectors on the order basis,
// canonically sorted (lexicographic), plus the borderline bucket: candidates
// whose membership is decided only up to the configured slack. Borderline
// elements are reported, never silently included.
struct EnumResult {
    std::vector<std::vector<Int>> elements;
    std::vector<std::vector<Int>> borderline;
    EnumStats stats;
};

struct EnumOptions {
    double slack = 1e-9;          // relative, for numeric threshold comparisons
    double pivot_floor = 1e-12;   // Cholesky degeneracy floor
    bool half = false;            // one representative per +-pair
    bool include_zero = true;
};

// Exact T2 Gram matrix on the order basis: entries
//   2 * Tr_{F/Q}(x0 y0 + ea*a x1 y1 + eb*b x2 y2 + ea*eb*ab x3 y3),
// where ea, eb are the (uniform) signs making each term totally positive.
// Requires F totally real and sign(sigma(a)), sigma(b)) independent of the
// real place; throws otherwise.
QMatrix t2_gram(const Order& order, const Embeddings& emb);

// All lattice vectors x with exact Q(x) <= bound, Q given by gram
// (positive definite). Fincke-Pohst with floating Cholesky and slack, exact
// rational final filter.
EnumResult enumerate_lattice(const Order& order, const QMatrix& gram, const Rational& bound,
                             const EnumOptions& opts = {});

// Gamma cap B(t) for Gamma = O^1: elements of the order with nrd = 1 and
// rho <= t. Enforces the hypothesis that A is a division algebra unramified
// at all real places (d = 2).
EnumResult enumerate_units_in_ball(const Order& order, const Embeddings& emb, double t,
                                   const EnumOptions& opts = {});

// O cap (c + B(t)) for the additive per-place ball. center entries are per
// place; empty center means 0 (exact path when the field is Q).
EnumResult enumerate_additive_ball(const Order& order, const Embeddings& emb, double t,
                                   const std::vector<Mat2>& center = {},
                                   const EnumOptions& opts = {});

}  // namespace arithcode
