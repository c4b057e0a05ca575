#pragma once

#include "arithcode/quaternion.hpp"

#include <complex>

namespace arithcode {

struct PrecisionLossError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotUnitNormError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Cplx = std::complex<double>;

// 2x2 complex matrix, the uniform container for all completions: real-split
// places embed with real entries, ramified real places use the SU(2) model
// of H (which makes the plain Frobenius norm equal to the weighted norm
// with e_sigma = 2).
struct Mat2 {
    Cplx m[2][2];

    static Mat2 zero() { return Mat2{{{0, 0}, {0, 0}}}; }
    static Mat2 id() { return Mat2{{{1, 0}, {0, 1}}}; }

    Mat2 operator+(const Mat2& o) const;
    Mat2 operator-(const Mat2& o) const;
    Mat2 operator*(const Mat2& o) const;
    Mat2 scale(Cplx c) const;
    Cplx det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    Mat2 inverse() const;
    double frobenius_sq() const;
};

enum class PlaceType { RealSplit, RealRamified, Complex };

struct Place {
    PlaceType type;
    int n_sigma;  // [F_sigma : R]
    int e_sigma;  // 1, or 2 at ramified real places
    Cplx root;    // root of the defining polynomial (Im >= 0 representative)
    Mat2 img_i, img_j, img_k;
};

// Numeric realizations of A at every infinite place, with residual checks.
// Models are chosen so that at real places the squared Frobenius norm of the
// image is the rational form 2(x0^2 + |a|x1^2 + |b|x2^2 + |ab|x3^2) at sigma.
class Embeddings {
  public:
    Embeddings(std::shared_ptr<const QuatAlgebra> A, double tol = 1e-9);

    const std::vector<Place>& places() const { return places_; }
    const QuatAlgebra& algebra() const { return *A_; }
    int real_split_count() const;     // u
    int real_ramified_count() const;  // r
    int complex_count() const;        // r2

    Cplx eval_field(const NFElem& x, const Place& pl) const;
    Mat2 embed(const AlgElem& u, const Place& pl) const;

    // T2(x) = sum_sigma n_sigma |sigma(x)|_2^2, numerically.
    double t2_numeric(const AlgElem& u) const;

    // rho(g) = max over places of |log singular value|, via
    // 2 cosh(2a) = |sigma(g)|_2^2 at split/complex places; ramified real
    // places contribute 0. Requires nrd(g) = 1 (exact).
    double rho(const AlgElem& g) const;

  private:
    std::shared_ptr<const QuatAlgebra> A_;
    std::vector<Place> places_;
    double tol_;
};

// Roots of a monic integer polynomial by Durand-Kerner iteration,
// deterministic starting configuration.
std::vector<Cplx> polynomial_roots(const std::vector<Int>& coeffs);

}  // namespace arithcode
