#include "arithcode/embeddings.hpp"

#include <algorithm>
#include <cmath>

namespace arithcode {

Mat2 Mat2::operator+(const Mat2& o) const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
    return r;
}

Mat2 Mat2::operator-(const Mat2& o) const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
    return r;
}

Mat2 Mat2::operator*(const Mat2& o) const {
    Mat2 r = zero();
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j) r.m[i][j] += m[i][k] * o.m[k][j];
    return r;
}

Mat2 Mat2::scale(Cplx c) const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] * c;
    return r;
}

Mat2 Mat2::inverse() const {
    Cplx d = det();
    Mat2 r;
    r.m[0][0] = m[1][1] / d;
    r.m[1][1] = m[0][0] / d;
    r.m[0][1] = -m[0][1] / d;
    r.m[1][0] = -m[1][0] / d;
    return r;
}

double Mat2::frobenius_sq() const {
    double s = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += std::norm(m[i][j]);
    return s;
}

std::vector<Cplx> polynomial_roots(const std::vector<Int>& coeffs) {
    int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 1) return {};
    std::vector<Cplx> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = coeffs[i].get_d();
    // Durand-Kerner with the usual (0.4 + 0.9i)^k start
    std::vector<Cplx> z(n);
    Cplx seed(0.4, 0.9), acc(1, 0);
    for (int k = 0; k < n; ++k) {
        acc *= seed;
        z[k] = acc;
    }
    auto eval = [&](Cplx x) {
        Cplx r = c[n];
        for (int i = n - 1; i >= 0; --i) r = r * x + c[i];
        return r;
    };
    for (int it = 0; it < 500; ++it) {
        double delta = 0;
        for (int k = 0; k < n; ++k) {
            Cplx denom(1, 0);
            for (int l = 0; l < n; ++l)
                if (l != k) denom *= (z[k] - z[l]);
            Cplx step = eval(z[k]) / denom;
            z[k] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-14) break;
    }
    return z;
}

Embeddings::Embeddings(std::shared_ptr<const QuatAlgebra> A, double tol) : A_(std::move(A)), tol_(tol) {
    const NumberField& F = A_->field();
    auto roots = polynomial_roots(F.poly_coeffs());

    // classify: |Im| below a scale-aware threshold means real
    double scale = 0;
    for (const auto& r : roots) scale = std::max(scale, std::abs(r));
    double imtol = 1e-8 * std::max(1.0, scale);
    std::vector<double> real_roots;
    std::vector<Cplx> cplx_roots;
    for (const auto& r : roots) {
        if (std::fabs(r.imag()) < imtol)
            real_roots.push_back(r.real());
        else if (r.imag() > 0)
            cplx_roots.push_back(r);
    }
    if (static_cast<int>(real_roots.size()) != F.r1() ||
        static_cast<int>(cplx_roots.size()) != F.r2())
        throw PrecisionLossError("Embeddings: root classification disagrees with the signature");
    std::sort(real_roots.begin(), real_roots.end());
    std::sort(cplx_roots.begin(), cplx_roots.end(), [](Cplx a, Cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    auto eval_at = [&](const NFElem& x, Cplx root) {
        auto pb = F.to_power_basis(x);
        Cplx acc(0, 0), pw(1, 0);
        for (const auto& coeff : pb) {
            acc += to_double(coeff) * pw;
            pw *= root;
        }
        return acc;
    };

    for (double rr : real_roots) {
        Place pl;
        pl.root = Cplx(rr, 0);
        pl.n_sigma = 1;
        double sa = eval_at(A_->a(), pl.root).real();
        double sb = eval_at(A_->b(), pl.root).real();
        if (sa == 0 || sb == 0) throw PrecisionLossError("Embeddings: a or b vanishes at a real place");
        if (sa < 0 && sb < 0) {
            // ramified: SU(2) model of H, i -> sqrt|a| I, j -> sqrt|b| J
            pl.type = PlaceType::RealRamified;
            pl.e_sigma = 2;
            double ra = std::sqrt(-sa), rb = std::sqrt(-sb);
            pl.img_i = Mat2{{{Cplx(0, ra), 0}, {0, Cplx(0, -ra)}}};
            pl.img_j = Mat2{{{0, Cplx(rb, 0)}, {Cplx(-rb, 0), 0}}};
        } else {
            pl.type = PlaceType::RealSplit;
            pl.e_sigma = 1;
            if (sa < 0) {  // a < 0 < b
                double ra = std::sqrt(-sa), rb = std::sqrt(sb);
                pl.img_i = Mat2{{{0, Cplx(ra, 0)}, {Cplx(-ra, 0), 0}}};
                pl.img_j = Mat2{{{Cplx(rb, 0), 0}, {0, Cplx(-rb, 0)}}};
            } else if (sb < 0) {  // b < 0 < a
                double ra = std::sqrt(sa), rb = std::sqrt(-sb);
                pl.img_i = Mat2{{{Cplx(ra, 0), 0}, {0, Cplx(-ra, 0)}}};
                pl.img_j = Mat2{{{0, Cplx(rb, 0)}, {Cplx(-rb, 0), 0}}};
            } else {  // both positive
                double ra = std::sqrt(sa), rb = std::sqrt(sb);
                pl.img_i = Mat2{{{0, Cplx(ra, 0)}, {Cplx(ra, 0), 0}}};
                pl.img_j = Mat2{{{Cplx(rb, 0), 0}, {0, Cplx(-rb, 0)}}};
            }
        }
        pl.img_k = pl.img_i * pl.img_j;
        places_.push_back(pl);
    }
    for (Cplx cr : cplx_roots) {
        Place pl;
        pl.type = PlaceType::Complex;
        pl.root = cr;
        pl.n_sigma = 2;
        pl.e_sigma = 1;
        Cplx sa = eval_at(A_->a(), cr), sb = eval_at(A_->b(), cr);
        Cplx ra = std::sqrt(sa);
        pl.img_i = Mat2{{{ra, 0}, {0, -ra}}};
        pl.img_j = Mat2{{{0, Cplx(1, 0)}, {sb, 0}}};
        pl.img_k = pl.img_i * pl.img_j;
        places_.push_back(pl);
    }

    // residual checks: I^2 = a, J^2 = b, IJ = -JI
    for (const auto& pl : places_) {
        Cplx sa = eval_at(A_->a(), pl.root), sb = eval_at(A_->b(), pl.root);
        double res = (pl.img_i * pl.img_i - Mat2::id().scale(sa)).frobenius_sq() +
                     (pl.img_j * pl.img_j - Mat2::id().scale(sb)).frobenius_sq() +
                     (pl.img_i * pl.img_j + pl.img_j * pl.img_i).frobenius_sq();
        if (!(res < tol_)) throw PrecisionLossError("Embeddings: relation residual too large");
    }
}

int Embeddings::real_split_count() const {
    int c = 0;
    for (const auto& p : places_)
        if (p.type == PlaceType::RealSplit) ++c;
    return c;
}
int Embeddings::real_ramified_count() const {
    int c = 0;
    for (const auto& p : places_)
        if (p.type == PlaceType::RealRamified) ++c;
    return c;
}
int Embeddings::complex_count() const {
    int c = 0;
    for (const auto& p : places_)
        if (p.type == PlaceType::Complex) ++c;
    return c;
}

Cplx Embeddings::eval_field(const NFElem& x, const Place& pl) const {
    const NumberField& F = A_->field();
    auto pb = F.to_power_basis(x);
    Cplx acc(0, 0), pw(1, 0);
    for (const auto& coeff : pb) {
        acc += to_double(coeff) * pw;
        pw *= pl.root;
    }
    return acc;
}

Mat2 Embeddings::embed(const AlgElem& u, const Place& pl) const {
    Mat2 r = Mat2::id().scale(eval_field(u.x, pl));
    r = r + pl.img_i.scale(eval_field(u.y, pl));
    r = r + pl.img_j.scale(eval_field(u.z, pl));
    r = r + pl.img_k.scale(eval_field(u.w, pl));
    return r;
}

double Embeddings::t2_numeric(const AlgElem& u) const {
    double s = 0;
    for (const auto& pl : places_) s += pl.n_sigma * embed(u, pl).frobenius_sq();
    return s;
}

double Embeddings::rho(const AlgElem& g) const {
    NFElem n = A_->nrd(g);
    if (!(n == A_->field().one())) throw NotUnitNormError("rho: nrd(g) != 1");
    double best = 0;
    for (const auto& pl : places_) {
        if (pl.type == PlaceType::RealRamified) continue;  // SL_1(H) factor, trivial A part
        double f2 = embed(g, pl).frobenius_sq();
        double arg = std::max(f2 / 2.0, 1.0);
        double a = 0.5 * std::acosh(arg);
        best = std::max(best, a);
    }
    return best;
}

}  // namespace arithcode
