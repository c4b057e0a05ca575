#include "arithcode/enumerate.hpp"

#include <algorithm>
#include <cmath>

namespace arithcode {

QMatrix t2_gram(const Order& order, const Embeddings& emb) {
    const QuatAlgebra& A = order.algebra();
    const NumberField& F = A.field();
    if (F.r2() != 0)
        throw std::invalid_argument("t2_gram: exact Gram implemented for totally real fields only");

    // uniform sign pattern across real places
    int sa = 0, sb = 0;
    for (const auto& pl : emb.places()) {
        double va = emb.eval_field(A.a(), pl).real();
        double vb = emb.eval_field(A.b(), pl).real();
        int ca = va > 0 ? 1 : -1, cb = vb > 0 ? 1 : -1;
        if (sa == 0) {
            sa = ca;
            sb = cb;
        } else if (sa != ca || sb != cb) {
            throw std::invalid_argument("t2_gram: sign pattern of (a, b) varies across places");
        }
    }

    const NFElem& a = A.a();
    const NFElem& b = A.b();
    NFElem ab = F.mul(a, b);
    Rational ea(sa), eb(sb);

    auto bform = [&](const AlgElem& u, const AlgElem& v) -> Rational {
        NFElem s = F.mul(u.x, v.x);
        s = F.add(s, F.mul_scalar(F.mul(a, F.mul(u.y, v.y)), ea));
        s = F.add(s, F.mul_scalar(F.mul(b, F.mul(u.z, v.z)), eb));
        s = F.add(s, F.mul_scalar(F.mul(ab, F.mul(u.w, v.w)), ea * eb));
        return F.trace(s) * 2;
    };

    const auto& basis = order.basis();
    size_t m = basis.size();
    QMatrix g(m, m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i; j < m; ++j) {
            Rational v = bform(basis[i], basis[j]);
            g.at(i, j) = v;
            g.at(j, i) = v;
        }
    return g;
}

namespace {

Rational quad_form(const QMatrix& g, const std::vector<Int>& x) {
    size_t m = g.rows();
    Rational q(0);
    for (size_t i = 0; i < m; ++i) {
        if (x[i] == 0) continue;
        Rational xi(x[i]);
        q += g.at(i, i) * xi * xi;
        for (size_t j = i + 1; j < m; ++j) {
            if (x[j] == 0) continue;
            q += 2 * g.at(i, j) * xi * Rational(x[j]);
        }
    }
    return q;
}

// Raw Fincke-Pohst: all integer x with float form <= fbound, invoking the
// sink; symmetric in +-x, emits both unless half.
void fp_enumerate(const QMatrix& gram, double fbound, const EnumOptions& opts,
                  EnumStats& stats, const std::function<void(const std::vector<Int>&)>& sink) {
    const size_t m = gram.rows();
    // floating Cholesky gram = R^T R, R upper triangular
    std::vector<std::vector<double>> g(m, std::vector<double>(m));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) g[i][j] = to_double(gram.at(i, j));
    std::vector<std::vector<double>> r(m, std::vector<double>(m, 0.0));
    for (size_t i = 0; i < m; ++i) {
        double d = g[i][i];
        for (size_t k = 0; k < i; ++k) d -= r[k][i] * r[k][i];
        if (d < opts.pivot_floor) throw NumericallyDegenerateError("enumerate: Cholesky pivot underflow");
        r[i][i] = std::sqrt(d);
        for (size_t j = i + 1; j < m; ++j) {
            double s = g[i][j];
            for (size_t k = 0; k < i; ++k) s -= r[k][i] * r[k][j];
            r[i][j] = s / r[i][i];
        }
    }

    std::vector<long> x(m, 0);
    std::vector<double> partial(m + 1, 0.0);   // sum of squares from levels > i
    std::vector<double> center(m, 0.0);        // offset at level i given outer choices

    // iterative depth-first from the last coordinate
    std::vector<Int> out(m);
    std::function<void(int)> descend = [&](int lvl) {
        ++stats.nodes;
        if (lvl < 0) {
            bool all_zero = std::all_of(x.begin(), x.end(), [](long v) { return v == 0; });
            if (all_zero && !opts.include_zero) return;
            if (opts.half && !all_zero) {
                // canonical representative: last nonzero coordinate positive
                for (int k = static_cast<int>(m) - 1; k >= 0; --k) {
                    if (x[k] > 0) break;
                    if (x[k] < 0) return;
                }
            }
            for (size_t k = 0; k < m; ++k) out[k] = Int(x[k]);
            ++stats.candidates;
            sink(out);
            return;
        }
        double rem = fbound - partial[lvl + 1];
        if (rem < 0) return;
        double off = 0;
        for (size_t j = lvl + 1; j < m; ++j) off += r[lvl][j] * x[j];
        center[lvl] = -off / r[lvl][lvl];
        double radius = std::sqrt(rem) / r[lvl][lvl];
        long lo = static_cast<long>(std::ceil(center[lvl] - radius - 1e-12));
        long hi = static_cast<long>(std::floor(center[lvl] + radius + 1e-12));
        for (long v = lo; v <= hi; ++v) {
            x[lvl] = v;
            double term = r[lvl][lvl] * (v - center[lvl]);
            partial[lvl] = partial[lvl + 1] + term * term;
            if (partial[lvl] <= fbound * (1 + 1e-12) + 1e-9) descend(lvl - 1);
        }
        x[lvl] = 0;
    };
    descend(static_cast<int>(m) - 1);
}

void sort_canonical(std::vector<std::vector<Int>>& v) {
    std::sort(v.begin(), v.end());
}

const std::vector<Place>& places_of(const Embeddings& emb) { return emb.places(); }

}  // namespace

EnumResult enumerate_lattice(const Order& order, const QMatrix& gram, const Rational& bound,
                             const EnumOptions& opts) {
    (void)order;
    EnumResult res;
    if (bound < 0) return res;
    double fbound = to_double(bound) * (1 + opts.slack) + opts.slack;
    Rational border_hi = bound * rational_from_double(1 + opts.slack);
    fp_enumerate(gram, fbound, opts, res.stats, [&](const std::vector<Int>& x) {
        Rational q = quad_form(gram, x);
        if (q <= bound)
            res.elements.push_back(x);
        else if (q <= border_hi)
            res.borderline.push_back(x);
    });
    sort_canonical(res.elements);
    sort_canonical(res.borderline);
    return res;
}

EnumResult enumerate_units_in_ball(const Order& order, const Embeddings& emb, double t,
                                   const EnumOptions& opts) {
    if (t < 0) throw std::invalid_argument("enumerate_units_in_ball: t < 0");
    const QuatAlgebra& A = order.algebra();
    if (emb.real_ramified_count() > 0)
        throw std::invalid_argument(
            "enumerate_units_in_ball: A must be unramified at all real places (d = 2)");

    QMatrix gram = t2_gram(order, emb);
    const NumberField& F = A.field();
    int n = F.degree();

    // pre-bound: |sigma(g)|_2^2 = 2 cosh(2 a_sigma) <= 2 cosh(2t) per place
    double per_place = 2 * std::cosh(2 * t);
    Rational bound = rational_from_double(n * per_place * (1 + opts.slack) + 1e-9);

    EnumResult raw;
    double fbound = to_double(bound);
    fp_enumerate(gram, fbound, opts, raw.stats, [&](const std::vector<Int>& x) {
        raw.elements.push_back(x);
    });

    EnumResult res;
    res.stats = raw.stats;
    NFElem one = F.one();
    // threshold in the Frobenius-squared domain: rho(g) <= t at a split or
    // complex place is |sigma(g)|_2^2 <= 2 cosh(2t)
    Rational th_exact = rational_from_double(per_place);
    Rational th_border = th_exact * rational_from_double(1 + opts.slack);
    for (auto& x : raw.elements) {
        AlgElem u = order.from_coords(x);
        if (!(A.nrd(u) == one)) continue;
        if (n == 1) {
            // single place: T2(x) is the place norm, exact comparison
            Rational q = quad_form(gram, x);
            if (q <= th_exact)
                res.elements.push_back(x);
            else if (q <= th_border)
                res.borderline.push_back(x);
        } else {
            bool inside = true, border = false;
            for (const auto& pl : places_of(emb)) {
                if (pl.type == PlaceType::RealRamified) continue;
                double f2 = emb.embed(u, pl).frobenius_sq();
                if (f2 > per_place * (1 + opts.slack) + 1e-12) {
                    inside = false;
                    break;
                }
                if (f2 > per_place * (1 - opts.slack) - 1e-12) border = true;
            }
            if (!inside) continue;
            (border ? res.borderline : res.elements).push_back(x);
        }
    }
    sort_canonical(res.elements);
    sort_canonical(res.borderline);
    return res;
}

EnumResult enumerate_additive_ball(const Order& order, const Embeddings& emb, double t,
                                   const std::vector<Mat2>& center, const EnumOptions& opts) {
    if (t <= 0) throw std::invalid_argument("enumerate_additive_ball: t <= 0");
    const QuatAlgebra& A = order.algebra();
    const NumberField& F = A.field();
    int n = F.degree();
    QMatrix gram = t2_gram(order, emb);
    const auto& places = emb.places();

    if (center.empty()) {
        if (n == 1) {
            // single place: membership is T2(x) <= t^2, exact
            Rational bound = rational_from_double(t) * rational_from_double(t);
            return enumerate_lattice(order, gram, bound, opts);
        }
        // exact T2 pre-bound, numeric per-place filter
        Rational bound = rational_from_double(n * t * t * (1 + opts.slack) + 1e-9);
        EnumResult raw;
        fp_enumerate(gram, to_double(bound), opts, raw.stats,
                     [&](const std::vector<Int>& x) { raw.elements.push_back(x); });
        EnumResult res;
        res.stats = raw.stats;
        for (auto& x : raw.elements) {
            AlgElem u = order.from_coords(x);
            bool inside = true, border = false;
            for (const auto& pl : places) {
                double norm = std::sqrt(emb.embed(u, pl).frobenius_sq());
                if (norm > t * (1 + opts.slack) + 1e-12) {
                    inside = false;
                    break;
                }
                if (norm > t * (1 - opts.slack) - 1e-12) border = true;
            }
            if (!inside) continue;
            (border ? res.borderline : res.elements).push_back(x);
        }
        sort_canonical(res.elements);
        sort_canonical(res.borderline);
        return res;
    }

    if (center.size() != places.size())
        throw std::invalid_argument("enumerate_additive_ball: center size mismatch");

    // translated ball: T2(x) <= sum n_sigma (t + |c_sigma|)^2 pre-bound,
    // numeric per-place filter |sigma(x) - c_sigma| <= t
    double pre = 0;
    for (size_t i = 0; i < places.size(); ++i) {
        double cn = std::sqrt(center[i].frobenius_sq());
        pre += places[i].n_sigma * (t + cn) * (t + cn);
    }
    Rational bound = rational_from_double(pre * (1 + opts.slack) + 1e-9);
    EnumResult raw;
    fp_enumerate(gram, to_double(bound), opts, raw.stats,
                 [&](const std::vector<Int>& x) { raw.elements.push_back(x); });
    EnumResult res;
    res.stats = raw.stats;
    for (auto& x : raw.elements) {
        AlgElem u = order.from_coords(x);
        bool inside = true, border = false;
        for (size_t i = 0; i < places.size(); ++i) {
            double norm = std::sqrt((emb.embed(u, places[i]) - center[i]).frobenius_sq());
            if (norm > t * (1 + opts.slack) + 1e-12) {
                inside = false;
                break;
            }
            if (norm > t * (1 - opts.slack) - 1e-12) border = true;
        }
        if (!inside) continue;
        (border ? res.borderline : res.elements).push_back(x);
    }
    sort_canonical(res.elements);
    sort_canonical(res.borderline);
    return res;
}

}  // namespace arithcode
