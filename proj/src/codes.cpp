#include "arithcode/codes.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace arithcode {

std::vector<uint64_t> Codeword::key() const {
    std::vector<uint64_t> k;
    for (const auto& b : blocks) {
        auto bk = b.key();
        k.insert(k.end(), bk.begin(), bk.end());
    }
    return k;
}

double Code::rate() const {
    if (words.empty() || N == 0) return 0;
    return std::log(static_cast<double>(words.size())) / (N * std::log(q));
}

namespace {

template <typename MapT, typename MakeWord>
Code theta_impl(const std::vector<std::vector<Int>>& elements, const std::vector<MapT>& maps,
                int d, MakeWord make_word) {
    if (maps.empty()) throw MapMismatchError("theta: no maps");
    Code code;
    code.s = static_cast<int>(maps.size());
    code.d = d;
    code.q0 = maps.front().field()->size();
    for (const auto& m : maps)
        if (m.field()->size() != code.q0) throw MapMismatchError("theta: maps disagree on q0");
    code.N = code.d * code.s;
    code.q = std::pow(static_cast<double>(code.q0), code.d);

    std::map<std::vector<uint64_t>, size_t> seen;  // codeword key -> input index
    for (size_t idx = 0; idx < elements.size(); ++idx) {
        Codeword w = make_word(elements[idx]);
        auto key = w.key();
        auto it = seen.find(key);
        if (it != seen.end()) {
            code.collisions.push_back(Collision{elements[it->second], elements[idx]});
            continue;
        }
        seen.emplace(std::move(key), idx);
        code.words.push_back(std::move(w));
    }
    std::sort(code.words.begin(), code.words.end(),
              [](const Codeword& a, const Codeword& b) { return a.key() < b.key(); });
    return code;
}

}  // namespace

Code theta(const std::vector<std::vector<Int>>& elements, const std::vector<SplittingMap>& maps) {
    return theta_impl(elements, maps, 2, [&](const std::vector<Int>& coords) {
        Codeword w;
        for (const auto& m : maps) w.blocks.push_back(m.apply_coords(coords));
        return w;
    });
}

Code theta_ramified(const std::vector<std::vector<Int>>& elements,
                    const std::vector<RamifiedResidueMap>& maps) {
    return theta_impl(elements, maps, 1, [&](const std::vector<Int>& coords) {
        Codeword w;
        for (const auto& m : maps) {
            FFMatrix blk(m.field(), 1);
            blk.at(0, 0) = m.apply_coords(coords);
            w.blocks.push_back(std::move(blk));
        }
        return w;
    });
}

std::pair<int, int> distances(const Codeword& x, const Codeword& y) {
    if (x.blocks.size() != y.blocks.size()) throw ShapeMismatchError("distances: block count differs");
    int dr = 0, dh = 0;
    for (size_t i = 0; i < x.blocks.size(); ++i) {
        if (x.blocks[i].dim() != y.blocks[i].dim()) throw ShapeMismatchError("distances: block shape");
        FFMatrix diff = x.blocks[i] - y.blocks[i];
        dr += diff.rank();
        // Hamming distance of the column expansion: nonzero columns of diff
        int d = diff.dim();
        for (int col = 0; col < d; ++col) {
            bool nz = false;
            for (int row = 0; row < d; ++row)
                if (!diff.field().is_zero(diff.at(row, col))) nz = true;
            if (nz) ++dh;
        }
    }
    return {dr, dh};
}

DistanceReport min_distance(const Code& c) {
    if (c.words.size() < 2) throw TooFewWordsError("min_distance: need at least two words");
    DistanceReport rep;
    rep.d_R = c.N + 1;
    for (size_t i = 0; i < c.words.size(); ++i)
        for (size_t j = i + 1; j < c.words.size(); ++j) {
            auto [dr, dh] = distances(c.words[i], c.words[j]);
            if (dr < rep.d_R) {
                rep.d_R = dr;
                rep.witnesses = {i, j};
            }
            if (rep.d_H == 0 || dh < rep.d_H) rep.d_H = dh;
        }
    rep.rate = c.rate();
    return rep;
}

double ColumnCode::rate() const {
    if (words.empty() || N == 0) return 0;
    return std::log(static_cast<double>(words.size())) / (N * std::log(q));
}

int ColumnCode::min_hamming() const {
    int best = N + 1;
    for (size_t i = 0; i < words.size(); ++i)
        for (size_t j = i + 1; j < words.size(); ++j) {
            int d = 0;
            for (int k = 0; k < N; ++k)
                if (words[i][k] != words[j][k]) ++d;
            best = std::min(best, d);
        }
    return best;
}

ColumnCode expand_columns(const Code& c) {
    ColumnCode col;
    col.N = c.N;
    col.q = c.q;
    for (const auto& w : c.words) {
        std::vector<std::vector<uint64_t>> positions;
        for (const auto& blk : w.blocks) {
            int d = blk.dim();
            for (int j = 0; j < d; ++j) {
                std::vector<uint64_t> column;
                for (int i = 0; i < d; ++i) column.push_back(blk.field().to_index(blk.at(i, j)));
                positions.push_back(std::move(column));
            }
        }
        col.words.push_back(std::move(positions));
    }
    return col;
}

double distance_bound_mult(int n, int d, int s, double t, double q) {
    if (q <= 1 || t <= 0) throw std::invalid_argument("distance_bound_mult: need q > 1, t > 0");
    double N = static_cast<double>(d) * s;
    double lq = std::log(q);
    return N - n * d * d * std::log(2.0) / lq - 2.0 * n * d * d * t / lq;
}

double injectivity_threshold(int N, int n, int d, double q) {
    double lhs = N * std::log(q) / (n * d * d);
    if (lhs <= std::log(2.0)) throw InfeasibleError("injectivity_threshold: N log q <= n d^2 log 2");
    return (lhs - std::log(2.0)) / 2.0;
}

double distance_bound_add(int n, int d, int s, double t, double q) {
    if (t <= 0) throw std::invalid_argument("distance_bound_add: t <= 0");
    double N = static_cast<double>(d) * s;
    double lq = std::log(q);
    return N - n * d * d * std::log(2 * t) / lq + (n * d * d / 2.0) * std::log(static_cast<double>(d)) / lq;
}

}  // namespace arithcode
