#include "arithcode/config.hpp"

#include <sstream>

namespace arithcode {

namespace {

Rational rat_from_json(const Json& v) {
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<int64_t>()));
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw std::invalid_argument("config: rational must be an integer or a \"p/q\" string");
}

}  // namespace

std::shared_ptr<NumberField> field_from_json(const Json& j) {
    std::vector<Int> poly;
    for (const auto& c : j.at("poly")) {
        if (c.is_number_integer())
            poly.emplace_back(static_cast<long>(c.get<int64_t>()));
        else
            poly.emplace_back(c.get<std::string>());
    }
    int n = static_cast<int>(poly.size()) - 1;
    QMatrix basis(n, n);
    const auto& rows = j.at("integral_basis");
    if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("config: integral_basis rows");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw std::invalid_argument("config: integral_basis cols");
        for (int k = 0; k < n; ++k) basis.at(i, k) = rat_from_json(rows[i][k]);
    }
    int r1 = j.at("signature")[0].get<int>();
    int r2 = j.at("signature")[1].get<int>();
    auto F = std::make_shared<NumberField>(std::move(poly), std::move(basis), r1, r2);
    if (!F->verification().ok())
        throw std::invalid_argument("config: integral basis failed verification");
    return F;
}

AlgebraConfig algebra_from_json(const Json& j) {
    AlgebraConfig cfg;
    cfg.field = field_from_json(j.at("field"));
    const NumberField& F = *cfg.field;
    int n = F.degree();

    auto elem_from_json = [&](const Json& v) -> NFElem {
        if (v.is_array()) {
            if (static_cast<int>(v.size()) != n) throw std::invalid_argument("config: element length");
            NFElem e{std::vector<Rational>(n)};
            for (int i = 0; i < n; ++i) e.coords[i] = rat_from_json(v[i]);
            return e;
        }
        return F.from_rational(rat_from_json(v));
    };

    NFElem a = elem_from_json(j.at("a"));
    NFElem b = elem_from_json(j.at("b"));
    cfg.algebra = std::make_shared<QuatAlgebra>(cfg.field, a, b);

    std::vector<AlgElem> basis;
    for (const auto& row : j.at("order_basis")) {
        if (static_cast<int>(row.size()) != 4 * n)
            throw std::invalid_argument("config: order basis rows must have 4n entries");
        std::vector<Rational> flat(4 * n);
        for (int i = 0; i < 4 * n; ++i) flat[i] = rat_from_json(row[i]);
        basis.push_back(cfg.algebra->unflatten(flat));
    }
    cfg.order = std::make_shared<Order>(cfg.algebra, std::move(basis));

    if (n == 1) {
        cfg.ramification = ramification_set(a.coords[0], b.coords[0]);
        if (j.contains("ramified_primes")) {
            std::set<uint64_t> declared;
            for (const auto& p : j.at("ramified_primes")) declared.insert(p.get<uint64_t>());
            if (declared != cfg.ramification.finite)
                throw std::invalid_argument("config: declared ramified primes disagree with Hilbert symbols");
        }
    } else {
        if (!j.contains("ramified_primes"))
            throw std::invalid_argument("config: ramified_primes required over fields other than Q");
        for (const auto& p : j.at("ramified_primes")) {
            uint64_t v = p.get<uint64_t>();
            cfg.ramification.finite.insert(v);
            cfg.ramification.reduced_discriminant_norm *= Int(static_cast<unsigned long>(v));
        }
    }
    return cfg;
}

ExperimentConfig experiment_from_json(const Json& j) {
    AlgebraConfig alg = algebra_from_json(j);
    ExperimentConfig cfg;
    cfg.order = alg.order;
    cfg.reduced_disc_norm = alg.ramification.reduced_discriminant_norm;
    for (uint64_t p : alg.ramification.finite)
        cfg.ramified_norms.push_back(Int(static_cast<unsigned long>(p)));
    for (const auto& p : j.at("primes")) cfg.primes.push_back(p.get<uint64_t>());
    cfg.residue_degree = j.value("residue_degree", 1);
    cfg.t = j.at("t").get<double>();
    std::string mode = j.value("mode", "multiplicative");
    if (mode == "multiplicative")
        cfg.mode = ExperimentMode::Multiplicative;
    else if (mode == "additive")
        cfg.mode = ExperimentMode::Additive;
    else if (mode == "ramified-alphabet")
        cfg.mode = ExperimentMode::RamifiedAlphabet;
    else
        throw std::invalid_argument("config: unknown mode " + mode);
    cfg.seed = j.value("seed", 1);
    cfg.slack = j.value("slack", 1e-9);
    return cfg;
}

Json enum_result_to_json(const EnumResult& r) {
    Json j;
    auto dump = [](const std::vector<std::vector<Int>>& v) {
        Json arr = Json::array();
        for (const auto& x : v) {
            Json row = Json::array();
            for (const auto& c : x) row.push_back(to_string(c));
            arr.push_back(row);
        }
        return arr;
    };
    j["elements"] = dump(r.elements);
    j["borderline"] = dump(r.borderline);
    j["stats"] = {{"nodes", r.stats.nodes}, {"candidates", r.stats.candidates}};
    return j;
}

std::string enum_result_to_jsonl(const EnumResult& r) {
    std::ostringstream os;
    for (const auto& x : r.elements) {
        Json row = Json::array();
        for (const auto& c : x) row.push_back(to_string(c));
        os << row.dump() << "\n";
    }
    return os.str();
}

Json code_to_json(const Code& c) {
    Json j;
    j["s"] = c.s;
    j["d"] = c.d;
    j["q0"] = c.q0;
    if (!c.words.empty() && !c.words[0].blocks.empty()) {
        j["p"] = c.words[0].blocks[0].field().p();
        j["f"] = c.words[0].blocks[0].field().f();
    }
    j["N"] = c.N;
    j["q"] = c.q;
    j["t"] = c.t;
    j["injective"] = c.injective();
    j["size"] = c.words.size();
    Json words = Json::array();
    for (const auto& w : c.words) {
        Json blocks = Json::array();
        for (const auto& blk : w.blocks) {
            Json m = Json::array();
            for (int i = 0; i < blk.dim(); ++i) {
                Json row = Json::array();
                for (int k = 0; k < blk.dim(); ++k) row.push_back(blk.field().to_index(blk.at(i, k)));
                m.push_back(row);
            }
            blocks.push_back(m);
        }
        words.push_back(blocks);
    }
    j["words"] = words;
    return j;
}

std::string code_distances_csv(const Code& c) {
    std::ostringstream os;
    os << "i,j,d_R,d_H_columns\n";
    for (size_t i = 0; i < c.words.size(); ++i)
        for (size_t j = i + 1; j < c.words.size(); ++j) {
            auto [dr, dh] = distances(c.words[i], c.words[j]);
            os << i << "," << j << "," << dr << "," << dh << "\n";
        }
    return os.str();
}

Json bundle_to_json(const ExperimentBundle& b) {
    Json j;
    j["enumeration"] = {{"count", b.enumeration.elements.size()},
                        {"borderline", b.enumeration.borderline.size()}};
    j["code"] = {{"size", b.code.words.size()},
                 {"N", b.code.N},
                 {"q0", b.code.q0},
                 {"injective", b.code.injective()},
                 {"rate", b.code.rate()}};
    if (b.code.words.size() >= 2) {
        j["distance"] = {{"d_R", b.distance.d_R},
                         {"d_H_columns", b.distance.d_H},
                         {"bound", b.bound_dR},
                         {"bound_vacuous", b.distance.bound_vacuous}};
    }
    if (b.injectivity_t_max > 0) j["injectivity_t_max"] = b.injectivity_t_max;
    if (b.volumes.mu_quot > 0) {
        j["volumes"] = {{"mu_B", b.volumes.mu_B},
                        {"mu_quot", b.volumes.mu_quot},
                        {"mu_quot_rel_err", b.volumes.mu_quot_rel_err},
                        {"lenstra_lb", b.volumes.lenstra_lb},
                        {"count_over_lenstra", b.volumes.count_over_lenstra}};
    }
    Json checks = Json::array();
    for (const auto& c : b.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}});
    j["checks"] = checks;
    j["all_ok"] = b.all_ok;
    return j;
}

Json splitting_map_to_json(const SplittingMap& m) {
    Json j;
    j["p"] = m.prime().p;
    j["f"] = m.prime().residue_degree;
    Json imgs = Json::array();
    for (const auto& img : m.basis_images()) {
        Json mat = Json::array();
        for (int i = 0; i < img.dim(); ++i) {
            Json row = Json::array();
            for (int k = 0; k < img.dim(); ++k) {
                const FFElem& e = img.at(i, k);
                if (m.prime().residue_degree == 1)
                    row.push_back(e[0]);
                else
                    row.push_back(Json(e));
            }
            mat.push_back(row);
        }
        imgs.push_back(mat);
    }
    j["images"] = imgs;
    return j;
}

Json builtin_config_b6() {
    return Json{
        {"field", {{"poly", {0, 1}}, {"integral_basis", {{1}}}, {"signature", {1, 0}}}},
        {"a", -1},
        {"b", 3},
        {"order_basis",
         {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {"1/2", "1/2", "1/2", "1/2"}}},
        {"ramified_primes", {2, 3}},
        {"primes", {5}},
        {"t", 0.45},
        {"mode", "multiplicative"},
    };
}

Json builtin_config_hurwitz() {
    return Json{
        {"field", {{"poly", {0, 1}}, {"integral_basis", {{1}}}, {"signature", {1, 0}}}},
        {"a", -1},
        {"b", -1},
        {"order_basis",
         {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {"1/2", "1/2", "1/2", "1/2"}}},
        {"ramified_primes", {2}},
        {"primes", {3}},
        {"t", 1.5},
        {"mode", "additive"},
    };
}

Json builtin_config_disc3() {
    return Json{
        {"field", {{"poly", {0, 1}}, {"integral_basis", {{1}}}, {"signature", {1, 0}}}},
        {"a", -1},
        {"b", -3},
        {"order_basis",
         {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, "1/2", "1/2", 0}, {"1/2", 0, 0, "1/2"}}},
        {"ramified_primes", {3}},
        {"primes", {2}},
        {"t", 1.5},
        {"mode", "additive"},
    };
}

}  // namespace arithcode
