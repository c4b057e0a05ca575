#pragma once

#include "arithcode/explorer.hpp"
#include "arithcode/hilbert.hpp"

#include <json.hpp>

namespace arithcode {

using Json = nlohmann::json;

// Field config: {"poly": [c0,...,1], "integral_basis": [["p/q",...],...],
//                "signature": [r1, r2]}
std::shared_ptr<NumberField> field_from_json(const Json& j);

// Algebra/order config:
// {"field": {...}, "a": "...", "b": "...",
//  "order_basis": [[4n rationals per row], ...],
//  "ramified_primes": [... optional, required when the base is not Q]}
struct AlgebraConfig {
    std::shared_ptr<const NumberField> field;
    std::shared_ptr<const QuatAlgebra> algebra;
    std::shared_ptr<const Order> order;
    Ramification ramification;  // computed over Q, declared otherwise
};

AlgebraConfig algebra_from_json(const Json& j);

// Experiment config: the algebra config plus
// {"primes": [5, ...], "residue_degree": 1, "t": 0.45,
//  "mode": "multiplicative"|"additive"|"ramified-alphabet",
//  "seed": 1, "slack": 1e-9}
ExperimentConfig experiment_from_json(const Json& j);

Json enum_result_to_json(const EnumResult& r);
// JSON lines: one exact coordinate vector per line.
std::string enum_result_to_jsonl(const EnumResult& r);
Json code_to_json(const Code& c);
std::string code_distances_csv(const Code& c);
Json bundle_to_json(const ExperimentBundle& b);
Json splitting_map_to_json(const SplittingMap& m);

Json builtin_config_b6();       // (-1,3)/Q with its maximal order
Json builtin_config_hurwitz();  // (-1,-1)/Q, Hurwitz order
Json builtin_config_disc3();    // (-1,-3)/Q maximal order (unramified at 2)

}  // namespace arithcode
