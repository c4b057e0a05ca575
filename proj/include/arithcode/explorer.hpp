#pragma once

#include "arithcode/codes.hpp"
#include "arithcode/enumerate.hpp"
#include "arithcode/volumes.hpp"

namespace arithcode {

// Rigorous lower bound on the rate log_q|C|/N for s = n primes, the optimal
// translate, and the stated (t, p). For d = 2 the closed ball volume and the
// quaternion covolume give an exact path; for d >= 3 (and as a cross-check)
// the explicit interval-method lower bound is used per place. Every constant
// is explicit; nothing hides in an O-term.
struct RateBound {
    double exact_path = 0;    // d = 2 only, NaN otherwise
    double general_path = 0;  // lower bound, always
    double log_mu_B = 0;
    double log_mu_quot_upper = 0;
};

RateBound rate_lower_bound_explicit(int d, int n, double rd_F, const std::vector<Int>& ramified_norms,
                                    double t, double p);

struct ParamReport {
    int d = 0;
    double rd_F = 0;
    double Ndelta_per_nd = 0;
    double t = 0;           // chosen radius
    double log_p = 0;       // chosen alphabet bound (natural log)
    Int p_exact = 0;        // materialized prime, 0 if not materialized
    double rate_bound = 0;  // certified (1/N) log|C| at (t, p)
    double implied_c = 0;   // log p / log d
    bool feasible = false;
    std::string trace;      // derivation trace, re-evaluable
};

struct ExploreOptions {
    double t_grid = 0.01;
    uint64_t zeta_cutoff = 100000;
    // materialize p by next-prime search only below this many bits
    int max_prime_bits = 256;
};

// Theorem-style recipe, multiplicative: smallest grid t with
// (1/N) log|C| >= 1, then log p = (1/(1-1/d)) (log 2 + 2t).
ParamReport feasible_params_mult(int d, double rd_F, double Ndelta_per_nd,
                                 const ExploreOptions& opts = {});

// Additive recipe: smallest grid t with the exact volume condition >= 1,
// then log p = (1/(1-1/d)) (log(2t) - (1/2) log d).
ParamReport feasible_params_add(int d, double rd_F, double Ndelta_per_nd,
                                const ExploreOptions& opts = {});

struct WorkedExample {
    double ratio_t;          // displayed ratio at the given t
    double ratio_at_1;       // same at t = 1 (below 1: near-minimality)
    long threshold;          // ceil(exp(log 2 + 2t)) at t = 2.2
    bool ok = false;
};

// The explicit quaternion family: rd_F ~ 92.37, zeta_F(2) ~ 1.02, s = n/20.
WorkedExample reproduce_worked_example(double rd_F = 92.37, double zeta_F2 = 1.02, double t = 2.2);

enum class ExperimentMode { Multiplicative, Additive, RamifiedAlphabet };

struct ExperimentConfig {
    std::shared_ptr<const Order> order;
    std::vector<uint64_t> primes;   // rational primes for S
    int residue_degree = 1;         // common residue degree f
    double t = 1.0;
    ExperimentMode mode = ExperimentMode::Multiplicative;
    uint64_t seed = 1;
    double slack = 1e-9;
    Int reduced_disc_norm = 1;      // N(delta_A)
    std::vector<Int> ramified_norms;
    uint64_t zeta_cutoff = 100000;
};

struct VolumeReport {
    double mu_B = 0;          // closed-form ball volume at the chosen t
    double mu_quot = 0;       // covolume (Prasad / sqrt(Delta_A))
    double mu_quot_rel_err = 0;
    double lenstra_lb = 0;    // mu_B / mu_quot
    double count_over_lenstra = 0;  // enumerated count / lenstra_lb (informational)
};

struct CrossCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExperimentBundle {
    EnumResult enumeration;
    Code code;
    DistanceReport distance;
    VolumeReport volumes;
    double bound_dR = 0;
    double injectivity_t_max = 0;   // multiplicative only
    std::vector<CrossCheck> checks;
    bool all_ok = false;
};

ExperimentBundle run_experiment(const ExperimentConfig& cfg);

}  // namespace arithcode
