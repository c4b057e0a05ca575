// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include "arithcode/config.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>

using namespace arithcode;

namespace {

int failures = 0;

void criterion(int num, const std::string& name, const std::function<bool(std::string&)>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& ex) {
        detail = std::string("exception: ") + ex.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << num << " [" << name << "]: " << (pass ? "PASS" : "FAIL") << " ("
              << secs << " s)" << (detail.empty() ? "" : "  " + detail) << std::endl;
    if (!pass) ++failures;
}

double rel_gap(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); }

}  // namespace

int main() {
    // 1. Volume constants, symbolic and numeric to 1e-12.
    criterion(1, "volume constants", [](std::string& detail) {
        SymbolicVolume so2 = vol_k({'R', 2}), su2 = vol_k({'C', 2}), slh = vol_k({'H', 1});
        SymbolicVolume e1, e2, e3;
        e1.exp2 = Rational(3, 2);
        e1.exppi = 1;  // 2 sqrt2 pi
        e2.exp2 = 4;
        e2.exppi = 2;  // 16 pi^2
        e3.exp2 = Rational(5, 2);
        e3.exppi = 2;  // 4 sqrt2 pi^2
        bool sym = (so2 == e1) && (su2 == e2) && (slh == e3);
        bool num = rel_gap(so2.value(), 2 * std::sqrt(2.0) * M_PI) < 1e-12 &&
                   rel_gap(su2.value(), 16 * M_PI * M_PI) < 1e-12 &&
                   rel_gap(slh.value(), 4 * std::sqrt(2.0) * M_PI * M_PI) < 1e-12;
        detail = so2.str() + " | " + su2.str() + " | " + slh.str();
        return sym && num;
    });

    // 2. KAK quadrature vs closed forms, 1e-9 relative.
    criterion(2, "quadrature vs closed form", [](std::string& detail) {
        double worst = 0;
        for (double t : {0.5, 1.0, 2.0, 3.0}) {
            double cr = vol_ball_quaternion_closed(1, 0, 0, t).value;
            worst = std::max(worst,
                             rel_gap(kak_ball_quadrature({'R', 2}, t, 1e-11 * cr).value, cr));
            double cc = vol_ball_quaternion_closed(0, 0, 1, t).value;
            worst = std::max(worst,
                             rel_gap(kak_ball_quadrature({'C', 2}, t, 1e-11 * cc).value, cc));
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "worst relative gap %.3e", worst);
        detail = buf;
        return worst <= 1e-9;
    });

    // 3. Worked example: ratio in (1, 1.1) at t = 2.2 and threshold 163.
    criterion(3, "worked example", [](std::string& detail) {
        WorkedExample we = reproduce_worked_example();
        detail = "ratio " + std::to_string(we.ratio_t) + ", threshold " + std::to_string(we.threshold);
        return we.ratio_t > 1.0 && we.ratio_t < 1.1 && we.threshold == 163;
    });

    // 4. End-to-end multiplicative code on B6 below the injectivity threshold.
    criterion(4, "B6 multiplicative end-to-end", [](std::string& detail) {
        ExperimentConfig cfg = experiment_from_json(builtin_config_b6());  // S={5}, t=0.45
        ExperimentBundle b = run_experiment(cfg);
        double tmax = injectivity_threshold(b.code.N, 1, 2, b.code.q);
        detail = "|C| = " + std::to_string(b.code.words.size()) +
                 ", d_R = " + std::to_string(b.distance.d_R) + ", bound " + std::to_string(b.bound_dR);
        return cfg.t < tmax && b.code.injective() && b.code.words.size() >= 2 &&
               b.distance.d_R >= b.bound_dR;
    });

    // 5. Unit-count growth: |Gamma cap B(3)| / (6 (cosh 6 - 1)) in [0.5, 2].
    static EnumResult units_t3;  // reused by criterion 9
    static std::shared_ptr<const Order> b6_order;
    criterion(5, "unit count vs covolume ratio", [](std::string& detail) {
        AlgebraConfig alg = algebra_from_json(builtin_config_b6());
        b6_order = alg.order;
        Embeddings emb(alg.algebra);
        units_t3 = enumerate_units_in_ball(*alg.order, emb, 3.0);
        double predicted = 6 * (std::cosh(6.0) - 1);
        double ratio = units_t3.elements.size() / predicted;
        detail = "count " + std::to_string(units_t3.elements.size()) + ", predicted " +
                 std::to_string(predicted) + ", ratio " + std::to_string(ratio);
        return ratio >= 0.5 && ratio <= 2.0;
    });

    // 6. Additive Lenstra averaging over >= 1000 uniform translates.
    criterion(6, "additive translate averaging", [](std::string& detail) {
        AlgebraConfig alg = algebra_from_json(builtin_config_hurwitz());
        Embeddings emb(alg.algebra);
        double t = 1.7;
        auto av = additive_volumes(2, 1, 1, 0, t, Int(4));  // Delta_A = 4 for the Hurwitz order
        double predicted = av.lenstra_lb;                   // mu(B(t))/sqrt(Delta_A)
        std::mt19937_64 rng(20240817);
        const int trials = 1000;
        double total = 0;
        const Place& pl = emb.places()[0];
        for (int i = 0; i < trials; ++i) {
            std::vector<Rational> frac(4);
            for (auto& f : frac) f = rat(static_cast<long>(rng() % 100000), 100000);
            AlgElem c = alg.order->from_coords(frac);
            std::vector<Mat2> center{emb.embed(c, pl)};
            EnumResult r = enumerate_additive_ball(*alg.order, emb, t, center);
            total += static_cast<double>(r.elements.size());
        }
        double mean = total / trials;
        detail = "mean " + std::to_string(mean) + ", predicted " + std::to_string(predicted);
        return std::fabs(mean - predicted) <= 0.05 * predicted;
    });

    // 7. Lemma colnorm: formula vs exhaustive count for all x, q0 in {2, 3}.
    criterion(7, "colnorm exhaustive", [](std::string& detail) {
        struct Setup {
            Json config;
            uint64_t p;
        };
        for (const Setup& s : {Setup{builtin_config_disc3(), 2}, Setup{builtin_config_hurwitz(), 3}}) {
            AlgebraConfig alg = algebra_from_json(s.config);
            SplittingMap sm(alg.order, make_prime_data(alg.order->algebra().field(), s.p, 1));
            uint64_t q0 = sm.field()->size();
            auto fld = sm.field();
            long pl = static_cast<long>(s.p);
            for (long c0 = 0; c0 < pl; ++c0)
                for (long c1 = 0; c1 < pl; ++c1)
                    for (long c2 = 0; c2 < pl; ++c2)
                        for (long c3 = 0; c3 < pl; ++c3) {
                            FFMatrix m =
                                sm.apply_coords({Int(c0), Int(c1), Int(c2), Int(c3)});
                            // exhaustive: count the left ideal m*M_2 element by element
                            std::set<std::vector<uint64_t>> ideal;
                            for (uint64_t idx = 0; idx < q0 * q0 * q0 * q0; ++idx) {
                                FFMatrix y(fld, 2);
                                uint64_t v = idx;
                                for (int r = 0; r < 2; ++r)
                                    for (int k = 0; k < 2; ++k) {
                                        y.at(r, k) = fld->from_index(v % q0);
                                        v /= q0;
                                    }
                                ideal.insert((m * y).key());
                            }
                            Int exhaustive = Int(static_cast<unsigned long>(q0 * q0 * q0 * q0)) /
                                             Int(static_cast<unsigned long>(ideal.size()));
                            if (quotient_size_formula(m) != exhaustive) {
                                detail = "mismatch at q0 = " + std::to_string(q0);
                                return false;
                            }
                        }
        }
        return true;
    });

    // 8. Interval family properties, exact rational arithmetic, k = 1..64.
    criterion(8, "interval family", [](std::string& detail) {
        for (int k = 1; k <= 64; ++k) {
            try {
                intervals(k);
            } catch (const std::exception& ex) {
                detail = "k = " + std::to_string(k) + ": " + ex.what();
                return false;
            }
        }
        return true;
    });

    // 9. Bound domination and the nrd bound on every enumerated unit.
    criterion(9, "bound domination", [](std::string& detail) {
        for (int i = 0; i <= 1000; ++i) {
            double t = 1.0 + 9.0 * i / 1000.0;
            if (!(vol_ball_lower_bound(1, 1, 2, t).log_value <=
                  vol_ball_quaternion_closed(1, 0, 0, t).log_value)) {
                detail = "lower bound exceeds the closed form at t = " + std::to_string(t);
                return false;
            }
        }
        if (units_t3.elements.empty() || !b6_order) {
            detail = "criterion 5 units unavailable";
            return false;
        }
        AlgebraConfig alg = algebra_from_json(builtin_config_b6());
        Embeddings emb(alg.algebra);
        const QuatAlgebra& A = *alg.algebra;
        for (const auto& c : units_t3.elements) {
            AlgElem g = b6_order->from_coords(c);
            AlgElem gm1 = A.sub(g, A.one());
            double lhs = std::fabs(to_double(A.nrd(gm1).coords[0]));
            double rhs = 4.0 * std::exp(2.0 * emb.rho(g));
            if (lhs > rhs * (1 + 1e-9)) {
                detail = "nrd bound violated";
                return false;
            }
        }
        detail = std::to_string(units_t3.elements.size()) + " units checked";
        return true;
    });

    // 10. Asymptotic trends from formula-only sweeps, d = 2..64.
    criterion(10, "asymptotic trends", [](std::string& detail) {
        double prev = 1e300;
        double mult_c64 = 0;
        for (int d = 2; d <= 64; ++d) {
            ParamReport r = feasible_params_mult(d, 92.37, 6.0);
            if (!(r.rate_bound >= 1.0) || !std::isfinite(r.implied_c)) return false;
            if (d >= 3 && !(r.implied_c <= prev)) {
                detail = "multiplicative ratio not decreasing at d = " + std::to_string(d);
                return false;
            }
            prev = r.implied_c;
            if (d == 64) mult_c64 = r.implied_c;
        }
        if (!(mult_c64 < 1200.0)) {  // factor-2 sanity against c = 600
            detail = "multiplicative ratio at d = 64 is " + std::to_string(mult_c64);
            return false;
        }
        double ratio4 = 0, ratio64 = 0, aprev = 1e300;
        for (int d = 2; d <= 64; ++d) {
            ParamReport r = feasible_params_add(d, 92.37, 6.0);
            if (!(r.rate_bound >= 1.0)) return false;
            if (d >= 3 && !(r.implied_c <= aprev)) {
                detail = "additive ratio not decreasing at d = " + std::to_string(d);
                return false;
            }
            aprev = r.implied_c;
            if (d == 4) ratio4 = r.implied_c;
            if (d == 64) ratio64 = r.implied_c;
        }
        detail = "mult c(64) = " + std::to_string(mult_c64) + ", add ratio(64) = " +
                 std::to_string(ratio64);
        // additive ratio approaches 1/2: the excess at d = 64 is at most half
        // the excess at d = 4
        return ratio64 - 0.5 <= 0.5 * (ratio4 - 0.5);
    });

    // 11. Zeta of Q at 2: inside its own (relative) error, error <= 1e-6.
    criterion(11, "dedekind zeta", [](std::string& detail) {
        auto Q = NumberField::rationals();
        ZetaValue z = dedekind_zeta(Q, 2, 100000);
        double target = M_PI * M_PI / 6;
        detail = "value " + std::to_string(z.value) + ", rel error bound " +
                 std::to_string(z.error_bound);
        return std::fabs(z.value - target) <= z.error_bound * z.value && z.error_bound <= 1e-6;
    });

    std::cout << (failures == 0 ? "acceptance: ALL PASS" : "acceptance: FAILURES") << std::endl;
    return failures == 0 ? 0 : 1;
}
