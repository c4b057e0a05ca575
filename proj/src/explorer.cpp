#include "arithcode/explorer.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace arithcode {

namespace {

// Riemann zeta upper bounds zeta(j) for j = 2..d, cached per call.
std::vector<double> zeta_uppers(int d, uint64_t cutoff) {
    auto Q = NumberField::rationals();
    std::vector<double> out;
    for (int j = 2; j <= d; ++j) {
        // the tail shrinks fast in j; a modest cutoff suffices beyond j = 2
        uint64_t P = j == 2 ? cutoff : std::min<uint64_t>(cutoff, 10000);
        ZetaValue z = dedekind_zeta(Q, j, P);
        out.push_back(z.upper());
    }
    return out;
}

}  // namespace

RateBound rate_lower_bound_explicit(int d, int n, double rd_F, const std::vector<Int>& ramified_norms,
                                    double t, double p) {
    if (t < 1) throw std::invalid_argument("rate_lower_bound_explicit: t < 1");
    RateBound rb;
    double N = static_cast<double>(n) * d;  // s = n
    double log_q = d * std::log(p);

    // upper bound for log mu(G/O^1): Prasad with zeta_F(j) <= zeta(j)^n
    auto zu = zeta_uppers(d, 100000);
    double log_quot = 0.5 * n * std::log(static_cast<double>(d));
    log_quot += 0.5 * ((static_cast<double>(d) * d - 1) * n * std::log(rd_F));
    double logNdelta = 0;
    for (const auto& nm : ramified_norms) logNdelta += std::log(nm.get_d());
    log_quot += 0.5 * d * logNdelta;
    for (double z : zu) log_quot += n * std::log(z);
    // Phi <= 1 dropped
    rb.log_mu_quot_upper = log_quot;

    // general path: interval-method ball lower bound per place (totally real,
    // unramified: u = n places of type (n_sigma, e_sigma) = (1, 1))
    double log_B_lb = n * vol_ball_lower_bound(1, 1, d, t).log_value;
    rb.general_path = (log_B_lb - log_quot) / (N * log_q);

    rb.exact_path = std::numeric_limits<double>::quiet_NaN();
    if (d == 2) {
        // closed forms: mu(B) per place and the quaternion Prasad formula
        double log_B = n * vol_ball_quaternion_closed(1, 0, 0, t).log_value;
        rb.log_mu_B = log_B;
        double log_quot_q = 0.5 * n * std::log(2.0) + 1.5 * n * std::log(rd_F) +
                            n * std::log(zu[0]);
        for (const auto& nm : ramified_norms) log_quot_q += std::log(nm.get_d() - 1);
        rb.exact_path = (log_B - log_quot_q) / (N * log_q);
    } else {
        rb.log_mu_B = log_B_lb;
    }
    return rb;
}

namespace {

Int materialize_prime(double log_p, int max_bits) {
    double bits = log_p / std::log(2.0);
    if (bits > max_bits) return Int(0);
    // smallest prime with log(prime) >= log_p
    double v = std::exp(log_p);
    Int floor_v(static_cast<unsigned long>(0));
    {
        mpz_class tmp;
        mpz_set_d(tmp.get_mpz_t(), std::ceil(v));
        floor_v = tmp;
    }
    Int cand = floor_v - 1;
    Int pr = next_prime(cand);
    while (std::log(pr.get_d()) < log_p) pr = next_prime(pr);
    return pr;
}

}  // namespace

ParamReport feasible_params_mult(int d, double rd_F, double Ndelta_per_nd, const ExploreOptions& opts) {
    if (d < 2) throw std::invalid_argument("feasible_params_mult: d < 2");
    ParamReport rep;
    rep.d = d;
    rep.rd_F = rd_F;
    rep.Ndelta_per_nd = Ndelta_per_nd;

    // per-(N = nd) rate bound, n-independent pieces:
    //   (1/d) log mu_LB(1,1,d,t) - (1/(2d)) log d - ((d^2-1)/(2d)) log rd_F
    //   - (d/2) log Ndelta_pnd - (1/d) sum log zeta(j)
    auto zu = zeta_uppers(d, opts.zeta_cutoff);
    double zsum = 0;
    for (double z : zu) zsum += std::log(z);
    double base_t1 = vol_ball_lower_bound(1, 1, d, 1.0).log_value;   // at t = 1
    double slope = d / 200.0;                                        // d^2/200 / d
    double consts = base_t1 / d - slope * 1.0                        // t-free part of (1/d) log mu_LB
                    - 0.5 * std::log(static_cast<double>(d)) / d
                    - (static_cast<double>(d) * d - 1) / (2.0 * d) * std::log(rd_F)
                    - 0.5 * d * std::log(Ndelta_per_nd)
                    - zsum / d;

    auto rate_at = [&](double t) { return consts + slope * t; };

    // bounds are monotone increasing in t; solve then snap up to the grid
    double t_star = (1.0 - consts) / slope;
    double t = std::max(1.0, std::ceil(t_star / opts.t_grid) * opts.t_grid);
    while (rate_at(t) < 1.0) t += opts.t_grid;
    rep.t = t;
    rep.rate_bound = rate_at(t);
    rep.log_p = (1.0 / (1.0 - 1.0 / d)) * (std::log(2.0) + 2 * t);
    rep.implied_c = rep.log_p / std::log(static_cast<double>(d));
    rep.p_exact = materialize_prime(rep.log_p, opts.max_prime_bits);
    rep.feasible = true;

    std::ostringstream tr;
    tr << "mult d=" << d << " consts=" << consts << " slope=" << slope << " t=" << t
       << " rate=" << rep.rate_bound << " log_p=" << rep.log_p;
    rep.trace = tr.str();
    return rep;
}

ParamReport feasible_params_add(int d, double rd_F, double Ndelta_per_nd, const ExploreOptions& opts) {
    if (d < 2) throw std::invalid_argument("feasible_params_add: d < 2");
    ParamReport rep;
    rep.d = d;
    rep.rd_F = rd_F;
    rep.Ndelta_per_nd = Ndelta_per_nd;

    int d2 = d * d;
    // (1/N) log|C| >= (1/d) log V_{d^2} + d log t - (d/2) log rd_F - (d/2) log Ndelta_pnd
    double logV = ball_volume_symbolic(d2).log_value();
    double consts = logV / d - 0.5 * d * std::log(rd_F) - 0.5 * d * std::log(Ndelta_per_nd);

    auto rate_at = [&](double t) { return consts + d * std::log(t); };

    double t_star = std::exp((1.0 - consts) / d);
    double t = std::max(opts.t_grid, std::ceil(t_star / opts.t_grid) * opts.t_grid);
    while (rate_at(t) < 1.0) t += opts.t_grid;
    rep.t = t;
    rep.rate_bound = rate_at(t);
    double dist_piece = std::log(2 * t) - 0.5 * std::log(static_cast<double>(d));
    rep.log_p = (1.0 / (1.0 - 1.0 / d)) * dist_piece;
    rep.implied_c = rep.log_p / std::log(static_cast<double>(d));
    rep.p_exact = materialize_prime(rep.log_p, opts.max_prime_bits);
    rep.feasible = true;

    std::ostringstream tr;
    tr << "add d=" << d << " consts=" << consts << " t=" << t << " rate=" << rep.rate_bound
       << " log_p=" << rep.log_p;
    rep.trace = tr.str();
    return rep;
}

WorkedExample reproduce_worked_example(double rd_F, double zeta_F2, double t) {
    WorkedExample we;
    auto ratio = [&](double tt) {
        return std::pow(2 * M_PI, 1.5) * std::sqrt(std::sinh(4 * tt) - 4 * tt) /
               (std::pow(rd_F, 1.5) * std::pow(zeta_F2, 1.0 / 20));
    };
    we.ratio_t = ratio(t);
    we.ratio_at_1 = ratio(1.0);
    we.threshold = static_cast<long>(std::ceil(std::exp(std::log(2.0) + 2 * t)));
    we.ok = we.ratio_t > 1.0 && we.ratio_at_1 < 1.0;
    return we;
}

ExperimentBundle run_experiment(const ExperimentConfig& cfg) {
    if (!cfg.order) throw std::invalid_argument("run_experiment: no order");
    ExperimentBundle out;
    const Order& O = *cfg.order;
    const QuatAlgebra& A = O.algebra();
    const NumberField& F = A.field();
    int n = F.degree();
    int d = 2;

    auto emb = Embeddings(cfg.order->algebra_ptr());
    EnumOptions eopts;
    eopts.slack = cfg.slack;

    auto push_check = [&](const std::string& name, bool pass, std::string detail = "") {
        out.checks.push_back({name, pass, std::move(detail)});
    };

    if (cfg.mode == ExperimentMode::Multiplicative) {
        std::vector<SplittingMap> maps;
        std::map<uint64_t, int> seen;
        for (uint64_t p : cfg.primes)
            maps.emplace_back(cfg.order, make_prime_data(F, p, cfg.residue_degree, true, seen[p]++));
        uint64_t q0 = maps.front().field()->size();
        double q = std::pow(static_cast<double>(q0), d);
        int s = static_cast<int>(maps.size());
        int N = d * s;

        out.enumeration = enumerate_units_in_ball(O, emb, cfg.t, eopts);
        out.injectivity_t_max = injectivity_threshold(N, n, d, q);
        out.code = theta(out.enumeration.elements, maps);
        out.code.t = cfg.t;
        out.bound_dR = distance_bound_mult(n, d, s, cfg.t, q);

        push_check("ball_nonempty", out.enumeration.elements.size() >= 2);
        bool expect_injective = cfg.t <= out.injectivity_t_max;
        push_check("theta_injective", !expect_injective || out.code.injective());
        if (out.code.words.size() >= 2) {
            out.distance = min_distance(out.code);
            out.distance.bound_dR = out.bound_dR;
            out.distance.bound_vacuous = out.bound_dR <= 0;
            push_check("distance_bound",
                       out.distance.bound_vacuous || out.distance.d_R >= out.bound_dR);
            push_check("sumrank_le_hamming", out.distance.d_R <= out.distance.d_H);
        }
        // volume report: closed ball volume vs the Prasad covolume
        if (!cfg.ramified_norms.empty()) {
            Embeddings e2(cfg.order->algebra_ptr());
            int u = e2.real_split_count(), r = e2.real_ramified_count(), r2 = e2.complex_count();
            out.volumes.mu_B = vol_ball_quaternion_closed(u, r, r2, cfg.t).value;
            ZetaValue z2 = dedekind_zeta(F, 2, cfg.zeta_cutoff);
            std::vector<RamifiedLocalData> ram;
            for (const auto& nm : cfg.ramified_norms) ram.push_back({nm, 2});
            auto pv = prasad_volume(2, n, F.discriminant_abs(), ram, {z2});
            out.volumes.mu_quot = pv.value;
            out.volumes.mu_quot_rel_err = pv.rel_err;
            out.volumes.lenstra_lb = lenstra_lower_bound(out.volumes.mu_B, out.volumes.mu_quot);
            out.volumes.count_over_lenstra =
                out.enumeration.elements.size() / out.volumes.lenstra_lb;
        }

        // collision norm divisibility: N(z) divisible by q0^{d d} per colliding prime
        bool coll_ok = true;
        for (const auto& c : out.code.collisions) {
            std::vector<Int> diff(c.first.size());
            for (size_t i = 0; i < diff.size(); ++i) diff[i] = c.first[i] - c.second[i];
            AlgElem z = O.from_coords(diff);
            Rational nz = A.absolute_norm(z);
            Int denom = nz.get_den();
            if (denom != 1) {
                coll_ok = false;
                continue;
            }
            Int nzi = nz.get_num();
            Int qd = pow_int(Int(static_cast<unsigned long>(q0)), static_cast<unsigned long>(d * d));
            for (size_t k = 0; k < maps.size(); ++k)
                if (nzi % qd != 0) coll_ok = false;
        }
        push_check("collision_norm_divisibility", coll_ok);
    } else if (cfg.mode == ExperimentMode::Additive) {
        std::vector<SplittingMap> maps;
        std::map<uint64_t, int> seen;
        for (uint64_t p : cfg.primes)
            maps.emplace_back(cfg.order, make_prime_data(F, p, cfg.residue_degree, true, seen[p]++));
        uint64_t q0 = maps.front().field()->size();
        double q = std::pow(static_cast<double>(q0), d);
        int s = static_cast<int>(maps.size());

        out.enumeration = enumerate_additive_ball(O, emb, cfg.t, {}, eopts);
        out.code = theta(out.enumeration.elements, maps);
        out.code.t = cfg.t;
        out.bound_dR = distance_bound_add(n, d, s, cfg.t, q);

        Int delta_A = pow_int(F.discriminant_abs(), 4) * cfg.reduced_disc_norm * cfg.reduced_disc_norm;
        auto av = additive_volumes(d, n, F.r1(), F.r2(), cfg.t, delta_A);
        out.volumes.mu_B = av.mu_B.value;
        out.volumes.mu_quot = av.mu_quot;
        out.volumes.lenstra_lb = av.lenstra_lb;
        out.volumes.count_over_lenstra = out.enumeration.elements.size() / av.lenstra_lb;

        push_check("ball_nonempty", out.enumeration.elements.size() >= 2);
        if (out.code.words.size() >= 2) {
            out.distance = min_distance(out.code);
            out.distance.bound_dR = out.bound_dR;
            out.distance.bound_vacuous = out.bound_dR <= 0;
            push_check("distance_bound",
                       out.distance.bound_vacuous || out.distance.d_R >= out.bound_dR);
            push_check("sumrank_le_hamming", out.distance.d_R <= out.distance.d_H);
        }
    } else {
        std::vector<RamifiedResidueMap> maps;
        for (uint64_t p : cfg.primes) maps.emplace_back(cfg.order, p);
        uint64_t q0 = maps.front().field()->size();  // p^2
        double q = static_cast<double>(q0);          // 1 x 1 blocks: q = |alphabet|
        int s = static_cast<int>(maps.size());

        out.enumeration = enumerate_additive_ball(O, emb, cfg.t, {}, eopts);
        out.code = theta_ramified(out.enumeration.elements, maps);
        out.code.t = cfg.t;
        // 1 x 1 blocks over F_{p^2}: N = s, q = p^d; the additive chain gives
        // d_H >= N - d^2 n (log 2t - (1/2) log d)/log q
        out.bound_dR = static_cast<double>(s) -
                       d * d * n *
                           (std::log(2 * cfg.t) - 0.5 * std::log(static_cast<double>(d))) /
                           std::log(q);
        push_check("ball_nonempty", out.enumeration.elements.size() >= 2);
        if (out.code.words.size() >= 2) {
            out.distance = min_distance(out.code);
            out.distance.bound_dR = out.bound_dR;
            out.distance.bound_vacuous = out.bound_dR <= 0;
            push_check("distance_bound",
                       out.distance.bound_vacuous || out.distance.d_R >= out.bound_dR);
        }
    }

    out.all_ok = true;
    for (const auto& c : out.checks)
        if (!c.pass) out.all_ok = false;
    return out;
}

}  // namespace arithcode
