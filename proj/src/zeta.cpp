#include "arithcode/zeta.hpp"

#include <cmath>

namespace arithcode {

namespace {

// Rigorous bound on sum_{p > P} p^{-j} over primes.
// For P >= 599 use pi(x) <= (x/log x)(1 + 1.2762/log x) [Dusart] together
// with the exact prime count pi(P):
//   sum <= (j/(j-1)) (1 + 1.2762/log P) P^{1-j}/log P - pi(P) P^{-j}.
// For smaller P fall back to the trivial sum over all integers,
//   sum <= P^{1-j}/(j-1).
double prime_power_tail(int j, uint64_t P, uint64_t pi_P) {
    double Pd = static_cast<double>(P);
    if (P >= 599) {
        double lp = std::log(Pd);
        double bound = (static_cast<double>(j) / (j - 1)) * (1 + 1.2762 / lp) *
                           std::pow(Pd, 1.0 - j) / lp -
                       static_cast<double>(pi_P) * std::pow(Pd, -static_cast<double>(j));
        return std::max(bound, 0.0);
    }
    return std::pow(Pd, 1.0 - j) / (j - 1);
}

}  // namespace

ZetaValue dedekind_zeta(const NumberField& F, int j, uint64_t prime_cutoff, const ZetaOptions& opts) {
    if (j < 2) throw std::invalid_argument("dedekind_zeta: j < 2");
    if (prime_cutoff < 2) throw std::invalid_argument("dedekind_zeta: cutoff < 2");
    const int n = F.degree();
    const Int poly_disc = F.poly_discriminant_num();

    long double log_value = 0.0L;
    double log_lo = 0, log_hi = 0;  // bracket multipliers around exp(log_value)
    ZetaValue out;
    out.prime_cutoff = prime_cutoff;

    auto primes = primes_up_to(prime_cutoff);
    for (uint64_t p : primes) {
        bool ramified = (poly_disc % Int(static_cast<unsigned long>(p)) == 0);
        if (ramified) {
            auto it = opts.ramified_factors.find(p);
            if (it != opts.ramified_factors.end()) {
                log_value += std::log(static_cast<long double>(it->second));
            } else {
                // true local factor lies in [(1-p^{-j})^{n} .. (1-p^{-j})^{-n}]
                out.skipped_primes.push_back(p);
                double l1p = std::log1p(-std::pow(static_cast<double>(p), -j));
                log_lo += n * l1p;
                log_hi -= n * l1p;
            }
            continue;
        }
        auto degs = factor_degrees_mod_p(F.poly_coeffs(), p);
        for (int deg : degs)
            log_value -= std::log1p(-std::pow(static_cast<long double>(p), -static_cast<long double>(j) * deg));
    }

    // tail over p > P: each p contributes at most n factors (1 - q^{-j})^{-1}
    // with q >= p, and -log(1-x) <= x/(1-x).
    uint64_t pi_P = primes.size();
    double S = prime_power_tail(j, prime_cutoff, pi_P);
    double inflate = 1.0 / (1.0 - std::pow(static_cast<double>(prime_cutoff), -j));
    double tail = n * S * inflate;
    if (std::expm1(tail) > opts.error_cap)
        throw CutoffTooSmallError("dedekind_zeta: tail bound exceeds cap");
    log_hi += tail;

    // float-rounding slack for the accumulated product
    double fp_slack = 1e-12 + 1e-17 * static_cast<double>(primes.size());
    log_hi += fp_slack;
    log_lo -= fp_slack;

    out.value = static_cast<double>(std::exp(log_value));
    out.error_bound = std::max(std::expm1(log_hi), -std::expm1(log_lo));
    return out;
}

}  // namespace arithcode
