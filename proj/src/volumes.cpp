#include "arithcode/volumes.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace arithcode {

VolumeValue VolumeValue::closed(double v) {
    VolumeValue r;
    r.value = v;
    r.log_value = std::log(v);
    r.exactness = Exactness::ClosedForm;
    return r;
}

VolumeValue VolumeValue::from_log(double lv, Exactness e) {
    VolumeValue r;
    r.log_value = lv;
    r.value = std::exp(lv);
    r.exactness = e;
    return r;
}

void SymbolicVolume::normalize() {
    // pull square part of sqrt_arg into coef, then the 2-part into exp2
    if (sqrt_arg < 0) throw std::logic_error("SymbolicVolume: negative sqrt argument");
    Int s(1), m = sqrt_arg;
    for (Int f(2); f * f <= m;) {
        if (m % (f * f) == 0) {
            m /= f * f;
            s *= f;
        } else {
            f += 1;
        }
    }
    coef *= Rational(s);
    while (m % 2 == 0) {
        m /= 2;
        exp2 += Rational(1, 2);
    }
    sqrt_arg = m;
    coef.canonicalize();
    exp2.canonicalize();
    exppi.canonicalize();
}

double SymbolicVolume::value() const {
    return to_double(coef) * std::pow(2.0, to_double(exp2)) * std::pow(M_PI, to_double(exppi)) *
           std::sqrt(sqrt_arg.get_d());
}

namespace {

// log |z| that survives magnitudes far beyond double range
double log_mpz(const Int& z) {
    signed long exp2of;
    double m = mpz_get_d_2exp(&exp2of, z.get_mpz_t());
    return std::log(std::fabs(m)) + exp2of * std::log(2.0);
}

}  // namespace

double SymbolicVolume::log_value() const {
    if (coef <= 0) throw std::domain_error("SymbolicVolume::log_value: nonpositive");
    return log_mpz(coef.get_num()) - log_mpz(coef.get_den()) + to_double(exp2) * std::log(2.0) +
           to_double(exppi) * std::log(M_PI) + 0.5 * std::log(sqrt_arg.get_d());
}

std::string SymbolicVolume::str() const {
    std::ostringstream os;
    os << to_string(coef) << " * 2^(" << to_string(exp2) << ") * pi^(" << to_string(exppi) << ")";
    if (sqrt_arg != 1) os << " * sqrt(" << to_string(sqrt_arg) << ")";
    return os.str();
}

SymbolicVolume vol_zka(const GroupSpec& spec) {
    SymbolicVolume v;
    int d = spec.d;
    switch (spec.D) {
        case 'R':
            v.exp2 = d - 1;
            break;
        case 'C':
            // (2 sqrt2 pi)^{d-1} sqrt d
            v.exp2 = Rational(3 * (d - 1), 2);
            v.exppi = d - 1;
            v.sqrt_arg = d;
            break;
        case 'H':
            // (4 sqrt2 pi^2)^d
            v.exp2 = Rational(5 * d, 2);
            v.exppi = 2 * d;
            break;
        default:
            throw std::invalid_argument("vol_zka: D must be R, C or H");
    }
    v.normalize();
    return v;
}

namespace {

// (kappa exponent-of-2 as rational, sqrt argument, exponents m_k)
struct MacdonaldData {
    Rational kappa_exp2;
    Int sqrt_arg = Int(1);
    std::vector<int> m;
};

MacdonaldData macdonald_data(const GroupSpec& spec) {
    MacdonaldData md;
    int d = spec.d;
    switch (spec.D) {
        case 'R':
            if (d % 2 == 0) {
                int r = d / 2;
                md.kappa_exp2 = Rational(2 * d * d - d, 4);  // d^2/2 - d/4
                for (int k = 1; k <= r - 1; ++k) md.m.push_back(2 * k - 1);
                md.m.push_back(r - 1);
            } else {
                int r = (d - 1) / 2;
                md.kappa_exp2 = Rational(2 * d * d + d - 3, 4);  // d^2/2 + d/4 - 3/4
                for (int k = 1; k <= r; ++k) md.m.push_back(2 * k - 1);
            }
            break;
        case 'C': {
            int r = d - 1;
            md.kappa_exp2 = Rational(2 * d * d + d - 3, 2);  // d^2 + d/2 - 3/2
            md.sqrt_arg = d;
            for (int k = 1; k <= r; ++k) md.m.push_back(k);
            break;
        }
        case 'H': {
            int r = d;
            md.kappa_exp2 = Rational(4 * d * d + d, 2);  // 2d^2 + d/2
            for (int k = 1; k <= r; ++k) md.m.push_back(2 * k - 1);
            break;
        }
        default:
            throw std::invalid_argument("vol_k: D must be R, C or H");
    }
    return md;
}

}  // namespace

SymbolicVolume vol_k(const GroupSpec& spec) {
    if (spec.d < 1) throw std::invalid_argument("vol_k: d < 1");
    MacdonaldData md = macdonald_data(spec);
    SymbolicVolume v;
    v.exp2 = md.kappa_exp2;
    v.sqrt_arg = md.sqrt_arg;
    long exppi = 0;
    Rational coef(1);
    for (int mk : md.m) {
        exppi += mk + 1;
        coef /= Rational(factorial(static_cast<unsigned long>(mk)));
    }
    v.exppi = Rational(exppi);
    v.coef = coef;
    v.normalize();
    return v;
}

double log_vol_k(const GroupSpec& spec) {
    MacdonaldData md = macdonald_data(spec);
    double lv = to_double(md.kappa_exp2) * std::log(2.0) + 0.5 * std::log(md.sqrt_arg.get_d());
    for (int mk : md.m) lv += (mk + 1) * std::log(M_PI) - std::lgamma(mk + 1.0);
    return lv;
}

std::pair<std::vector<AsymRow>, bool> vol_k_asymptotic_check(char D, int dmax) {
    if (dmax > 60) throw std::invalid_argument("vol_k_asymptotic_check: dmax > 60");
    GroupSpec spec{D, 2};
    std::vector<AsymRow> rows;
    for (int d = 2; d <= dmax; ++d) {
        spec.d = d;
        double lm = log_vol_k(spec);
        double target = -(spec.n() / 4.0) * std::pow(static_cast<double>(spec.e()) * d, 2) *
                        std::log(static_cast<double>(d));
        rows.push_back({d, lm, target, lm / target});
    }
    // monotone trend toward 1 over the tail of the sweep
    bool trend = true;
    for (size_t i = rows.size() / 2; i + 1 < rows.size(); ++i)
        if (!(rows[i + 1].ratio >= rows[i].ratio - 1e-12)) trend = false;
    return {rows, trend};
}

IntervalFamily intervals(int k) {
    if (k < 1) throw std::invalid_argument("intervals: k < 1");
    IntervalFamily fam;
    fam.k = k;
    Rational kp1(k + 1);
    Rational hw = Rational(1) / (8 * kp1 * kp1);
    for (int i = 1; i <= k; ++i) {
        Rational c = Rational(2 * i) / kp1 - 1;
        if (k % 2 == 1 && i == (k + 1) / 2) c = Rational(1) / kp1;
        fam.centers.push_back(c);
        fam.intervals.emplace_back(c - hw, c + hw);
    }

    // exact verification of the six properties over endpoint combinations
    Rational delta = Rational(1) / (4 * kp1 * kp1);
    Rational sum_alpha(0), sum_beta(0);
    for (auto& [alpha, beta] : fam.intervals) {
        sum_alpha += alpha;
        sum_beta += beta;
    }
    auto min_abs_of_range = [](const Rational& lo, const Rational& hi) {
        if (lo <= 0 && hi >= 0) return Rational(0);
        return lo > 0 ? lo : -hi;
    };

    for (int i = 0; i < k; ++i) {
        const auto& [alpha, beta] = fam.intervals[i];
        // (1) |a_i| <= 1
        if (abs(alpha) > 1 || abs(beta) > 1) throw std::logic_error("intervals: property 1 fails");
        // (3) beta - alpha >= 1/(4(k+1)^2)
        if (beta - alpha < delta) throw std::logic_error("intervals: property 3 fails");
        // (5) |a_i + sum_j a_j| = |2 a_i + sum_{j != i} a_j| >= delta
        Rational lo = alpha + sum_alpha;
        Rational hi = beta + sum_beta;
        if (min_abs_of_range(lo, hi) < delta) throw std::logic_error("intervals: property 5 fails");
        // (4) pairwise separation
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            Rational dlo = alpha - fam.intervals[j].second;
            Rational dhi = beta - fam.intervals[j].first;
            if (min_abs_of_range(dlo, dhi) < delta) throw std::logic_error("intervals: property 4 fails");
        }
    }
    // (2) |sum a_j| <= 1
    if (abs(sum_alpha) > 1 || abs(sum_beta) > 1) throw std::logic_error("intervals: property 2 fails");
    // (6) |{j : a_j >= 1/4}| >= (k+1)/5, worst case a_j = alpha_j
    {
        int count = 0;
        for (auto& [alpha, beta] : fam.intervals)
            if (alpha >= Rational(1, 4)) ++count;
        if (Rational(5 * count) < kp1) throw std::logic_error("intervals: property 6 fails");
    }
    return fam;
}

VolumeValue vol_ball_lower_bound(int n, int e, int d, double t) {
    if (t < 1 || d < 2) throw std::invalid_argument("vol_ball_lower_bound: need t >= 1, d >= 2");
    if (!((n == 1 && e == 1) || (n == 2 && e == 1) || (n == 1 && e == 2)))
        throw std::invalid_argument("vol_ball_lower_bound: (n, e) must be (1,1), (2,1) or (1,2)");
    GroupSpec spec{e == 2 ? 'H' : (n == 2 ? 'C' : 'R'), d};
    double lv = 0.5 * (d - 1) * std::log(static_cast<double>(n) * e) +
                0.5 * std::log(static_cast<double>(d));
    lv -= vol_zka(spec).log_value();
    lv += 2 * log_vol_k(spec);
    double ne2 = static_cast<double>(n) * e * e;
    lv += -(d - 1.0) * (d + 2.0) * ne2 * std::log(2.0 * d) + (d * d * ne2 / 200.0) * t;
    return VolumeValue::from_log(lv, Exactness::LowerBound);
}

VolumeValue vol_ball_quaternion_closed(int u, int r, int r2, double t) {
    if (u < 0 || r < 0 || r2 < 0) throw std::invalid_argument("vol_ball_quaternion_closed: negative counts");
    int r1 = u + r;
    double lv = (1.5 * u + 2.5 * r + 4.0 * r2) * std::log(2.0) +
                (2.0 * r1 + 3.0 * r2) * std::log(M_PI);
    if (u > 0) lv += u * std::log(std::cosh(2 * t) - 1);
    if (r2 > 0) lv += r2 * std::log(std::sinh(4 * t) - 4 * t);
    return VolumeValue::from_log(lv, Exactness::ClosedForm);
}

namespace {

// adaptive Simpson with absolute tolerance
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0) throw ToleranceNotMetError("kak_ball_quadrature: recursion limit");
    if (std::fabs(delta) <= 15 * tol) return left + right + delta / 15;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    if (a == b) return 0;
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

}  // namespace

VolumeValue kak_ball_quadrature(const GroupSpec& spec, double t, double abs_tol) {
    if (spec.d != 2 || spec.D == 'H')
        throw std::invalid_argument("kak_ball_quadrature: d = 2 with D in {R, C} only");
    int n = spec.n(), e = spec.e();
    double prefactor = std::sqrt(static_cast<double>(n) * e) * std::sqrt(2.0) /
                       vol_zka(spec).value() * std::pow(vol_k(spec).value(), 2);
    int pw = n * e * e;
    double integral = integrate(
        [pw](double a) { return std::pow(std::sinh(2 * a), pw); }, 0.0, t,
        abs_tol / std::max(prefactor, 1.0));
    VolumeValue v;
    v.value = prefactor * integral;
    v.log_value = std::log(v.value);
    v.exactness = Exactness::Quadrature;
    v.abs_err = abs_tol;
    return v;
}

PrasadVolume prasad_volume(int d, int n, const Int& delta_F_abs,
                           const std::vector<RamifiedLocalData>& ramified,
                           const std::vector<ZetaValue>& zetas) {
    if (static_cast<int>(zetas.size()) != d - 1)
        throw std::invalid_argument("prasad_volume: need zeta_F(2..d)");
    // N(delta_A) = prod N(p)^{d - d/e_p}; Delta_A/Delta_F = Delta_F^{d^2-1} N(delta_A)^d
    double log_ratio = (static_cast<double>(d) * d - 1) * std::log(delta_F_abs.get_d());
    double log_phi = 0;
    for (const auto& loc : ramified) {
        if (d % loc.e != 0) throw std::invalid_argument("prasad_volume: e_p does not divide d");
        int dp = d / loc.e;
        log_ratio += d * (d - dp) * std::log(loc.norm.get_d());
        for (int i = 1; i < d; ++i)
            if (i % loc.e != 0) log_phi += std::log1p(-std::pow(loc.norm.get_d(), -i));
    }
    double log_val = 0.5 * n * std::log(static_cast<double>(d)) + 0.5 * log_ratio + log_phi;
    double rel_lo = 1, rel_hi = 1;
    for (const auto& z : zetas) {
        log_val += std::log(z.value);
        rel_lo *= 1 - z.error_bound;
        rel_hi *= 1 + z.error_bound;
    }
    PrasadVolume out;
    out.value = std::exp(log_val);
    out.rel_err = std::max(rel_hi - 1, 1 - rel_lo);
    out.quaternion_path = std::numeric_limits<double>::quiet_NaN();
    if (d == 2) {
        double qp = std::pow(2.0, n / 2.0) * std::pow(delta_F_abs.get_d(), 1.5) * zetas[0].value;
        for (const auto& loc : ramified) qp *= loc.norm.get_d() - 1;
        out.quaternion_path = qp;
        if (std::fabs(qp - out.value) > 1e-9 * std::fabs(out.value) * (1 + out.rel_err))
            throw std::logic_error("prasad_volume: quaternion path disagrees with the general formula");
    }
    return out;
}

SymbolicVolume ball_volume_symbolic(int m) {
    if (m < 1) throw std::invalid_argument("ball_volume_symbolic: m < 1");
    SymbolicVolume v;
    if (m % 2 == 0) {
        v.exppi = Rational(m / 2);
        v.coef = Rational(1) / Rational(factorial(m / 2));
    } else {
        // Gamma(m/2 + 1) = m!! sqrt(pi) / 2^{(m+1)/2}
        Int dfact(1);
        for (int i = m; i >= 1; i -= 2) dfact *= i;
        v.exppi = Rational(m - 1, 2);
        v.exp2 = Rational(m + 1, 2);
        v.coef = Rational(1) / Rational(dfact);
    }
    v.normalize();
    return v;
}

AdditiveVolumes additive_volumes(int d, int n, int r1, int r2, double t, const Int& delta_A) {
    if (t <= 0) throw std::invalid_argument("additive_volumes: t <= 0");
    if (r1 + 2 * r2 != n) throw std::invalid_argument("additive_volumes: r1 + 2 r2 != n");
    int d2 = d * d;
    double lv = r2 * d2 * std::log(2.0);
    if (r1 > 0) lv += r1 * ball_volume_symbolic(d2).log_value();
    if (r2 > 0) lv += r2 * ball_volume_symbolic(2 * d2).log_value();
    lv += d2 * n * std::log(t);
    AdditiveVolumes out;
    out.mu_B = VolumeValue::from_log(lv, Exactness::ClosedForm);
    out.mu_quot = std::sqrt(delta_A.get_d());
    out.lenstra_lb = lenstra_lower_bound(out.mu_B.value, out.mu_quot);
    return out;
}

double lenstra_lower_bound(double mu_B, double mu_quot) {
    if (!(mu_B > 0) || !(mu_quot > 0)) throw std::invalid_argument("lenstra_lower_bound: nonpositive");
    return mu_B / mu_quot;
}

}  // namespace arithcode
