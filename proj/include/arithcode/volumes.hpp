#pragma once

#include "arithcode/rational.hpp"
#include "arithcode/zeta.hpp"

namespace arithcode {

struct ToleranceNotMetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// SL_d(D) for D in {R, C, H}; n = [Z(D):R], e = deg(D) over its centre.
struct GroupSpec {
    char D = 'R';  // 'R', 'C', 'H'
    int d = 1;

    int n() const { return D == 'C' ? 2 : 1; }
    int e() const { return D == 'H' ? 2 : 1; }
};

enum class Exactness { ClosedForm, LowerBound, Quadrature };

struct VolumeValue {
    double value = 0;
    double log_value = 0;
    Exactness exactness = Exactness::ClosedForm;
    double abs_err = 0;  // quadrature only

    static VolumeValue closed(double v);
    static VolumeValue from_log(double lv, Exactness e);
};

// coef * 2^exp2 * pi^exppi * sqrt(sqrt_arg); exponents may be half-integral
// through coef-free normalization (exp2, exppi rational with denominator
// dividing 2, sqrt_arg squarefree).
struct SymbolicVolume {
    Rational coef = Rational(1);
    Rational exp2 = Rational(0);
    Rational exppi = Rational(0);
    Int sqrt_arg = Int(1);

    void normalize();
    double value() const;
    double log_value() const;
    bool operator==(const SymbolicVolume& o) const = default;
    std::string str() const;
};

// mu(Z_K(A)): 2^{d-1} (R), (2 sqrt2 pi)^{d-1} sqrt d (C), (4 sqrt2 pi^2)^d (H)
SymbolicVolume vol_zka(const GroupSpec& spec);

// Macdonald's formula: kappa * prod_k pi^{m_k+1}/m_k!
SymbolicVolume vol_k(const GroupSpec& spec);
double log_vol_k(const GroupSpec& spec);  // via lgamma, for large d

struct AsymRow {
    int d;
    double log_mu;
    double target;  // -(n/4)(ed)^2 log d
    double ratio;
};
// Sweep d = 2..dmax; trend flag: ratios increase toward 1 over the tail.
std::pair<std::vector<AsymRow>, bool> vol_k_asymptotic_check(char D, int dmax);

struct IntervalFamily {
    int k = 0;
    std::vector<std::pair<Rational, Rational>> intervals;
    std::vector<Rational> centers;
};

// The k scaled interval family with centers 2i/(k+1)-1 (odd-k middle
// exception 1/(k+1)) and half-width 1/(8(k+1)^2). All six defining
// properties are verified exactly over endpoint combinations; throws
// std::logic_error if any fails.
IntervalFamily intervals(int k);

// Explicit ball-volume lower bound, log space:
// log[(ne)^{(d-1)/2} sqrt d] - log mu(Z_K(A)) + 2 log mu(K)
//   - (d-1)(d+2) n e^2 log(2d) + (d^2 n e^2 / 200) t
VolumeValue vol_ball_lower_bound(int n, int e, int d, double t);

// mu(B(t)) for quaternion algebras:
// 2^{(3/2)u + (5/2)r + 4 r2} pi^{2 r1 + 3 r2} (cosh 2t - 1)^u (sinh 4t - 4t)^{r2}
VolumeValue vol_ball_quaternion_closed(int u, int r, int r2, double t);

// d = 2 KAK integral by adaptive quadrature:
// (ne)^{1/2} sqrt 2 / mu(Z_K(A)) * mu(K)^2 * int_0^t sinh(2a)^{ne^2} da
VolumeValue kak_ball_quadrature(const GroupSpec& spec, double t, double abs_tol);

struct RamifiedLocalData {
    Int norm;   // N(p)
    int e = 2;  // local index e_p (must divide d)
};

// Prasad covolume mu(G/O^1) = d^{n/2} (Delta_A/Delta_F)^{1/2} prod zeta_F(j) Phi.
// Returns the value with the zeta error interval propagated; for d = 2 the
// quaternion closed form 2^{n/2} Delta_F^{3/2} zeta_F(2) prod (N(p)-1) is
// evaluated as an internal cross-check.
struct PrasadVolume {
    double value = 0;
    double rel_err = 0;
    double quaternion_path = 0;  // NaN unless d = 2
};

PrasadVolume prasad_volume(int d, int n, const Int& delta_F_abs,
                           const std::vector<RamifiedLocalData>& ramified,
                           const std::vector<ZetaValue>& zetas);

// V_m = pi^{m/2} / Gamma(m/2 + 1), exact via half-integer Gamma.
SymbolicVolume ball_volume_symbolic(int m);

struct AdditiveVolumes {
    VolumeValue mu_B;
    double mu_quot = 0;    // sqrt(Delta_A)
    double lenstra_lb = 0; // mu_B / mu_quot
};

// mu(B(t)) = 2^{r2 d^2} V_{d^2}^{r1} V_{2d^2}^{r2} t^{d^2 n}, mu(G/O) = sqrt(Delta_A)
AdditiveVolumes additive_volumes(int d, int n, int r1, int r2, double t, const Int& delta_A);

double lenstra_lower_bound(double mu_B, double mu_quot);

}  // namespace arithcode
