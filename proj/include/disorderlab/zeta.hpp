#pragma once

// zeta(1/2 + it) at desk heights and the classical continuous determination
// of its logarithm: Re from the Hardy Z-function, Im from Backlund-style
// zero counting, pi*S(t) = pi*(N(t) - theta(t)/pi - 1).
//
// Z(t) uses Euler-Maclaurin below t = 1000 and Riemann-Siegel (main sum plus
// four correction terms) above; the correction coefficients are evaluated
// through Chebyshev fits of the standard Psi-derivative combinations.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace dlab {

// Riemann-Siegel theta. Asymptotic expansion for t >= 10, log-Gamma branch
// below; domain_error for t <= 0.
double rs_theta(double t);

// d(theta)/dt = 0.5 log(t/2pi) + O(1/t^2); used by scan step control.
double rs_theta_deriv(double t);

inline constexpr double kDefaultHeightCap = 1e9;

// Z(t) = e^{i theta(t)} zeta(1/2 + it), real-valued. Preconditions
// 10 <= t <= cap; capacity_error above the cap, domain_error below 10.
double hardy_Z(double t, double height_cap = kDefaultHeightCap);

// Euler-Maclaurin zeta(1/2+it) in double precision; intended for t <= ~5e3.
std::complex<double> zeta_em(double t);

// Monotone zero-count structure from a sign-change scan of Z on (0, t_max].
class ZeroScan {
public:
    double t_max = 0.0;
    double grid_density = 4.0;
    std::vector<double> zeros; // ascending, bisected to ~1e-6
    std::vector<std::string> warnings;

    // N(t): number of zeros in (0, t].
    std::int64_t count_upto(double t) const;
    // S(t) = N(t) - theta(t)/pi - 1.
    double s_value(double t) const;
    double nearest_zero_distance(double t) const;
};

// Scans (0, t_max] with grid_density points per expected zero spacing
// (>= 4), bisecting each sign change. Drift of N(t) against theta/pi + 1 by
// >= 2 triggers a local rescan and, when unresolved, an integrity warning.
ZeroScan zero_count_scan(double t_max, double grid_density = 4.0);

// Binary cache ("ZSCN1"); layout documented in docs/file-formats.md.
void write_zero_scan_cache(const ZeroScan& scan, const std::string& path);
ZeroScan load_zero_scan_cache(const std::string& path);

struct CriticalLinePoint {
    double t = 0.0;
    double Z = 0.0;
    double theta = 0.0;
    std::complex<double> zeta;     // e^{-i theta} Z
    std::complex<double> log_zeta; // Re = ln|Z|, Im = pi S(t)
    std::int64_t s_count_basis = 0; // N(t) used for S(t)
    bool near_zero = false;         // within 1e-3 of a located zero
};

inline constexpr double kZeroSingularityRadius = 1e-6;
inline constexpr double kZeroFlagRadius = 1e-3;

// The continuous determination at t (10 <= t <= scan.t_max). Throws
// singularity_error within kZeroSingularityRadius of a located zero.
CriticalLinePoint log_zeta_det(double t, const ZeroScan& scan);

// L_lambda(N, u) = log zeta(1/2 + i u e^{N^lambda}) / sqrt(log N).
std::complex<double> sample_L(double N, double lambda, double u, const ZeroScan& scan);

} // namespace dlab
