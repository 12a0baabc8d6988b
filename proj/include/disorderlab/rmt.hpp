#pragma once

// CUE eigenangles and their counting statistics: Metropolis sampling of the
// eigenangle density prod |e^{i a} - e^{i b}|^2, exact rejection sampling for
// tiny N, the log characteristic polynomial, normalized counting statistics,
// and the sine-kernel variance oracle.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dlab {

enum class CueSampler { metropolis, rejection };

struct EigenangleSample {
    int N = 0;
    std::vector<double> angles; // in (-pi, pi]
    CueSampler sampler = CueSampler::metropolis;
    std::uint64_t seed = 0;
    int burn_in_sweeps = 0;
    int thinning = 0; // sweeps between retained samples
    double proposal_width = 0.0;
    double acceptance_rate = 0.0;
};

inline constexpr int kCueMaxDimension = 1024;

// Haar-distributed eigenangles. Metropolis: single-angle proposals, burn-in
// 50*N sweeps with width adaptation frozen halfway, thinning N sweeps.
// Rejection: exact, N <= 3 only. Chains of 512 retained samples run on
// derived seeds, so the output is identical for any worker count.
// Throws calibration_error if the tuned acceptance rate leaves [0.1, 0.9].
std::vector<EigenangleSample> sample_cue(int N, std::size_t count, std::uint64_t seed,
                                         CueSampler sampler = CueSampler::metropolis);

// log det(I - U e^{-i theta}) = sum_k log(1 - e^{i(theta_k - theta)}),
// principal branch per factor. Throws singularity_error within 1e-12 of an
// eigenangle.
std::complex<double> log_char_poly(const EigenangleSample& sample, double theta);

struct CountingStat {
    double s = 0.0, t = 0.0;
    int raw_count = 0;    // angles in (s, t]
    double normalized = 0.0; // (raw - (t-s)N/2pi) / ((1/pi) sqrt(log N))
};

// Exact count of eigenangles in (s, t], -pi < s < t <= pi.
CountingStat counting_stat(const EigenangleSample& sample, double s, double t);

// Sine-kernel (DPP) variance of the count in (s, t] for CUE(N):
// Var = |I| N/(2pi) - int int_{I^2} |K_N(x-y)|^2, reduced to one dimension by
// translation invariance. resolution is the per-axis quadrature density.
double dpp_count_variance(int N, double s, double t, int resolution = 0);

struct IntervalPair {
    double s1 = 0.0, t1 = 0.0;
    double s2 = 0.0, t2 = 0.0;
};

struct WieandEntry {
    IntervalPair pair;
    double covariance = 0.0; // of the normalized counts
    double std_error = 0.0;
    double prediction = 0.0; // limit covariance from the endpoint case table
};

// Empirical covariance matrix entries of normalized counts across samples,
// tagged with the limiting prediction (1, +-1/2, 0 by endpoint sharing).
std::vector<WieandEntry> wieand_covariance(std::span<const EigenangleSample> samples,
                                           std::span<const IntervalPair> pairs);

// The limit covariance case table for ordered intervals (s<t, s'<t'):
// 1 when both endpoints coincide, 1/2 when exactly one of s=s'/t=t' holds,
// -1/2 when exactly one of s=t'/t=s' holds, 0 otherwise.
double wieand_prediction(const IntervalPair& pair);

} // namespace dlab
