#pragma once

// The truncated prime sums P(lambda, n; k, N, u) and the Monte Carlo
// residual between log zeta and its prime-sum approximation.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "disorderlab/phases.hpp"
#include "disorderlab/primes.hpp"
#include "disorderlab/zeta.hpp"

namespace dlab {

struct PrimeSumSpec {
    double N = 0.0;
    double lambda = 0.0;
    int k = 1; // number of scales in the enclosing moment
    int n = 1; // exponent this sum will be raised to

    double cutoff() const { return std::exp(std::pow(N, lambda) / (40.0 * k * n)); }
    double normalization() const { return 1.0 / std::sqrt(std::log(N)); }
};

// (1/sqrt(log N)) sum_{p <= cutoff} e^{-i phi_p} / sqrt(p) with
// phi_p = reduce_phase(ctx, u, log p). Empty sum (cutoff < 2) returns 0.
std::complex<double> prime_sum_P(const PrimeSumSpec& spec, const PhaseContext& ctx,
                                 const PrimeTable& table, double u);

// Elementwise prime_sum_P over a strictly increasing grid in [1,2], through
// the per-prime reduced decomposition (one multiprecision pass per prime,
// O(1) per (u, p) afterwards). Deterministic for any thread count.
std::vector<std::complex<double>> prime_sum_grid(const PrimeSumSpec& spec,
                                                 const PhaseContext& ctx,
                                                 const PrimeTable& table,
                                                 std::span<const double> u_grid,
                                                 int threads = 1);

// Midpoint grid u_i = 1 + (i + 1/2)/M; dyadic when M is a power of two.
std::vector<double> midpoint_u_grid(std::size_t M);

struct ResidualMoment {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t samples_used = 0;
    std::size_t flagged = 0; // excluded: log determination failed at the draw
};

// Monte Carlo (1/T) int_T^{2T} |log zeta(1/2+it) - sum_{p<=x} p^{-it}/sqrt(p)|^{2n} dt.
// Draws are excluded (and counted) when the log determination fails; more
// than 1% exclusions aborts with integrity_error.
ResidualMoment residual_moment(double T, double x, int n, std::size_t samples,
                               std::uint64_t seed, const PrimeTable& table,
                               const ZeroScan& scan);

// sum_{p <= x} p^{-it}/sqrt(p) with double-double phase reduction; the
// Theorem-3 comparison sum (no 1/sqrt(log N) normalization).
std::complex<double> raw_prime_sum(const PrimeTable& table, double x, double t);

} // namespace dlab
