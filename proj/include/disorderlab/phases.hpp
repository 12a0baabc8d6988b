#pragma once

// Reduction of u * e^(N^lambda) * ln p modulo 2*pi.
//
// e^(N^lambda) can be thousands of bits wide, so the product is formed in
// fixed-point multiprecision with explicit guard bits and only then reduced.
// For grid evaluation over many u the per-prime decomposition
//     e^(N^lambda) * ln p = 2*pi*k_p + R_p
// turns each (u, p) phase into integer arithmetic on k_p plus a double-double
// correction, since dyadic u = m/2^52 makes frac(u*k_p) exact.

#include <cstdint>
#include <vector>

#include "disorderlab/bigfixed.hpp"
#include "disorderlab/dd.hpp"
#include "disorderlab/primes.hpp"

namespace dlab {

struct PhaseContext {
    double N = 0.0;
    double lambda = 0.0;
    double exponent = 0.0;      // N^lambda, double approximation for diagnostics
    std::int64_t precision_bits = 0;
    std::int64_t guard_bits = 0;
    BigFixed big_scale;         // e^(N^lambda) at precision_bits fractional bits
    BigFixed two_pi;            // 2*pi at the same scale
};

inline constexpr double kDefaultExponentCap = 4000.0;
inline constexpr std::int64_t kDefaultGuardBits = 64;

// Throws capacity_error when N^lambda exceeds exponent_cap; e^(N^lambda)
// beyond ~4000 bits is outside desk scale.
PhaseContext make_phase_context(double N, double lambda,
                                std::int64_t guard_bits = kDefaultGuardBits,
                                double exponent_cap = kDefaultExponentCap);

// (u * big_scale * logp) mod 2*pi in [0, 2*pi). logp must carry at least
// ctx.precision_bits fractional bits (precision_error otherwise).
double reduce_phase(const PhaseContext& ctx, double u, const BigFixed& logp);

// Per-prime reduced decomposition against a PrimeTable, for fast grid
// evaluation. Agrees with reduce_phase to well below 1e-15.
class ReducedPhases {
public:
    ReducedPhases(const PhaseContext& ctx, const PrimeTable& table, std::uint64_t cutoff);

    std::size_t count() const { return k_mod_.size(); }
    std::uint64_t prime(std::size_t i) const { return primes_[i]; }
    double inv_sqrt(std::size_t i) const { return inv_sqrt_[i]; }

    // Phase for dyadic u in [1, 2] (every double in [1,2] qualifies).
    double phase(std::size_t i, double u) const {
        const auto m = static_cast<std::uint64_t>(u * 4503599627370496.0); // u * 2^52, exact
        const std::uint64_t q = (m * k_mod_[i]) & ((1ULL << 52) - 1);
        const double frac = static_cast<double>(q) * 0x1.0p-52;
        DD v = dd_mul_d(kTwoPiDD, frac);
        v = dd_add(v, dd_mul_d({r_hi_[i], r_lo_[i]}, u));
        while (dd_value(v) >= kTwoPiDD.hi) v = dd_sub(v, kTwoPiDD);
        if (dd_value(v) < 0.0) v = dd_add(v, kTwoPiDD);
        return dd_value(v);
    }

private:
    std::vector<std::uint64_t> primes_;
    std::vector<std::uint64_t> k_mod_; // k_p mod 2^64
    std::vector<double> r_hi_, r_lo_;  // R_p as double-double
    std::vector<double> inv_sqrt_;     // 1/sqrt(p)
};

} // namespace dlab
