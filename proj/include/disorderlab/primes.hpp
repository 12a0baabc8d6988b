#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "disorderlab/bigfixed.hpp"

namespace dlab {

// Primes up to a bound, with natural logs carried at a configurable binary
// precision. The logs are what phase reduction consumes: u * e^(N^lambda) * ln p
// is only as good as ln p, so the table precision must match the phase
// context that will use it. Immutable after construction.
class PrimeTable {
public:
    std::uint64_t bound() const { return bound_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    const std::vector<double>& reciprocals() const { return reciprocals_; }
    std::int64_t log_precision_bits() const { return log_frac_bits_; }
    std::size_t size() const { return primes_.size(); }

    // ln(primes()[i]) as a fixed-point value at log_precision_bits().
    BigFixed log_at(std::size_t i) const { return {log_mants_[i], log_frac_bits_}; }
    const BigInt& log_mant(std::size_t i) const { return log_mants_[i]; }

    friend PrimeTable sieve_upto(std::uint64_t bound, std::int64_t log_precision_bits,
                                 std::uint64_t memory_cap);
    friend PrimeTable load_prime_cache(const std::string& path);

private:
    std::uint64_t bound_ = 0;
    std::vector<std::uint64_t> primes_;
    std::vector<BigInt> log_mants_;
    std::int64_t log_frac_bits_ = 0;
    std::vector<double> reciprocals_;
};

inline constexpr std::uint64_t kDefaultSieveCap = 1'000'000'000ULL;
inline constexpr std::int64_t kDefaultLogBits = 256;

// Segmented sieve of Eratosthenes. Throws capacity_error when bound exceeds
// memory_cap.
PrimeTable sieve_upto(std::uint64_t bound, std::int64_t log_precision_bits = kDefaultLogBits,
                      std::uint64_t memory_cap = kDefaultSieveCap);

// sum_{p <= x} 1/p, compensated, ascending. Throws std::out_of_range when
// x exceeds the table bound.
double mertens_sum(const PrimeTable& table, double x);

// Mertens constant M: sum 1/p - log log x -> M.
inline constexpr double kMertensConstant = 0.26149721284764278;

// Binary cache ("PTBL1"); layout documented in docs/file-formats.md.
void write_prime_cache(const PrimeTable& table, const std::string& path);
PrimeTable load_prime_cache(const std::string& path);

} // namespace dlab
