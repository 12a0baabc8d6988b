#include "disorderlab/primes.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "disorderlab/errors.hpp"
#include "disorderlab/stats.hpp"

namespace dlab {

namespace {

// Round-to-nearest right shift for non-negative mantissas.
BigInt shr_round(BigInt v, std::int64_t bits) {
    if (bits <= 0) return v << (-bits);
    v += BigInt(1) << (bits - 1);
    return v >> bits;
}

std::vector<std::uint64_t> simple_sieve(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (std::uint64_t i = 2; i * i <= n; ++i)
        if (!comp[i])
            for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
    for (std::uint64_t i = 2; i <= n; ++i)
        if (!comp[i]) out.push_back(i);
    return out;
}

// ln of an integer v >= 2 as a sum of cached prime logs (factorization by
// trial division over the ascending prime list, which already contains every
// prime factor of v when v <= p+1 for the prime p being processed).
BigInt ln_of_integer(std::uint64_t v, const std::vector<std::uint64_t>& primes,
                     const std::vector<BigInt>& log_mants) {
    BigInt acc = 0;
    std::uint64_t rest = v;
    for (std::size_t i = 0; rest > 1; ++i) {
        const std::uint64_t p = primes[i];
        if (p * p > rest) {
            // rest itself is prime; binary-search its index
            const auto it = std::lower_bound(primes.begin(), primes.end(), rest);
            acc += log_mants[static_cast<std::size_t>(it - primes.begin())];
            break;
        }
        while (rest % p == 0) {
            rest /= p;
            acc += log_mants[i];
        }
    }
    return acc;
}

// Fills log_mants[i] = round(ln(primes[i]) * 2^F).
//
// ln 2 comes from the atanh series. For odd p the bootstrap identity
//   2 ln p = ln(p-1) + ln(p+1) + sum_{j>=1} 1/(j p^(2j))
// reduces everything to earlier primes plus a series that gains 2*log2(p)
// bits per term, so the whole table costs far less than a direct series per
// prime would.
void compute_logs(const std::vector<std::uint64_t>& primes, std::int64_t F,
                  std::vector<BigInt>& log_mants) {
    log_mants.clear();
    log_mants.reserve(primes.size());
    if (primes.empty()) return;

    const std::int64_t work = F + 16;
    const BigInt ln2_w = bf_ln2(work).mant();

    std::vector<BigInt> work_logs;
    work_logs.reserve(primes.size());

    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint64_t p = primes[i];
        if (p == 2) {
            work_logs.push_back(ln2_w);
        } else {
            BigInt sum = ln_of_integer(p - 1, primes, work_logs) +
                         ln_of_integer(p + 1, primes, work_logs);
            // series sum_j 1/(j p^(2j))
            const BigInt p2 = BigInt(p) * p;
            BigInt pw = (BigInt(1) << work) / p2;
            for (std::uint64_t j = 1;; ++j) {
                if (pw.is_zero()) break;
                sum += (j == 1) ? pw : pw / j;
                pw /= p2;
            }
            sum = shr_round(sum, 1);
            work_logs.push_back(std::move(sum));
        }
    }
    for (auto& m : work_logs) log_mants.push_back(shr_round(m, work - F));
}

} // namespace

PrimeTable sieve_upto(std::uint64_t bound, std::int64_t log_precision_bits,
                      std::uint64_t memory_cap) {
    if (bound > memory_cap)
        throw capacity_error("sieve_upto: bound " + std::to_string(bound) +
                             " exceeds configured memory cap " + std::to_string(memory_cap));
    PrimeTable t;
    t.bound_ = bound;
    t.log_frac_bits_ = log_precision_bits;

    if (bound >= 2) {
        const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(bound))) + 2;
        const std::vector<std::uint64_t> base = simple_sieve(root);

        constexpr std::uint64_t kSegment = 1u << 20;
        std::vector<bool> seg;
        for (std::uint64_t lo = 2; lo <= bound; lo += kSegment) {
            const std::uint64_t hi = std::min(bound, lo + kSegment - 1);
            seg.assign(hi - lo + 1, false);
            for (std::uint64_t p : base) {
                if (p * p > hi) break;
                std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
                for (std::uint64_t m = start; m <= hi; m += p) seg[m - lo] = true;
            }
            for (std::uint64_t v = lo; v <= hi; ++v)
                if (!seg[v - lo]) t.primes_.push_back(v);
        }
    }

    t.reciprocals_.reserve(t.primes_.size());
    for (std::uint64_t p : t.primes_) t.reciprocals_.push_back(1.0 / static_cast<double>(p));
    compute_logs(t.primes_, t.log_frac_bits_, t.log_mants_);
    return t;
}

double mertens_sum(const PrimeTable& table, double x) {
    if (x > static_cast<double>(table.bound()))
        throw std::out_of_range("mertens_sum: cutoff " + std::to_string(x) +
                                " exceeds table bound " + std::to_string(table.bound()));
    CompensatedSum s;
    const auto& primes = table.primes();
    const auto& recip = table.reciprocals();
    for (std::size_t i = 0; i < primes.size() && static_cast<double>(primes[i]) <= x; ++i)
        s.add(recip[i]);
    return s.value();
}

// ---------------------------------------------------------------------------
// PTBL1 cache
// ---------------------------------------------------------------------------

namespace {

void put_u64_le(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

void put_u32_le(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u32_be(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * (3 - i)));
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_i64_be(std::ostream& os, std::int64_t v) {
    const auto u = static_cast<std::uint64_t>(v);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * (7 - i)));
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64_le(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

std::uint32_t get_u32_le(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

std::uint32_t get_u32_be(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | b[i];
    return v;
}

std::int64_t get_i64_be(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | b[i];
    return static_cast<std::int64_t>(v);
}

constexpr char kMagic[5] = {'P', 'T', 'B', 'L', '1'};
constexpr unsigned char kVersion = 1;

} // namespace

void write_prime_cache(const PrimeTable& table, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_prime_cache: cannot open " + path);
    os.write(kMagic, 5);
    os.put(static_cast<char>(kVersion));
    put_u64_le(os, table.bound());
    put_u64_le(os, table.size());
    put_u32_le(os, static_cast<std::uint32_t>(table.log_precision_bits()));
    for (std::uint64_t p : table.primes()) put_u64_le(os, p);
    std::vector<unsigned char> bytes;
    for (std::size_t i = 0; i < table.size(); ++i) {
        // record: exponent (i64 BE), mantissa length (u32 BE), mantissa MSB-first
        put_i64_be(os, -table.log_precision_bits());
        bytes.clear();
        export_bits(table.log_mant(i), std::back_inserter(bytes), 8); // msb-first
        put_u32_be(os, static_cast<std::uint32_t>(bytes.size()));
        os.write(reinterpret_cast<const char*>(bytes.data()),
                 static_cast<std::streamsize>(bytes.size()));
    }
    if (!os) throw std::runtime_error("write_prime_cache: write failed for " + path);
}

PrimeTable load_prime_cache(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_prime_cache: cannot open " + path);
    char magic[5];
    is.read(magic, 5);
    if (!is || std::memcmp(magic, kMagic, 5) != 0)
        throw std::runtime_error("load_prime_cache: bad magic in " + path);
    const int version = is.get();
    if (version != kVersion)
        throw std::runtime_error("load_prime_cache: unsupported version " + std::to_string(version));

    PrimeTable t;
    t.bound_ = get_u64_le(is);
    const std::uint64_t count = get_u64_le(is);
    t.log_frac_bits_ = get_u32_le(is);
    t.primes_.resize(count);
    for (auto& p : t.primes_) p = get_u64_le(is);
    t.log_mants_.resize(count);
    std::vector<unsigned char> bytes;
    for (auto& m : t.log_mants_) {
        const std::int64_t expo = get_i64_be(is);
        if (expo != -t.log_frac_bits_)
            throw std::runtime_error("load_prime_cache: inconsistent log exponent");
        const std::uint32_t len = get_u32_be(is);
        bytes.resize(len);
        is.read(reinterpret_cast<char*>(bytes.data()), len);
        BigInt v;
        import_bits(v, bytes.begin(), bytes.end(), 8); // msb-first
        m = std::move(v);
    }
    if (!is) throw std::runtime_error("load_prime_cache: truncated file " + path);
    t.reciprocals_.reserve(count);
    for (std::uint64_t p : t.primes_) t.reciprocals_.push_back(1.0 / static_cast<double>(p));
    return t;
}

} // namespace dlab
