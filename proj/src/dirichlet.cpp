#include "disorderlab/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "disorderlab/dd.hpp"
#include "disorderlab/errors.hpp"
#include "disorderlab/rng.hpp"
#include "disorderlab/stats.hpp"

namespace dlab {

namespace {

void check_spec(const PrimeSumSpec& spec, const PhaseContext& ctx, const PrimeTable& table) {
    if (spec.N != ctx.N || spec.lambda != ctx.lambda)
        throw std::invalid_argument("prime_sum: phase context does not match (N, lambda)");
    if (spec.k < 1 || spec.n < 1)
        throw std::invalid_argument("prime_sum: k and n must be positive");
    const double cutoff = spec.cutoff();
    if (cutoff >= 2.0 && cutoff > static_cast<double>(table.bound()))
        throw std::out_of_range("prime_sum: cutoff " + std::to_string(cutoff) +
                                " exceeds table bound " + std::to_string(table.bound()));
}

void check_u(double u) {
    if (!(u >= 1.0 && u <= 2.0))
        throw std::domain_error("prime_sum: u must lie in [1,2]");
}

} // namespace

std::complex<double> prime_sum_P(const PrimeSumSpec& spec, const PhaseContext& ctx,
                                 const PrimeTable& table, double u) {
    check_spec(spec, ctx, table);
    check_u(u);
    const double cutoff = spec.cutoff();
    if (cutoff < 2.0) return {0.0, 0.0};

    CompensatedSum re, im;
    const auto& primes = table.primes();
    for (std::size_t i = 0; i < primes.size() && static_cast<double>(primes[i]) <= cutoff; ++i) {
        const double phi = reduce_phase(ctx, u, table.log_at(i));
        const double w = 1.0 / std::sqrt(static_cast<double>(primes[i]));
        re.add(std::cos(phi) * w);
        im.add(-std::sin(phi) * w);
    }
    const double norm = spec.normalization();
    return {norm * re.value(), norm * im.value()};
}

std::vector<std::complex<double>> prime_sum_grid(const PrimeSumSpec& spec,
                                                 const PhaseContext& ctx,
                                                 const PrimeTable& table,
                                                 std::span<const double> u_grid, int threads) {
    check_spec(spec, ctx, table);
    for (std::size_t i = 0; i < u_grid.size(); ++i) {
        check_u(u_grid[i]);
        if (i > 0 && !(u_grid[i] > u_grid[i - 1]))
            throw alignment_error("prime_sum_grid: u grid must be strictly increasing");
    }
    const double cutoff = spec.cutoff();
    std::vector<std::complex<double>> out(u_grid.size(), {0.0, 0.0});
    if (cutoff < 2.0 || u_grid.empty()) return out;

    const ReducedPhases red(ctx, table, static_cast<std::uint64_t>(cutoff));
    const double norm = spec.normalization();
    const std::size_t P = red.count();

    const auto eval_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t g = lo; g < hi; ++g) {
            const double u = u_grid[g];
            CompensatedSum re, im;
            for (std::size_t i = 0; i < P; ++i) {
                const double phi = red.phase(i, u);
                const double w = red.inv_sqrt(i);
                re.add(std::cos(phi) * w);
                im.add(-std::sin(phi) * w);
            }
            out[g] = {norm * re.value(), norm * im.value()};
        }
    };

    const int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(u_grid.size())));
    if (nthreads == 1) {
        eval_range(0, u_grid.size());
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int w = 0; w < nthreads; ++w) {
            const std::size_t lo = u_grid.size() * static_cast<std::size_t>(w) /
                                   static_cast<std::size_t>(nthreads);
            const std::size_t hi = u_grid.size() * static_cast<std::size_t>(w + 1) /
                                   static_cast<std::size_t>(nthreads);
            pool.emplace_back(eval_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

std::vector<double> midpoint_u_grid(std::size_t M) {
    if (M == 0) throw std::invalid_argument("midpoint_u_grid: M must be positive");
    std::vector<double> u(M);
    const double inv = 1.0 / static_cast<double>(M);
    for (std::size_t i = 0; i < M; ++i) u[i] = 1.0 + (static_cast<double>(i) + 0.5) * inv;
    return u;
}

// ---------------------------------------------------------------------------
// Residual moment
// ---------------------------------------------------------------------------

std::complex<double> raw_prime_sum(const PrimeTable& table, double x, double t) {
    if (x > static_cast<double>(table.bound()))
        throw std::out_of_range("raw_prime_sum: cutoff exceeds table bound");
    CompensatedSum re, im;
    const auto& primes = table.primes();
    for (std::size_t i = 0; i < primes.size() && static_cast<double>(primes[i]) <= x; ++i) {
        // t * ln p mod 2pi in double-double; t stays below ~1e6 here so the
        // 106-bit product keeps the phase well under 1e-9 absolute error.
        const BigFixed lp = table.log_at(i);
        const double lp_hi = lp.to_double();
        const double lp_lo = lp.sub(BigFixed::from_double(lp_hi, lp.frac_bits())).to_double();
        DD v = dd_mul_d({lp_hi, lp_lo}, t);
        const double k = std::floor(dd_value(v) / kTwoPiDD.hi);
        v = dd_sub(v, dd_mul_d(kTwoPiDD, k));
        while (dd_value(v) >= kTwoPiDD.hi) v = dd_sub(v, kTwoPiDD);
        while (dd_value(v) < 0.0) v = dd_add(v, kTwoPiDD);
        const double phi = dd_value(v);
        const double w = 1.0 / std::sqrt(static_cast<double>(primes[i]));
        re.add(std::cos(phi) * w);
        im.add(-std::sin(phi) * w);
    }
    return {re.value(), im.value()};
}

ResidualMoment residual_moment(double T, double x, int n, std::size_t samples,
                               std::uint64_t seed, const PrimeTable& table,
                               const ZeroScan& scan) {
    if (n < 1) throw std::invalid_argument("residual_moment: n must be >= 1");
    if (2.0 * T > scan.t_max)
        throw std::out_of_range("residual_moment: [T, 2T] exceeds the scan range");
    if (x > static_cast<double>(table.bound()))
        throw std::out_of_range("residual_moment: cutoff exceeds sieve bound");

    RunningStats stats;
    std::size_t flagged = 0;
    constexpr std::size_t kChunk = 1024;
    for (std::size_t c0 = 0, chunk = 0; c0 < samples; c0 += kChunk, ++chunk) {
        Rng rng(derive_seed(seed, "residual", chunk));
        const std::size_t hi = std::min(samples, c0 + kChunk);
        for (std::size_t i = c0; i < hi; ++i) {
            const double t = T * (1.0 + rng.next_double());
            std::complex<double> logz;
            try {
                logz = log_zeta_det(t, scan).log_zeta;
            } catch (const singularity_error&) {
                ++flagged;
                continue;
            }
            const std::complex<double> diff = logz - raw_prime_sum(table, x, t);
            stats.add(std::pow(std::norm(diff), n));
        }
    }
    if (flagged * 100 > samples)
        throw integrity_error("residual_moment: more than 1% of draws hit the zero guard (" +
                              std::to_string(flagged) + "/" + std::to_string(samples) + ")");
    ResidualMoment out;
    out.estimate = stats.mean();
    out.std_error = stats.std_error();
    out.samples_used = stats.count();
    out.flagged = flagged;
    return out;
}

} // namespace dlab
