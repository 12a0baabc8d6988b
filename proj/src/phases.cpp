#include "disorderlab/phases.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "disorderlab/errors.hpp"

namespace dlab {

PhaseContext make_phase_context(double N, double lambda, std::int64_t guard_bits,
                                double exponent_cap) {
    if (!(N > 1.0) || !(lambda > 0.0))
        throw std::domain_error("make_phase_context: need N > 1 and lambda > 0");
    if (guard_bits < 8) throw std::domain_error("make_phase_context: guard_bits < 8");

    const double exponent_est = std::pow(N, lambda);
    if (exponent_est > exponent_cap)
        throw capacity_error("make_phase_context: N^lambda = " + std::to_string(exponent_est) +
                             " exceeds exponent cap " + std::to_string(exponent_cap));

    PhaseContext ctx;
    ctx.N = N;
    ctx.lambda = lambda;
    ctx.guard_bits = guard_bits;

    // Bits of e^x plus guard, with slack for the elementary-function steps.
    const std::int64_t P =
        static_cast<std::int64_t>(std::ceil(exponent_est / std::log(2.0))) + guard_bits + 32;
    ctx.precision_bits = P;

    // Intermediates carry 64 extra bits so the double exponentiation still
    // rounds to ~1 ulp at P.
    const std::int64_t W = P + 64;
    const BigFixed lnN = bf_ln(BigFixed::from_double(N, W), W);
    const BigFixed n_lambda = bf_exp(lnN.mul_exact_double(lambda), W); // N^lambda
    ctx.exponent = n_lambda.to_double();
    ctx.big_scale = bf_exp(n_lambda, W).rescale(P);
    ctx.two_pi = bf_two_pi(P);
    return ctx;
}

double reduce_phase(const PhaseContext& ctx, double u, const BigFixed& logp) {
    if (logp.mant() <= 0) throw std::domain_error("reduce_phase: logp must be positive");
    if (logp.frac_bits() < ctx.precision_bits)
        throw precision_error("reduce_phase: logp carries " + std::to_string(logp.frac_bits()) +
                              " fractional bits, context needs " +
                              std::to_string(ctx.precision_bits));
    const BigFixed lp = logp.rescale(ctx.precision_bits);
    const BigFixed y = ctx.big_scale.mul(lp).mul_exact_double(u);
    return bf_mod(y, ctx.two_pi).to_double();
}

ReducedPhases::ReducedPhases(const PhaseContext& ctx, const PrimeTable& table,
                             std::uint64_t cutoff) {
    if (cutoff > table.bound())
        throw std::out_of_range("ReducedPhases: cutoff " + std::to_string(cutoff) +
                                " exceeds table bound " + std::to_string(table.bound()));
    if (table.log_precision_bits() < ctx.precision_bits)
        throw precision_error("ReducedPhases: table logs at " +
                              std::to_string(table.log_precision_bits()) +
                              " bits, context needs " + std::to_string(ctx.precision_bits));
    const std::int64_t P = ctx.precision_bits;
    const auto& primes = table.primes();
    std::size_t n = 0;
    while (n < primes.size() && primes[n] <= cutoff) ++n;
    primes_.assign(primes.begin(), primes.begin() + static_cast<std::ptrdiff_t>(n));
    k_mod_.resize(n);
    r_hi_.resize(n);
    r_lo_.resize(n);
    inv_sqrt_.resize(n);

    const std::uint64_t mask = ~0ULL;
    for (std::size_t i = 0; i < n; ++i) {
        const BigFixed lp = table.log_at(i).rescale(P);
        const BigFixed x = ctx.big_scale.mul(lp);
        auto qr = bf_divmod(x, ctx.two_pi);
        k_mod_[i] = static_cast<std::uint64_t>(qr.quotient & mask);
        // top ~106 bits of the remainder as a double-double
        const double hi = qr.remainder.to_double();
        const BigFixed hi_f = BigFixed::from_double(hi, P);
        const double lo = qr.remainder.sub(hi_f).to_double();
        r_hi_[i] = hi;
        r_lo_[i] = lo;
        inv_sqrt_[i] = 1.0 / std::sqrt(static_cast<double>(primes_[i]));
    }
}

} // namespace dlab
