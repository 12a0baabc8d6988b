#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "disorderlab/dirichlet.hpp"
#include "disorderlab/errors.hpp"

using namespace dlab;

namespace {

struct SmallSetup {
    PhaseContext ctx;
    PrimeTable table;
    SmallSetup(double N, double lambda, std::uint64_t bound)
        : ctx(make_phase_context(N, lambda)), table(sieve_upto(bound, ctx.precision_bits)) {}
};

} // namespace

TEST_CASE("cutoff formula matches the exponent-dependent truncation") {
    const PrimeSumSpec s{2000.0, 0.6, 2, 1};
    CHECK(s.cutoff() ==
          doctest::Approx(std::exp(std::pow(2000.0, 0.6) / 80.0)).epsilon(1e-15));
    CHECK(s.normalization() == doctest::Approx(1.0 / std::sqrt(std::log(2000.0))).epsilon(1e-15));
}

TEST_CASE("empty sum below the first prime") {
    // N^lambda small enough that exp(N^lambda/40) < 2
    SmallSetup su(5.0, 1.0, 100);
    const PrimeSumSpec spec{5.0, 1.0, 1, 1}; // cutoff = exp(0.125) = 1.13
    CHECK(spec.cutoff() < 2.0);
    CHECK(prime_sum_P(spec, su.ctx, su.table, 1.5) == std::complex<double>{0.0, 0.0});
}

TEST_CASE("single-prime case evaluates the lone term") {
    // cutoff in [2,3): N = 120, lambda = 1, k = 1, n = 1 -> exp(3) = 20; pick
    // N so that exp(N/40) lies in [2,3): N = 40*log(2.5) = 36.65
    const double N = 40.0 * std::log(2.5);
    SmallSetup su(N, 1.0, 100);
    const PrimeSumSpec spec{N, 1.0, 1, 1};
    REQUIRE(spec.cutoff() >= 2.0);
    REQUIRE(spec.cutoff() < 3.0);
    const double u = 1.375;
    const double phi = reduce_phase(su.ctx, u, su.table.log_at(0));
    const std::complex<double> expect =
        spec.normalization() / std::sqrt(2.0) * std::complex<double>(std::cos(phi), -std::sin(phi));
    const std::complex<double> got = prime_sum_P(spec, su.ctx, su.table, u);
    CHECK(got.real() == doctest::Approx(expect.real()).epsilon(1e-13));
    CHECK(got.imag() == doctest::Approx(expect.imag()).epsilon(1e-13));
}

TEST_CASE("triangle inequality bound") {
    SmallSetup su(300.0, 1.0, 2000);
    const PrimeSumSpec spec{300.0, 1.0, 1, 1}; // cutoff = exp(7.5) = 1808
    double bound = 0.0;
    for (std::uint64_t p : su.table.primes())
        if (static_cast<double>(p) <= spec.cutoff()) bound += 1.0 / std::sqrt(static_cast<double>(p));
    bound *= spec.normalization();
    for (double u : {1.0, 1.3125, 1.875, 2.0})
        CHECK(std::abs(prime_sum_P(spec, su.ctx, su.table, u)) <= bound);
}

TEST_CASE("conjugation: negated phases conjugate the sum") {
    SmallSetup su(200.0, 1.0, 200);
    const PrimeSumSpec spec{200.0, 1.0, 1, 1}; // cutoff = exp(5) = 148
    const double u = 1.6875;
    const std::complex<double> v = prime_sum_P(spec, su.ctx, su.table, u);
    // recompute with phases negated
    std::complex<double> conj_sum{0.0, 0.0};
    for (std::size_t i = 0;
         i < su.table.size() && static_cast<double>(su.table.primes()[i]) <= spec.cutoff(); ++i) {
        const double phi = reduce_phase(su.ctx, u, su.table.log_at(i));
        conj_sum += std::complex<double>(std::cos(phi), std::sin(phi)) /
                    std::sqrt(static_cast<double>(su.table.primes()[i]));
    }
    conj_sum *= spec.normalization();
    CHECK(conj_sum.real() == doctest::Approx(std::conj(v).real()).epsilon(1e-13));
    CHECK(conj_sum.imag() == doctest::Approx(std::conj(v).imag()).epsilon(1e-13));
}

TEST_CASE("partial sums are Cauchy-like: increments bounded by the tail") {
    SmallSetup su(280.0, 1.0, 1200);
    const double u = 1.5;
    // enlarging the cutoff only appends terms
    std::complex<double> prev{0.0, 0.0};
    double prev_cut = 0.0;
    for (double cut : {10.0, 100.0, 1000.0}) {
        std::complex<double> acc{0.0, 0.0};
        double tail = 0.0;
        for (std::size_t i = 0; i < su.table.size(); ++i) {
            const double p = static_cast<double>(su.table.primes()[i]);
            if (p > cut) break;
            const double phi = reduce_phase(su.ctx, u, su.table.log_at(i));
            acc += std::complex<double>(std::cos(phi), -std::sin(phi)) / std::sqrt(p);
            if (p > prev_cut) tail += 1.0 / std::sqrt(p);
        }
        CHECK(std::abs(acc - prev) <= tail + 1e-12);
        prev = acc;
        prev_cut = cut;
    }
}

TEST_CASE("grid evaluation matches pointwise evaluation and is deterministic") {
    SmallSetup su(280.0, 1.0, 1200);
    const PrimeSumSpec spec{280.0, 1.0, 1, 1}; // cutoff = exp(7) = 1096
    const std::vector<double> grid = midpoint_u_grid(64);
    const auto vals = prime_sum_grid(spec, su.ctx, su.table, grid);
    REQUIRE(vals.size() == 64);
    for (std::size_t g : {std::size_t(0), std::size_t(17), std::size_t(63)}) {
        const std::complex<double> direct = prime_sum_P(spec, su.ctx, su.table, grid[g]);
        CHECK(std::abs(vals[g] - direct) < 1e-12);
    }
    // single-point grid consistency
    const std::vector<double> one{1.5};
    CHECK(std::abs(prime_sum_grid(spec, su.ctx, su.table, one)[0] -
                   prime_sum_P(spec, su.ctx, su.table, 1.5)) < 1e-12);
    // determinism across repeated runs and thread counts
    const auto again = prime_sum_grid(spec, su.ctx, su.table, grid);
    const auto threaded = prime_sum_grid(spec, su.ctx, su.table, grid, 3);
    for (std::size_t g = 0; g < 64; ++g) {
        CHECK(vals[g] == again[g]);
        CHECK(vals[g] == threaded[g]);
    }
}

TEST_CASE("grid ordering and range contracts") {
    SmallSetup su(280.0, 1.0, 1200);
    const PrimeSumSpec spec{280.0, 1.0, 1, 1};
    std::vector<double> dup{1.25, 1.25};
    CHECK_THROWS_AS((void)prime_sum_grid(spec, su.ctx, su.table, dup), alignment_error);
    std::vector<double> rev{1.5, 1.25};
    CHECK_THROWS_AS((void)prime_sum_grid(spec, su.ctx, su.table, rev), alignment_error);
    std::vector<double> oor{0.5};
    CHECK_THROWS_AS((void)prime_sum_grid(spec, su.ctx, su.table, oor), std::domain_error);
}

TEST_CASE("table too small raises out_of_range") {
    SmallSetup su(300.0, 1.0, 100); // cutoff = exp(7.5) = 1808 > 100
    const PrimeSumSpec spec{300.0, 1.0, 1, 1};
    CHECK_THROWS_AS((void)prime_sum_P(spec, su.ctx, su.table, 1.5), std::out_of_range);
}

TEST_CASE("context mismatch is rejected") {
    SmallSetup su(200.0, 1.0, 200);
    const PrimeSumSpec spec{210.0, 1.0, 1, 1};
    CHECK_THROWS_AS((void)prime_sum_P(spec, su.ctx, su.table, 1.5), std::invalid_argument);
}

TEST_CASE("residual of the prime sum against itself is zero") {
    // synthetic: replace log zeta by the prime sum itself; the integrand is
    // identically zero, so the Monte Carlo moment is exactly zero
    const PrimeTable table = sieve_upto(1000, 96);
    const double T = 200.0;
    double worst = 0.0;
    for (double t : {T, 1.3 * T, 1.9 * T}) {
        const std::complex<double> a = raw_prime_sum(table, 100.0, t);
        const std::complex<double> b = raw_prime_sum(table, 100.0, t);
        worst = std::max(worst, std::abs(a - b));
    }
    CHECK(worst == 0.0);
}

TEST_CASE("residual_moment decreases with cutoff at desk height") {
    const PrimeTable table = sieve_upto(10000, 96);
    const ZeroScan scan = zero_count_scan(2500.0, 4.0);
    const double T = 1000.0;
    double prev = 1e18;
    for (double x : {100.0, 1000.0, 10000.0}) {
        const ResidualMoment r = residual_moment(T, x, 1, 400, 17, table, scan);
        CHECK(r.estimate >= 0.0);
        CHECK(r.estimate < prev);
        prev = r.estimate;
    }
}

TEST_CASE("residual_moment respects the scan range") {
    const PrimeTable table = sieve_upto(100, 96);
    const ZeroScan scan = zero_count_scan(500.0, 4.0);
    CHECK_THROWS_AS((void)residual_moment(400.0, 50.0, 1, 10, 1, table, scan),
                    std::out_of_range);
}
