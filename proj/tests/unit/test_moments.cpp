#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "disorderlab/disorder.hpp"
#include "disorderlab/errors.hpp"
#include "disorderlab/moments.hpp"
#include "disorderlab/primes.hpp"
#include "disorderlab/rng.hpp"

using namespace dlab;

namespace {

// Exhaustive oracle for tiny diagonal cases: enumerate ordered p- and
// q-tuples directly and count equal products.
double diagonal_bruteforce(const std::vector<std::uint64_t>& primes, int n) {
    std::vector<std::size_t> pi(static_cast<std::size_t>(n), 0), qi(static_cast<std::size_t>(n), 0);
    const auto advance = [&](std::vector<std::size_t>& idx) {
        for (std::size_t d = 0; d < idx.size(); ++d) {
            if (++idx[d] < primes.size()) return true;
            idx[d] = 0;
        }
        return false;
    };
    double total = 0.0;
    do {
        std::uint64_t qprod = 1;
        for (auto i : qi) qprod *= primes[i];
        std::fill(pi.begin(), pi.end(), 0);
        do {
            std::uint64_t pprod = 1;
            for (auto i : pi) pprod *= primes[i];
            if (pprod == qprod) total += 1.0 / static_cast<double>(qprod);
        } while (advance(pi));
    } while (advance(qi));
    return total;
}

} // namespace

TEST_CASE("diagonal_exact small closed forms") {
    const PrimeTable t = sieve_upto(100, 64);
    CHECK(diagonal_exact(t, 3.0, 1).exact == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
    CHECK(diagonal_exact(t, 3.0, 2).exact == doctest::Approx(37.0 / 36.0).epsilon(1e-12));
    // 1.027778 = 1/4 + 4/6 + 1/9 from the tuple enumeration
    CHECK(diagonal_exact(t, 3.0, 2).exact == doctest::Approx(1.027778).epsilon(1e-6));
}

TEST_CASE("diagonal_exact equals the exhaustive tuple oracle") {
    const PrimeTable t = sieve_upto(100, 64);
    for (double cutoff : {3.0, 7.0, 13.0}) {
        std::vector<std::uint64_t> primes;
        for (std::uint64_t p : t.primes())
            if (static_cast<double>(p) <= cutoff) primes.push_back(p);
        for (int n = 1; n <= 3; ++n) {
            CHECK(diagonal_exact(t, cutoff, n).exact ==
                  doctest::Approx(diagonal_bruteforce(primes, n)).epsilon(1e-12));
        }
    }
}

TEST_CASE("diagonal identity 2 S1^2 - S2 and the asymptotic bound") {
    const PrimeTable t = sieve_upto(10000, 64);
    const DiagonalResult d = diagonal_exact(t, 1e4, 2);
    const double s1 = mertens_sum(t, 1e4);
    double s2 = 0.0;
    for (std::uint64_t p : t.primes()) s2 += 1.0 / (static_cast<double>(p) * static_cast<double>(p));
    CHECK(d.exact == doctest::Approx(2.0 * s1 * s1 - s2).epsilon(1e-11));
    CHECK(d.exact <= d.asymptotic);
    CHECK(d.ratio > 0.95);
    CHECK(d.ratio <= 1.0);
}

TEST_CASE("diagonal enumeration budget") {
    const PrimeTable t = sieve_upto(100000, 64);
    CHECK_THROWS_AS((void)diagonal_exact(t, 1e5, 3), capacity_error);
}

TEST_CASE("diagonal_asymptotic shapes") {
    const DiagonalAsymptotic d = diagonal_asymptotic(0.5, std::exp(10.0), 2, 1);
    CHECK(d.leading == doctest::Approx(50.0).epsilon(1e-12)); // 2! * 5^2
    CHECK_FALSE(d.degenerate);
    CHECK(diagonal_asymptotic(0.5, 100.0, 0, 1).finite_N == doctest::Approx(1.0));
    // tiny N^lambda: cutoff below 2
    const DiagonalAsymptotic deg = diagonal_asymptotic(0.1, 2.0, 2, 2);
    CHECK(deg.degenerate);
    CHECK(deg.finite_N == 0.0);
}

TEST_CASE("diagonal exact tracks n! (log cutoff)^n within the repeated-prime deficit") {
    const PrimeTable t = sieve_upto(10000, 64);
    const DiagonalResult d = diagonal_exact(t, 1e4, 2);
    // deficit about 3.7% at this cutoff
    CHECK(d.ratio == doctest::Approx(0.963).epsilon(0.01));
}

TEST_CASE("empirical_joint_moment: all-zero exponents integrate to exactly one") {
    std::vector<std::vector<std::complex<double>>> ones{
        std::vector<std::complex<double>>(256, {0.3, -0.7})};
    const JointMomentEstimate e = empirical_joint_moment(ones, {{0.5}, {0}, {0}});
    CHECK(e.value.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e.value.imag() == doctest::Approx(0.0));
    CHECK(e.target == doctest::Approx(1.0));
}

TEST_CASE("empirical joint moments of synthetic disorder match the tensor") {
    const std::vector<double> lambdas{1.0, 0.6};
    const std::size_t count = 400000;
    const DisorderSample s = sample_disorder(lambdas, count, 99);
    std::vector<std::vector<std::complex<double>>> seqs(2);
    for (std::size_t j = 0; j < 2; ++j) {
        seqs[j].resize(count);
        for (std::size_t i = 0; i < count; ++i) seqs[j][i] = s.at(i, j);
    }
    for (const auto& [mm, nn] : std::vector<std::pair<std::vector<int>, std::vector<int>>>{
             {{1, 1}, {1, 1}}, {{2, 1}, {2, 1}}, {{1, 0}, {1, 0}}, {{2, 1}, {1, 1}}}) {
        MomentSpec spec{lambdas, mm, nn};
        const JointMomentEstimate e = empirical_joint_moment(seqs, spec, MomentMode::random);
        const double target = target_tensor(spec);
        CHECK(std::abs(e.value.real() - target) < 3.5 * e.std_error_re + 1e-12);
        CHECK(std::abs(e.value.imag()) < 3.5 * e.std_error_im + 1e-12);

        // swapping every (m, n) pair conjugates the estimate
        MomentSpec swapped{lambdas, nn, mm};
        const JointMomentEstimate c = empirical_joint_moment(seqs, swapped, MomentMode::random);
        CHECK(c.value.real() == doctest::Approx(e.value.real()).epsilon(1e-12));
        CHECK(c.value.imag() == doctest::Approx(-e.value.imag()).epsilon(1e-12));
    }
}

TEST_CASE("alignment errors") {
    std::vector<std::vector<std::complex<double>>> bad{
        std::vector<std::complex<double>>(64, {1.0, 0.0}),
        std::vector<std::complex<double>>(65, {1.0, 0.0})};
    CHECK_THROWS_AS((void)empirical_joint_moment(bad, {{0.9, 0.3}, {1, 1}, {1, 1}}),
                    alignment_error);
}

TEST_CASE("offdiag bound: instances and exhaustive scan to 1e4") {
    CHECK(std::abs(std::log(2.0 / 3.0)) > 0.25);
    CHECK(std::abs(std::log(1.0 / 2.0)) > 0.5);
    const OffdiagCheck c = offdiag_bound_check(10000);
    CHECK(c.holds);
    CHECK(c.worst_slack > 0.0);
    // worst slack at consecutive integers near the top of the range
    CHECK(c.worst_n == c.worst_m + 1);
    // tightness factor approaches 2: |log(1+1/m)| ~ 1/m vs bound 1/(2m)
    const double ratio = std::log(1.0 + 1.0 / static_cast<double>(c.worst_m)) *
                         (2.0 * static_cast<double>(c.worst_m));
    CHECK(ratio > 1.9);
    CHECK(ratio < 2.1);
}

TEST_CASE("holder inequality: equality case, power-mean case, random instances") {
    const std::size_t M = 128;
    std::vector<HolderFactors> ones(2);
    std::vector<HolderExponents> exps(2);
    for (auto& f : ones) {
        f.A.assign(M, 1.0);
        f.B.assign(M, 1.0);
        f.C.assign(M, 1.0);
        f.D.assign(M, 1.0);
    }
    const HolderCheck eq = holder_check(ones, exps);
    CHECK(eq.lhs == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eq.rhs == doctest::Approx(1.0).epsilon(1e-14));

    // single nonconstant factor: reduces to a power-mean inequality
    auto factors = ones;
    Rng rng(3);
    for (auto& x : factors[0].A) x = 0.2 + rng.next_double();
    const HolderCheck pm = holder_check(factors, exps);
    CHECK(pm.lhs <= pm.rhs * (1.0 + 1e-12));

    // 100 random positive instances
    for (int inst = 0; inst < 100; ++inst) {
        std::vector<HolderFactors> f(2);
        std::vector<HolderExponents> e(2);
        for (std::size_t j = 0; j < 2; ++j) {
            auto fill = [&](std::vector<double>& v) {
                v.resize(M);
                for (auto& x : v) x = std::exp(rng.next_normal());
            };
            fill(f[j].A);
            fill(f[j].B);
            fill(f[j].C);
            fill(f[j].D);
            const double r = 1.05 + 3.0 * rng.next_double();
            const double t = 1.05 + 3.0 * rng.next_double();
            e[j] = {r, r / (r - 1.0), t, t / (t - 1.0)};
        }
        const HolderCheck h = holder_check(f, e);
        CHECK(h.lhs <= h.rhs * (1.0 + 1e-12));
    }

    // non-conjugate exponents rejected
    std::vector<HolderExponents> badexp(2);
    badexp[0] = {2.0, 3.0, 2.0, 2.0};
    CHECK_THROWS_AS((void)holder_check(ones, badexp), std::invalid_argument);
}

TEST_CASE("indicator_prob basics and monotonicity") {
    const DisorderSample s = sample_disorder({0.5}, 100000, 12);
    std::vector<std::vector<std::complex<double>>> seqs(1);
    seqs[0].resize(s.count);
    for (std::size_t i = 0; i < s.count; ++i) seqs[0][i] = s.at(i, 0);

    std::vector<Rect> full{Rect::full_plane()};
    CHECK(indicator_prob(seqs, full).frequency == doctest::Approx(1.0));

    std::vector<Rect> quad{Rect::quadrant_neg()};
    const IndicatorEstimate q = indicator_prob(seqs, quad);
    CHECK(std::abs(q.frequency - 0.25) < 3.0 * q.std_error);

    // monotone under rectangle inclusion
    std::vector<Rect> small{{-0.5, 0.0, -0.5, 0.0}};
    CHECK(indicator_prob(seqs, small).frequency <= q.frequency);

    std::vector<Rect> two{Rect::quadrant_neg(), Rect::quadrant_neg()};
    CHECK_THROWS_AS((void)indicator_prob(seqs, two), alignment_error);
}

TEST_CASE("finite_n_diagonal_prediction hooks the truncation cutoff to mertens_sum") {
    const PrimeTable t = sieve_upto(200000, 64);
    // N = 800, lambda = 1, k = 1, n = 1: cutoff = exp(800/40) = e^20 too big;
    // use N = 400: cutoff = e^10 = 22026
    MomentSpec spec{{1.0}, {1}, {1}};
    const double pred = finite_n_diagonal_prediction(spec, 400.0, t);
    const double cutoff = std::exp(400.0 / 40.0);
    CHECK(pred == doctest::Approx(mertens_sum(t, cutoff) / std::log(400.0)).epsilon(1e-14));
    // m != n always predicts zero
    CHECK(finite_n_diagonal_prediction({{1.0}, {2}, {1}}, 400.0, t) == 0.0);
}
