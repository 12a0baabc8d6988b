#include "disorderlab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "disorderlab/errors.hpp"
#include "disorderlab/stats.hpp"

namespace dlab {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::complex<double> ipow(std::complex<double> z, int e) {
    std::complex<double> r{1.0, 0.0};
    for (int i = 0; i < e; ++i) r *= z;
    return r;
}

} // namespace

JointMomentEstimate empirical_joint_moment(
    std::span<const std::vector<std::complex<double>>> samples, const MomentSpec& spec,
    MomentMode mode) {
    validate_moment_spec(spec);
    if (samples.size() != spec.scales())
        throw alignment_error("empirical_joint_moment: one sample sequence per scale required");
    const std::size_t M = samples.empty() ? 0 : samples[0].size();
    for (const auto& s : samples)
        if (s.size() != M)
            throw alignment_error("empirical_joint_moment: sample sequences must share the u-grid");
    if (M < 2) throw alignment_error("empirical_joint_moment: need at least 2 points");

    std::vector<double> re(M), im(M);
    for (std::size_t i = 0; i < M; ++i) {
        std::complex<double> prod{1.0, 0.0};
        for (std::size_t j = 0; j < spec.scales(); ++j) {
            const std::complex<double> z = samples[j][i];
            prod *= ipow(z, spec.m[j]) * ipow(std::conj(z), spec.n[j]);
        }
        re[i] = prod.real();
        im[i] = prod.imag();
    }

    JointMomentEstimate out;
    out.spec = spec;
    out.points = M;
    out.mode = mode;
    out.target = target_tensor(spec);
    if (mode == MomentMode::grid && M >= 2 * kJackknifeBlocks) {
        const auto mr = block_jackknife_mean(re, kJackknifeBlocks);
        const auto mi = block_jackknife_mean(im, kJackknifeBlocks);
        out.value = {mr.mean, mi.mean};
        out.std_error_re = mr.std_error;
        out.std_error_im = mi.std_error;
    } else {
        RunningStats sr, si;
        for (std::size_t i = 0; i < M; ++i) {
            sr.add(re[i]);
            si.add(im[i]);
        }
        out.value = {sr.mean(), si.mean()};
        out.std_error_re = sr.std_error();
        out.std_error_im = si.std_error();
    }
    out.std_error = std::hypot(out.std_error_re, out.std_error_im);
    return out;
}

double finite_n_diagonal_prediction(const MomentSpec& spec, double N, const PrimeTable& table) {
    validate_moment_spec(spec);
    const auto k = static_cast<double>(spec.scales());
    const double logN = std::log(N);
    double prod = 1.0;
    for (std::size_t j = 0; j < spec.scales(); ++j) {
        if (spec.m[j] != spec.n[j]) return 0.0;
        if (spec.n[j] == 0) continue;
        const double cutoff =
            std::exp(std::pow(N, spec.lambdas[j]) / (40.0 * k * spec.n[j]));
        const double s1 = cutoff < 2.0 ? 0.0 : mertens_sum(table, cutoff);
        prod *= factorial(spec.n[j]) * std::pow(s1 / logN, spec.n[j]);
    }
    return prod;
}

// ---------------------------------------------------------------------------
// Diagonal enumeration
// ---------------------------------------------------------------------------

namespace {

// Recursive walk over multisets {q_1 <= ... <= q_n} of primes <= cutoff.
// Each multiset contributes perm(multiset)^2 / prod(q) to the diagonal sum,
// where perm = n!/prod(mult_i!) counts the ordered q-tuples (and equally the
// matching p-tuples, by unique factorization).
struct DiagWalk {
    const std::vector<std::uint64_t>& primes;
    std::size_t nprimes;
    int n;
    CompensatedSum sum;

    void walk(std::size_t start, int depth, double inv_prod, double perm_denom, int run_len) {
        if (depth == n) {
            const double perm = factorial(n) / perm_denom;
            sum.add(perm * perm * inv_prod);
            return;
        }
        for (std::size_t i = start; i < nprimes; ++i) {
            const int rl = (depth > 0 && i == start) ? run_len + 1 : 1;
            // perm_denom tracks prod(mult!) incrementally via the run length.
            walk(i, depth + 1, inv_prod / static_cast<double>(primes[i]),
                 perm_denom * rl, rl);
        }
    }
};

} // namespace

DiagonalResult diagonal_exact(const PrimeTable& table, double cutoff, int n) {
    if (n < 1) throw std::invalid_argument("diagonal_exact: n must be >= 1");
    if (cutoff > static_cast<double>(table.bound()))
        throw std::out_of_range("diagonal_exact: cutoff exceeds table bound");
    const auto& primes = table.primes();
    std::size_t nprimes = 0;
    while (nprimes < primes.size() && static_cast<double>(primes[nprimes]) <= cutoff) ++nprimes;

    const double budget = std::pow(static_cast<double>(nprimes), n);
    if (budget > kDiagonalEnumerationBudget)
        throw capacity_error("diagonal_exact: " + std::to_string(nprimes) + "^" +
                             std::to_string(n) + " tuples exceed enumeration budget 1e8; "
                             "reduce the cutoff or n");

    DiagonalResult out;
    out.cutoff = cutoff;
    out.n = n;

    DiagWalk w{primes, nprimes, n, {}};
    if (nprimes > 0) w.walk(0, 0, 1.0, 1.0, 0);
    out.exact = w.sum.value();

    double s1 = 0.0;
    for (std::size_t i = 0; i < nprimes; ++i) s1 += 1.0 / static_cast<double>(primes[i]);
    out.asymptotic = factorial(n) * std::pow(s1, n);
    out.ratio = out.asymptotic > 0.0 ? out.exact / out.asymptotic : 0.0;
    return out;
}

DiagonalAsymptotic diagonal_asymptotic(double lambda, double N, int n, int k) {
    if (n < 0 || k < 1) throw std::invalid_argument("diagonal_asymptotic: need n >= 0, k >= 1");
    DiagonalAsymptotic out;
    if (n == 0) {
        out.leading = out.finite_N = 1.0;
        return out;
    }
    const double logN = std::log(N);
    const double exponent = lambda * logN; // log(N^lambda)
    const double offset = std::log(40.0 * k * n);
    out.leading = factorial(n) * std::pow(lambda * logN, n);
    // cutoff = exp(N^lambda/(40kn)) < 2 <=> log(N^lambda) - log(40kn) < log(log 2)
    if (exponent - offset < std::log(std::log(2.0))) {
        out.degenerate = true;
        out.finite_N = 0.0;
        return out;
    }
    out.finite_N = factorial(n) * std::pow(exponent - offset, n);
    return out;
}

OffdiagCheck offdiag_bound_check(std::uint64_t max_int) {
    if (max_int > 100000)
        throw capacity_error("offdiag_bound_check: max_int above exhaustive-scan cap 1e5");
    OffdiagCheck out;
    out.holds = true;
    out.worst_slack = std::numeric_limits<double>::infinity();
    std::vector<double> ln(max_int + 1, 0.0);
    for (std::uint64_t i = 1; i <= max_int; ++i) ln[i] = std::log(static_cast<double>(i));
    // |log(m/n)| is symmetric, so scan m < n with min(m,n) = m.
    for (std::uint64_t m = 1; m < max_int; ++m) {
        const double bound = 0.5 / static_cast<double>(m);
        const double lm = ln[m];
        for (std::uint64_t n = m + 1; n <= max_int; ++n) {
            const double slack = (ln[n] - lm) - bound;
            if (slack < out.worst_slack) {
                out.worst_slack = slack;
                out.worst_m = m;
                out.worst_n = n;
                if (slack <= 0.0) out.holds = false;
            }
        }
    }
    return out;
}

HolderCheck holder_check(std::span<const HolderFactors> factors,
                         std::span<const HolderExponents> exponents) {
    if (factors.size() != exponents.size() || factors.empty())
        throw alignment_error("holder_check: one exponent quadruple per scale required");
    const auto k = static_cast<double>(factors.size());
    const std::size_t M = factors[0].A.size();
    for (const auto& f : factors)
        if (f.A.size() != M || f.B.size() != M || f.C.size() != M || f.D.size() != M)
            throw alignment_error("holder_check: all sequences must share one grid");
    for (const auto& e : exponents) {
        if (!(e.r > 0 && e.s > 0 && e.t > 0 && e.u > 0) ||
            std::abs(1.0 / e.r + 1.0 / e.s - 1.0) > 1e-12 ||
            std::abs(1.0 / e.t + 1.0 / e.u - 1.0) > 1e-12)
            throw std::invalid_argument("holder_check: exponents must be positive conjugate pairs");
    }

    CompensatedSum lhs_sum;
    for (std::size_t i = 0; i < M; ++i) {
        double prod = 1.0;
        for (const auto& f : factors) prod *= f.A[i] * f.B[i] * f.C[i] * f.D[i];
        lhs_sum.add(prod);
    }

    const auto norm = [M](const std::vector<double>& v, double p) {
        CompensatedSum s;
        for (double x : v) s.add(std::pow(x, p));
        return std::pow(s.value() / static_cast<double>(M), 1.0 / p);
    };

    HolderCheck out;
    out.lhs = lhs_sum.value() / static_cast<double>(M);
    out.rhs = 1.0;
    for (std::size_t j = 0; j < factors.size(); ++j) {
        out.rhs *= norm(factors[j].A, 2.0 * k * exponents[j].r);
        out.rhs *= norm(factors[j].B, 2.0 * k * exponents[j].s);
        out.rhs *= norm(factors[j].C, 2.0 * k * exponents[j].t);
        out.rhs *= norm(factors[j].D, 2.0 * k * exponents[j].u);
    }
    return out;
}

IndicatorEstimate indicator_prob(std::span<const std::vector<std::complex<double>>> samples,
                                 std::span<const Rect> rects) {
    if (samples.size() != rects.size() || samples.empty())
        throw alignment_error("indicator_prob: one rectangle per scale required");
    const std::size_t M = samples[0].size();
    for (const auto& s : samples)
        if (s.size() != M) throw alignment_error("indicator_prob: sequences must share the grid");
    if (M == 0) throw alignment_error("indicator_prob: empty sample");

    std::size_t hits = 0;
    for (std::size_t i = 0; i < M; ++i) {
        bool all = true;
        for (std::size_t j = 0; j < samples.size() && all; ++j)
            all = rects[j].contains(samples[j][i]);
        hits += all ? 1 : 0;
    }
    IndicatorEstimate out;
    out.hits = hits;
    out.points = M;
    out.frequency = static_cast<double>(hits) / static_cast<double>(M);
    out.std_error =
        std::sqrt(std::max(out.frequency * (1.0 - out.frequency), 1.0 / static_cast<double>(M)) /
                  static_cast<double>(M));
    return out;
}

} // namespace dlab
