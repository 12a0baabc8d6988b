#pragma once

// Empirical joint mixed moments over u in [1,2], exact diagonal-term
// enumeration, the off-diagonal integer inequality, the Holder-step check,
// and indicator-probability estimation.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "disorderlab/disorder.hpp"
#include "disorderlab/primes.hpp"

namespace dlab {

enum class MomentMode { grid, random };

struct JointMomentEstimate {
    MomentSpec spec;
    std::complex<double> value;
    double std_error = 0.0;      // combined over re/im (jackknife in grid mode)
    double std_error_re = 0.0;
    double std_error_im = 0.0;
    std::size_t points = 0;      // M
    MomentMode mode = MomentMode::grid;
    double target = 0.0;         // limit value from target_tensor
    double finite_N_target = 0.0;// diagonal prediction at finite N (0 if not set)
};

inline constexpr std::size_t kJackknifeBlocks = 32;

// Quadrature (grid mode) of prod_j L_j^{m_j} conj(L_j)^{n_j} over the shared
// u-grid; the standard error comes from a 32-block jackknife. Sequences must
// be aligned (same length, one per scale).
JointMomentEstimate empirical_joint_moment(
    std::span<const std::vector<std::complex<double>>> samples, const MomentSpec& spec,
    MomentMode mode = MomentMode::grid);

// Finite-N diagonal prediction prod_j n_j! (S1(cutoff_j)/log N)^{n_j} with
// S1 the Mertens sum at the truncation cutoff exp(N^lambda_j / (40 k n_j)).
// Requires table.bound() >= every cutoff.
double finite_n_diagonal_prediction(const MomentSpec& spec, double N, const PrimeTable& table);

struct DiagonalResult {
    double cutoff = 0.0;
    int n = 0;
    double exact = 0.0;      // sum over D of 1/prod q
    double asymptotic = 0.0; // n! * (sum_{q<=cutoff} 1/q)^n
    double ratio = 0.0;      // exact / asymptotic
};

inline constexpr double kDiagonalEnumerationBudget = 1e8;

// Exact enumeration of the diagonal set: ordered prime 2n-tuples with equal
// products. Counting matching p-tuples per q-multiset is a permutation count,
// so the sum runs over multisets. Throws capacity_error when
// (#primes)^n exceeds the enumeration budget.
DiagonalResult diagonal_exact(const PrimeTable& table, double cutoff, int n);

struct DiagonalAsymptotic {
    double leading = 0.0;  // n! (lambda log N)^n
    double finite_N = 0.0; // n! (log(N^lambda) - log(40 k n))^n
    bool degenerate = false; // cutoff below 2
};

DiagonalAsymptotic diagonal_asymptotic(double lambda, double N, int n, int k);

struct OffdiagCheck {
    bool holds = false;
    std::uint64_t worst_m = 0;
    std::uint64_t worst_n = 0;
    double worst_slack = 0.0; // min over pairs of |log(m/n)| - 1/(2 min(m,n))
};

// Exhaustive check of |log(m/n)| > 1/(2 min(m,n)) for 1 <= m,n <= max_int.
OffdiagCheck offdiag_bound_check(std::uint64_t max_int);

struct HolderFactors {
    std::vector<double> A, B, C, D; // magnitudes on the shared grid
};
struct HolderExponents {
    double r = 2.0, s = 2.0, t = 2.0, u = 2.0; // 1/r+1/s = 1, 1/t+1/u = 1
};
struct HolderCheck {
    double lhs = 0.0;
    double rhs = 0.0;
};

// Grid version of the generalized Holder inequality used in the moment
// comparison: mean of prod |A||B||C||D| against the product of
// (2k r_j)-type norms. Throws on non-conjugate exponents.
HolderCheck holder_check(std::span<const HolderFactors> factors,
                         std::span<const HolderExponents> exponents);

struct IndicatorEstimate {
    double frequency = 0.0;
    double std_error = 0.0; // binomial
    std::size_t hits = 0;
    std::size_t points = 0;
};

// Fraction of u-points with every scale's sample inside its rectangle.
IndicatorEstimate indicator_prob(std::span<const std::vector<std::complex<double>>> samples,
                                 std::span<const Rect> rects);

} // namespace dlab
