#pragma once

// Exact side of the limit law: complex Gaussian mixed moments, the
// total-disorder target tensor, finite-dimensional disorder sampling, and
// rectangle probabilities. Everything here is a closed form or a seeded
// Monte Carlo against one.

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace dlab {

inline constexpr int kMaxMomentExponent = 6;

// (k; lambda_1 > ... > lambda_k > 0; m_1..m_k; n_1..n_k)
struct MomentSpec {
    std::vector<double> lambdas;
    std::vector<int> m;
    std::vector<int> n;

    std::size_t scales() const { return lambdas.size(); }
};

// Throws std::invalid_argument unless lambdas are strictly decreasing and
// positive and all exponents are in [0, kMaxMomentExponent].
void validate_moment_spec(const MomentSpec& spec);

struct DisorderParams {
    double lambda = 1.0;
    double component_variance() const { return lambda / 2.0; }
};

// Axis-aligned rectangle in C; +-infinity allowed.
struct Rect {
    double re_lo = -std::numeric_limits<double>::infinity();
    double re_hi = std::numeric_limits<double>::infinity();
    double im_lo = -std::numeric_limits<double>::infinity();
    double im_hi = std::numeric_limits<double>::infinity();

    static Rect quadrant_neg() { return {-std::numeric_limits<double>::infinity(), 0.0,
                                         -std::numeric_limits<double>::infinity(), 0.0}; }
    static Rect full_plane() { return {}; }
    bool contains(std::complex<double> z) const {
        return z.real() > re_lo && z.real() <= re_hi && z.imag() > im_lo && z.imag() <= im_hi;
    }
};

// E[Z^m conj(Z)^n] for Z = X + iY with X, Y iid N(0, sigma2):
// n! 2^n sigma2^n when m = n, else 0.
double gaussian_mixed_moment(int m, int n, double sigma2);

// prod_j n_j! lambda_j^{n_j} delta(m_j, n_j).
double target_tensor(const MomentSpec& spec);

// count independent draws of (D_{lambda_1}, ..., D_{lambda_k}); row-major
// count x k. Deterministic under seed and independent of any threading.
struct DisorderSample {
    std::vector<double> lambdas;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    std::string sampler;
    std::vector<std::complex<double>> data; // count * lambdas.size()

    std::complex<double> at(std::size_t draw, std::size_t scale) const {
        return data[draw * lambdas.size() + scale];
    }
};
DisorderSample sample_disorder(const std::vector<double>& lambdas, std::size_t count,
                               std::uint64_t seed);

// P{G in rect} for complex Gaussian with component variance lambda/2.
double rect_prob(const DisorderParams& params, const Rect& rect);

struct MgfCheck {
    std::complex<double> empirical;
    std::complex<double> exact;
    double std_error = 0.0; // per component, of the empirical mean
};

// Monte Carlo E[e^{alpha Z + beta conj(Z)}] against the closed form
// e^{2 alpha beta sigma2}. Requires |alpha|, |beta| <= 1.
MgfCheck mgf_check(std::complex<double> alpha, std::complex<double> beta, double sigma2,
                   std::size_t count, std::uint64_t seed);

} // namespace dlab
