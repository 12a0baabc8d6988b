#include "disorderlab/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "disorderlab/rng.hpp"
#include "disorderlab/stats.hpp"

namespace dlab {

void validate_moment_spec(const MomentSpec& spec) {
    const std::size_t k = spec.lambdas.size();
    if (k == 0) throw std::invalid_argument("MomentSpec: needs at least one scale");
    if (spec.m.size() != k || spec.n.size() != k)
        throw std::invalid_argument("MomentSpec: exponent lists must match scale count");
    for (std::size_t j = 0; j < k; ++j) {
        if (!(spec.lambdas[j] > 0.0))
            throw std::invalid_argument("MomentSpec: lambdas must be positive");
        if (j > 0 && !(spec.lambdas[j] < spec.lambdas[j - 1]))
            throw std::invalid_argument("MomentSpec: lambdas must be strictly decreasing");
        if (spec.m[j] < 0 || spec.m[j] > kMaxMomentExponent || spec.n[j] < 0 ||
            spec.n[j] > kMaxMomentExponent)
            throw std::invalid_argument("MomentSpec: exponents must lie in [0, " +
                                        std::to_string(kMaxMomentExponent) + "]");
    }
}

namespace {

// Exact integer factorial, converted once; n is capped well below overflow.
double factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return static_cast<double>(f);
}

} // namespace

double gaussian_mixed_moment(int m, int n, double sigma2) {
    if (m < 0 || n < 0) throw std::invalid_argument("gaussian_mixed_moment: negative exponent");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("gaussian_mixed_moment: sigma2 must be > 0");
    if (m != n) return 0.0;
    return factorial(n) * std::pow(2.0 * sigma2, n);
}

double target_tensor(const MomentSpec& spec) {
    validate_moment_spec(spec);
    double prod = 1.0;
    for (std::size_t j = 0; j < spec.scales(); ++j) {
        if (spec.m[j] != spec.n[j]) return 0.0;
        prod *= factorial(spec.n[j]) * std::pow(spec.lambdas[j], spec.n[j]);
    }
    return prod;
}

DisorderSample sample_disorder(const std::vector<double>& lambdas, std::size_t count,
                               std::uint64_t seed) {
    for (double l : lambdas)
        if (!(l > 0.0)) throw std::invalid_argument("sample_disorder: lambdas must be positive");
    if (count < 1) throw std::invalid_argument("sample_disorder: count must be >= 1");

    DisorderSample out;
    out.lambdas = lambdas;
    out.count = count;
    out.seed = seed;
    out.sampler = Rng::normal_sampler_name();
    const std::size_t k = lambdas.size();
    out.data.resize(count * k);

    std::vector<double> sigma(k);
    for (std::size_t j = 0; j < k; ++j) sigma[j] = std::sqrt(lambdas[j] / 2.0);

    // Fixed-size chunks with derived seeds: output does not depend on how
    // chunks are assigned to workers.
    constexpr std::size_t kChunk = 4096;
    for (std::size_t c0 = 0, chunk = 0; c0 < count; c0 += kChunk, ++chunk) {
        Rng rng(derive_seed(seed, "disorder", chunk));
        const std::size_t hi = std::min(count, c0 + kChunk);
        for (std::size_t i = c0; i < hi; ++i)
            for (std::size_t j = 0; j < k; ++j)
                out.data[i * k + j] = {sigma[j] * rng.next_normal(), sigma[j] * rng.next_normal()};
    }
    return out;
}

double rect_prob(const DisorderParams& params, const Rect& rect) {
    if (!(params.lambda > 0.0)) throw std::invalid_argument("rect_prob: lambda must be > 0");
    if (rect.re_lo > rect.re_hi || rect.im_lo > rect.im_hi)
        throw std::invalid_argument("rect_prob: rectangle sides must satisfy lo <= hi");
    const double sigma = std::sqrt(params.component_variance());
    const auto axis = [sigma](double lo, double hi) {
        const double plo = std::isinf(lo) && lo < 0 ? 0.0 : normal_cdf(lo / sigma);
        const double phi = std::isinf(hi) && hi > 0 ? 1.0 : normal_cdf(hi / sigma);
        return phi - plo;
    };
    return axis(rect.re_lo, rect.re_hi) * axis(rect.im_lo, rect.im_hi);
}

MgfCheck mgf_check(std::complex<double> alpha, std::complex<double> beta, double sigma2,
                   std::size_t count, std::uint64_t seed) {
    if (std::abs(alpha) > 1.0 || std::abs(beta) > 1.0)
        throw std::invalid_argument("mgf_check: |alpha|, |beta| must be <= 1");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("mgf_check: sigma2 must be > 0");

    const double sigma = std::sqrt(sigma2);
    RunningStats re, im;
    constexpr std::size_t kChunk = 4096;
    for (std::size_t c0 = 0, chunk = 0; c0 < count; c0 += kChunk, ++chunk) {
        Rng rng(derive_seed(seed, "mgf", chunk));
        const std::size_t hi = std::min(count, c0 + kChunk);
        for (std::size_t i = c0; i < hi; ++i) {
            const std::complex<double> z{sigma * rng.next_normal(), sigma * rng.next_normal()};
            const std::complex<double> v = std::exp(alpha * z + beta * std::conj(z));
            re.add(v.real());
            im.add(v.imag());
        }
    }
    MgfCheck out;
    out.empirical = {re.mean(), im.mean()};
    out.exact = std::exp(2.0 * alpha * beta * sigma2);
    out.std_error = std::max(re.std_error(), im.std_error());
    return out;
}

} // namespace dlab
