#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "disorderlab/errors.hpp"

namespace dlab {

// Kahan–Neumaier compensated accumulator.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Streaming mean/variance (Welford).
class RunningStats {
public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double std_error() const { return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct MeanWithError {
    double mean = 0.0;
    double std_error = 0.0;
};

// Standard error of the mean of `values` by leave-one-block-out jackknife
// over `blocks` contiguous blocks. Used for smooth grid quadratures where
// neighbouring points are correlated through the integrand.
inline MeanWithError block_jackknife_mean(std::span<const double> values, std::size_t blocks) {
    if (values.size() < 2 * blocks || blocks < 2)
        throw alignment_error("block_jackknife_mean: need at least 2 points per block and 2 blocks");
    const std::size_t n = values.size();
    CompensatedSum total;
    for (double v : values) total.add(v);
    const double full_sum = total.value();
    const double full_mean = full_sum / static_cast<double>(n);

    std::vector<double> leave_out(blocks);
    std::size_t begin = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t end = (b + 1) * n / blocks;
        CompensatedSum blk;
        for (std::size_t i = begin; i < end; ++i) blk.add(values[i]);
        leave_out[b] = (full_sum - blk.value()) / static_cast<double>(n - (end - begin));
        begin = end;
    }
    double mean_lo = 0.0;
    for (double v : leave_out) mean_lo += v;
    mean_lo /= static_cast<double>(blocks);
    double ss = 0.0;
    for (double v : leave_out) ss += (v - mean_lo) * (v - mean_lo);
    const double bf = static_cast<double>(blocks);
    return {full_mean, std::sqrt((bf - 1.0) / bf * ss)};
}

// Two-sample Kolmogorov–Smirnov distance; both inputs get sorted in place.
inline double ks_distance(std::vector<double>& a, std::vector<double>& b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

// Phi(x): standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

} // namespace dlab
