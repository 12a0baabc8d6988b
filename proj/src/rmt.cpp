#include "disorderlab/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "disorderlab/errors.hpp"
#include "disorderlab/rng.hpp"
#include "disorderlab/stats.hpp"

namespace dlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a <= -kPi) a += kTwoPi;
    if (a > kPi) a -= kTwoPi;
    return a;
}

// Single Metropolis chain over the eigenangle density. The acceptance ratio
// for moving angle i uses 1 - cos(d) = |e^{ia} - e^{ib}|^2 / 2 through cached
// cos/sin arrays, so the inner loop has no transcendentals.
class CueChain {
public:
    CueChain(int N, std::uint64_t seed) : n_(N), rng_(seed) {
        angles_.resize(n_);
        cc_.resize(n_);
        ss_.resize(n_);
        // spread start plus jitter: close to a typical configuration
        for (int i = 0; i < n_; ++i)
            angles_[i] = wrap_angle(-kPi + kTwoPi * (i + 0.5) / n_ +
                                    0.1 * kTwoPi / n_ * (2.0 * rng_.next_double() - 1.0));
        sync_trig();
        width_ = kTwoPi / n_; // order of the mean gap
    }

    // One systematic sweep; returns the number of accepted moves.
    int sweep() {
        int accepted = 0;
        for (int i = 0; i < n_; ++i) {
            const double prop = wrap_angle(angles_[i] + width_ * (2.0 * rng_.next_double() - 1.0));
            const double cp = std::cos(prop), sp = std::sin(prop);
            const double ci = cc_[i], si = ss_[i];
            double num = 1.0, den = 1.0;
            for (int j = 0; j < i; ++j) {
                num *= 1.0 - (cp * cc_[j] + sp * ss_[j]);
                den *= 1.0 - (ci * cc_[j] + si * ss_[j]);
            }
            for (int j = i + 1; j < n_; ++j) {
                num *= 1.0 - (cp * cc_[j] + sp * ss_[j]);
                den *= 1.0 - (ci * cc_[j] + si * ss_[j]);
            }
            if (den <= 0.0 || !std::isfinite(num / den)) {
                // Underflow or landed exactly on another angle: recompute in logs.
                if (!accept_log(i, prop)) continue;
            } else if (num < den && rng_.next_double() * den >= num) {
                continue;
            }
            angles_[i] = prop;
            cc_[i] = cp;
            ss_[i] = sp;
            ++accepted;
        }
        return accepted;
    }

    void tune(double rate) {
        // push the acceptance rate toward 0.4
        width_ *= std::exp(0.5 * (rate - 0.4));
        width_ = std::clamp(width_, 1e-4 * kTwoPi / n_, kPi);
    }

    const std::vector<double>& angles() const { return angles_; }
    double width() const { return width_; }
    int size() const { return n_; }

private:
    bool accept_log(int i, double prop) {
        double lognum = 0.0, logden = 0.0;
        for (int j = 0; j < n_; ++j) {
            if (j == i) continue;
            const double dn = 1.0 - std::cos(prop - angles_[j]);
            const double dd = 1.0 - std::cos(angles_[i] - angles_[j]);
            if (dn <= 0.0) return false;
            lognum += std::log(dn);
            logden += std::log(dd);
        }
        const double logr = lognum - logden;
        return logr >= 0.0 || std::log(rng_.next_double_pos()) < logr;
    }

    void sync_trig() {
        for (int i = 0; i < n_; ++i) {
            cc_[i] = std::cos(angles_[i]);
            ss_[i] = std::sin(angles_[i]);
        }
    }

    int n_;
    Rng rng_;
    std::vector<double> angles_, cc_, ss_;
    double width_ = 0.0;
};

std::vector<double> rejection_draw(int N, Rng& rng) {
    // density prod_{j<k} 2(1 - cos(d_jk)); bound 4 for N=2, 27 for N=3
    const double bound = (N == 3) ? 27.0 : (N == 2 ? 4.0 : 1.0);
    std::vector<double> a(static_cast<std::size_t>(N));
    for (;;) {
        for (auto& x : a) x = -kPi + kTwoPi * rng.next_double();
        double w = 1.0;
        for (int j = 0; j < N; ++j)
            for (int k = j + 1; k < N; ++k) w *= 2.0 * (1.0 - std::cos(a[j] - a[k]));
        if (rng.next_double() * bound < w) return a;
    }
}

constexpr std::size_t kSamplesPerChain = 512;

} // namespace

std::vector<EigenangleSample> sample_cue(int N, std::size_t count, std::uint64_t seed,
                                         CueSampler sampler) {
    if (N < 1 || N > kCueMaxDimension)
        throw capacity_error("sample_cue: N must lie in [1, " +
                             std::to_string(kCueMaxDimension) + "]");
    if (count < 1) throw std::invalid_argument("sample_cue: count must be >= 1");

    std::vector<EigenangleSample> out;
    out.reserve(count);

    if (sampler == CueSampler::rejection) {
        if (N > 3)
            throw std::invalid_argument("sample_cue: rejection sampler supports N <= 3 only");
        for (std::size_t c0 = 0, chunk = 0; c0 < count; c0 += kSamplesPerChain, ++chunk) {
            Rng rng(derive_seed(seed, "cue-rejection", chunk));
            const std::size_t hi = std::min(count, c0 + kSamplesPerChain);
            for (std::size_t i = c0; i < hi; ++i) {
                EigenangleSample s;
                s.N = N;
                s.sampler = CueSampler::rejection;
                s.seed = seed;
                s.angles = rejection_draw(N, rng);
                std::sort(s.angles.begin(), s.angles.end());
                out.push_back(std::move(s));
            }
        }
        return out;
    }

    if (N == 1) {
        // Haar on U(1): a single uniform angle
        for (std::size_t c0 = 0, chunk = 0; c0 < count; c0 += kSamplesPerChain, ++chunk) {
            Rng rng(derive_seed(seed, "cue-metropolis", chunk));
            const std::size_t hi = std::min(count, c0 + kSamplesPerChain);
            for (std::size_t i = c0; i < hi; ++i) {
                EigenangleSample s;
                s.N = 1;
                s.sampler = CueSampler::metropolis;
                s.seed = seed;
                s.angles = {-kPi + kTwoPi * rng.next_double()};
                out.push_back(std::move(s));
            }
        }
        return out;
    }

    const int burn_in = 50 * N;
    const int thinning = N;

    for (std::size_t c0 = 0, chunk = 0; c0 < count; c0 += kSamplesPerChain, ++chunk) {
        const std::size_t chain_count = std::min(count, c0 + kSamplesPerChain) - c0;
        CueChain chain(N, derive_seed(seed, "cue-metropolis", chunk));

        // first half of burn-in adapts the width, second half runs frozen
        const int adapt = burn_in / 2;
        int acc_window = 0;
        for (int sw = 0; sw < adapt; ++sw) {
            acc_window += chain.sweep();
            if ((sw + 1) % 16 == 0) {
                chain.tune(static_cast<double>(acc_window) / (16.0 * N));
                acc_window = 0;
            }
        }
        long long accepted = 0, attempted = 0;
        for (int sw = adapt; sw < burn_in; ++sw) {
            accepted += chain.sweep();
            attempted += N;
        }

        for (std::size_t i = 0; i < chain_count; ++i) {
            for (int sw = 0; sw < thinning; ++sw) {
                accepted += chain.sweep();
                attempted += N;
            }
            EigenangleSample s;
            s.N = N;
            s.sampler = CueSampler::metropolis;
            s.seed = seed;
            s.burn_in_sweeps = burn_in;
            s.thinning = thinning;
            s.proposal_width = chain.width();
            s.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(attempted);
            s.angles = chain.angles();
            std::sort(s.angles.begin(), s.angles.end());
            out.push_back(std::move(s));
        }
        const double rate = out.back().acceptance_rate;
        if (rate < 0.1 || rate > 0.9)
            throw calibration_error("sample_cue: Metropolis acceptance rate " +
                                    std::to_string(rate) + " outside [0.1, 0.9] after tuning");
    }
    return out;
}

std::complex<double> log_char_poly(const EigenangleSample& sample, double theta) {
    CompensatedSum re, im;
    for (double a : sample.angles) {
        double phi = a - theta;
        phi -= kTwoPi * std::floor(phi / kTwoPi); // into [0, 2pi)
        if (phi < 1e-12 || kTwoPi - phi < 1e-12)
            throw singularity_error("log_char_poly: theta coincides with an eigenangle");
        re.add(std::log(2.0 * std::sin(0.5 * phi)));
        im.add(0.5 * (phi - kPi));
    }
    return {re.value(), im.value()};
}

CountingStat counting_stat(const EigenangleSample& sample, double s, double t) {
    if (!(-kPi <= s && s < t && t <= kPi))
        throw std::domain_error("counting_stat: need -pi <= s < t <= pi");
    CountingStat out;
    out.s = s;
    out.t = t;
    for (double a : sample.angles)
        if (a > s && a <= t) ++out.raw_count;
    const double N = static_cast<double>(sample.N);
    out.normalized = (out.raw_count - (t - s) * N / kTwoPi) /
                     (std::sqrt(std::log(N)) / kPi);
    return out;
}

double dpp_count_variance(int N, double s, double t, int resolution) {
    if (!(-kPi < s && s < t && t <= kPi))
        throw std::domain_error("dpp_count_variance: need -pi < s < t <= pi");
    if (N < 1) throw std::invalid_argument("dpp_count_variance: N must be >= 1");
    const double L = t - s;
    if (resolution <= 0) resolution = 8 * N;
    // Var = L N/(2pi) - 2 int_0^L (L - d) K_N(d)^2 dd with
    // K_N(d) = sin(N d/2) / (2 pi sin(d/2)); Simpson on a grid fine enough
    // for the fastest oscillation.
    const long M = 2L * std::max(resolution, 8 * N); // even
    const double h = L / static_cast<double>(M);
    const auto k2 = [N](double d) {
        if (std::abs(d) < 1e-14) {
            const double k0 = static_cast<double>(N) / kTwoPi;
            return k0 * k0;
        }
        const double v = std::sin(0.5 * N * d) / (kTwoPi * std::sin(0.5 * d));
        return v * v;
    };
    CompensatedSum simpson;
    for (long i = 0; i <= M; ++i) {
        const double d = h * static_cast<double>(i);
        const double w = (i == 0 || i == M) ? 1.0 : ((i % 2) ? 4.0 : 2.0);
        simpson.add(w * (L - d) * k2(d));
    }
    const double integral = 2.0 * simpson.value() * h / 3.0;
    return L * static_cast<double>(N) / kTwoPi - integral;
}

double wieand_prediction(const IntervalPair& p) {
    const bool ss = p.s1 == p.s2, tt = p.t1 == p.t2;
    const bool st = p.s1 == p.t2, ts = p.t1 == p.s2;
    if (ss && tt) return 1.0;
    if (st && ts) return -1.0; // impossible for ordered intervals; kept for the table
    if (ss != tt && !st && !ts) return 0.5;
    if (st != ts && !ss && !tt) return -0.5;
    return 0.0;
}

std::vector<WieandEntry> wieand_covariance(std::span<const EigenangleSample> samples,
                                           std::span<const IntervalPair> pairs) {
    if (samples.empty()) throw std::invalid_argument("wieand_covariance: no samples");
    std::vector<WieandEntry> out;
    out.reserve(pairs.size());
    for (const IntervalPair& p : pairs) {
        RunningStats sx, sy;
        std::vector<double> xs, ys;
        xs.reserve(samples.size());
        ys.reserve(samples.size());
        for (const auto& smp : samples) {
            xs.push_back(counting_stat(smp, p.s1, p.t1).normalized);
            ys.push_back(counting_stat(smp, p.s2, p.t2).normalized);
            sx.add(xs.back());
            sy.add(ys.back());
        }
        const double mx = sx.mean(), my = sy.mean();
        double c2 = 0.0, c22 = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double v = (xs[i] - mx) * (ys[i] - my);
            c2 += v;
            c22 += v * v;
        }
        const double n = static_cast<double>(xs.size());
        WieandEntry e;
        e.pair = p;
        e.covariance = c2 / (n - 1.0);
        e.std_error = std::sqrt(std::max(c22 / n - (c2 / n) * (c2 / n), 0.0) / n);
        e.prediction = wieand_prediction(p);
        out.push_back(e);
    }
    return out;
}

} // namespace dlab
