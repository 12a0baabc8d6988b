#pragma once

// High-precision reference implementations used only by tests. Everything
// here is an independent route: 50-digit Euler-Maclaurin zeta, exact-rational
// Bernoulli numbers, the theta asymptotic series in high precision, and a
// quadrature normal CDF. None of it shares code with the library paths it
// checks.

#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using hp = boost::multiprecision::cpp_bin_float_50;
using chp = boost::multiprecision::cpp_complex_50;
using rat = boost::multiprecision::cpp_rational;

inline hp hp_pi() {
    // 50+ digits of pi
    return hp("3.14159265358979323846264338327950288419716939937510582");
}

// B_0..B_n by the defining recurrence sum_{k=0}^{m} C(m+1,k) B_k = 0.
inline std::vector<rat> bernoulli_rationals(int n) {
    std::vector<rat> b(static_cast<std::size_t>(n) + 1);
    b[0] = 1;
    for (int m = 1; m <= n; ++m) {
        rat acc = 0;
        rat binom = 1; // C(m+1, k)
        for (int k = 0; k < m; ++k) {
            // C(m+1, k): build incrementally
            if (k > 0) binom = binom * rat(m + 2 - k) / rat(k);
            acc += binom * b[static_cast<std::size_t>(k)];
        }
        binom = binom * rat(2) / rat(m); // C(m+1, m)
        b[static_cast<std::size_t>(m)] = -acc / binom;
    }
    return b;
}

// Euler-Maclaurin zeta(1/2 + it) at 50 digits; fine for t up to a few 1e4.
inline chp zeta_em_hp(hp t) {
    const int n0 = static_cast<int>(std::max(60.0, 1.2 * static_cast<double>(t) + 30.0));
    static const std::vector<rat> bern = bernoulli_rationals(80);
    const chp s{hp(0.5), t};
    chp acc{0, 0};
    for (int n = 1; n < n0; ++n) acc += exp(-s * log(hp(n)));
    const chp n0s = exp(-s * log(hp(n0)));
    acc += n0s * hp(n0) / (s - 1);
    acc += n0s / 2;

    chp poch = s;
    hp fact = 2;
    chp npow = n0s / hp(n0);
    for (int j = 1; j <= 38; ++j) {
        if (j > 1) {
            poch *= (s + hp(2 * j - 3)) * (s + hp(2 * j - 2));
            fact *= hp(2 * j) * hp(2 * j - 1);
            npow /= hp(n0) * hp(n0);
        }
        const hp bj = static_cast<hp>(static_cast<hp>(numerator(bern[static_cast<std::size_t>(2 * j)])) /
                                      static_cast<hp>(denominator(bern[static_cast<std::size_t>(2 * j)])));
        const chp term = bj / fact * poch * npow;
        acc += term;
        if (abs(term) < hp("1e-60")) break;
    }
    return acc;
}

// theta(t) asymptotic with exact-Bernoulli coefficients, 50 digits; the
// remainder is far below 1e-25 for t >= 20.
inline hp theta_hp(hp t) {
    static const std::vector<rat> bern = bernoulli_rationals(60);
    const hp pi = hp_pi();
    hp acc = t / 2 * log(t / (2 * pi)) - t / 2 - pi / 8;
    hp tp = t; // t^(2n-1)
    for (int n = 1; n <= 12; ++n) {
        const rat b2n = bern[static_cast<std::size_t>(2 * n)];
        const rat two_pow(boost::multiprecision::cpp_int(1) << (2 * n - 1));
        const rat coef = (rat(1) - rat(1) / two_pow) * abs(b2n) / (rat(4 * n) * rat(2 * n - 1));
        acc += static_cast<hp>(static_cast<hp>(numerator(coef)) /
                               static_cast<hp>(denominator(coef))) /
               tp;
        tp *= t * t;
    }
    return acc;
}

inline hp hardy_z_hp(hp t) {
    const chp z = zeta_em_hp(t);
    const hp th = theta_hp(t);
    return cos(th) * z.real() - sin(th) * z.imag();
}

// Phi(x) by Simpson quadrature of the normal density, independent of erf.
inline double normal_cdf_quadrature(double x) {
    const double lo = -10.0;
    if (x <= lo) return 0.0;
    const int n = 4000; // even
    const double h = (x - lo) / n;
    double s = 0.0;
    auto dens = [](double u) { return std::exp(-0.5 * u * u); };
    for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        s += w * dens(lo + i * h);
    }
    return s * h / 3.0 / std::sqrt(2.0 * 3.14159265358979323846);
}

} // namespace oracle
