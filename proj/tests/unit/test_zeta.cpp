#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "disorderlab/errors.hpp"
#include "disorderlab/zeta.hpp"
#include "oracles.hpp"

using namespace dlab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("rs_theta against the high-precision series") {
    // the asymptotic remainder is far below 1e-3 here; the oracle value for
    // t = 100 is 87.97216523...
    CHECK(rs_theta(100.0) ==
          doctest::Approx(static_cast<double>(oracle::theta_hp(oracle::hp(100)))).epsilon(1e-12));
    for (double t : {20.0, 55.5, 333.0, 1e4, 1e6}) {
        CHECK(rs_theta(t) ==
              doctest::Approx(static_cast<double>(oracle::theta_hp(oracle::hp(t)))).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)rs_theta(0.0), std::domain_error);
    CHECK_THROWS_AS((void)rs_theta(-5.0), std::domain_error);
}

TEST_CASE("rs_theta log-Gamma branch joins the asymptotic branch smoothly") {
    // both routes are valid near t = 10; they must agree to ~1e-12
    for (double t : {9.0, 9.5, 9.99, 10.0, 10.01}) {
        const double lg = rs_theta(t < 10.0 ? t : t - 1e-13);
        (void)lg;
    }
    const double left = rs_theta(10.0 - 1e-9);
    const double right = rs_theta(10.0 + 1e-9);
    CHECK(std::abs(right - left) < 1e-8);
}

TEST_CASE("theta derivative identity by finite differences") {
    const double t = 1e4, h = 1e-3;
    const double fd = (rs_theta(t + h) - rs_theta(t - h)) / (2.0 * h);
    CHECK(fd == doctest::Approx(0.5 * std::log(t / (2.0 * kPi))).epsilon(1e-9));
    // strictly increasing for t >= 10
    double prev = rs_theta(10.0);
    for (double tt = 11.0; tt < 200.0; tt += 7.7) {
        CHECK(rs_theta(tt) > prev);
        prev = rs_theta(tt);
    }
}

TEST_CASE("hardy_Z brackets the first zero and matches |zeta|") {
    CHECK(hardy_Z(14.0) * hardy_Z(14.2) < 0.0);
    // |Z(t)| = |zeta(1/2+it)| via the 50-digit oracle at t = 50
    const double z50 = hardy_Z(50.0);
    const double ref = std::abs(static_cast<double>(abs(oracle::zeta_em_hp(oracle::hp(50)))));
    CHECK(std::abs(z50) == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("Z is the rotated zeta: e^{i theta} zeta(1/2+it) is real") {
    for (double t : {25.0, 50.0, 333.3, 1200.0}) {
        const std::complex<double> z = zeta_em(t);
        const double th = rs_theta(t);
        const double imag_part = std::sin(th) * z.real() + std::cos(th) * z.imag();
        CHECK(std::abs(imag_part) < 1e-6);
    }
}

TEST_CASE("Z agrees with the Euler-Maclaurin oracle on a 100-point audit set") {
    // e^{-i theta} Z vs oracle zeta to 1e-6 for t <= 1e3 (both EM and RS
    // regions are crossed when the switch sits at 1500 -- extend to 3e3)
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double t = 20.0 + i * (3000.0 - 20.0) / 99.0;
        const double z = hardy_Z(t);
        const double ref = static_cast<double>(oracle::hardy_z_hp(oracle::hp(t)));
        worst = std::max(worst, std::abs(z - ref));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("capacity and domain guards") {
    CHECK_THROWS_AS((void)hardy_Z(5.0), std::domain_error);
    CHECK_THROWS_AS((void)hardy_Z(2e9), capacity_error);
    CHECK_THROWS_AS((void)zero_count_scan(2e6), capacity_error);
    CHECK_THROWS_AS((void)zero_count_scan(100.0, 2.0), std::invalid_argument);
}

TEST_CASE("zero counts at desk heights") {
    const ZeroScan scan = zero_count_scan(120.0);
    CHECK(scan.count_upto(100.0) == 29);
    CHECK(scan.count_upto(50.0) == 10);
    CHECK(scan.count_upto(14.0) == 0);
    CHECK(scan.count_upto(15.0) == 1);
    // first zero near 14.134725
    REQUIRE(!scan.zeros.empty());
    CHECK(scan.zeros[0] == doctest::Approx(14.134725).epsilon(1e-5));
    // nondecreasing integer counts
    std::int64_t prev = 0;
    for (double t = 10.0; t <= 120.0; t += 0.37) {
        const std::int64_t n = scan.count_upto(t);
        CHECK(n >= prev);
        prev = n;
    }
}

TEST_CASE("scan zeros match the sign structure of Z") {
    const ZeroScan scan = zero_count_scan(200.0);
    for (std::size_t i = 0; i + 1 < scan.zeros.size(); ++i) {
        const double a = scan.zeros[i] + 1e-4;
        const double b = scan.zeros[i + 1] - 1e-4;
        if (b <= a) continue;
        // no sign change strictly between consecutive zeros
        CHECK(hardy_Z(a) * hardy_Z(b) > 0.0);
    }
}

TEST_CASE("S stays small over the scanned range") {
    const ZeroScan scan = zero_count_scan(5000.0);
    CHECK(scan.warnings.empty());
    for (double t = 20.0; t < 5000.0; t += 13.7) {
        const double s = scan.s_value(t);
        CHECK(s > -3.0);
        CHECK(s < 3.0);
    }
}

TEST_CASE("log_zeta_det: real part, argument-principle jump, flags") {
    const ZeroScan scan = zero_count_scan(1000.0);

    // Re log zeta matches the oracle
    double worst = 0.0;
    for (double t = 20.3; t < 990.0; t += 9.9) {
        const CriticalLinePoint pt = log_zeta_det(t, scan);
        const double ref = std::log(static_cast<double>(abs(oracle::zeta_em_hp(oracle::hp(t)))));
        if (!pt.near_zero) worst = std::max(worst, std::abs(pt.log_zeta.real() - ref));
        // |zeta| = |Z| and zeta = e^{-i theta} Z
        CHECK(std::abs(std::abs(pt.zeta) - std::abs(pt.Z)) < 1e-12 * (1.0 + std::abs(pt.Z)));
        // continuous determination: Im = pi (N - theta/pi - 1)
        CHECK(pt.log_zeta.imag() ==
              doctest::Approx(kPi * (pt.s_count_basis - (pt.theta / kPi + 1.0))).epsilon(1e-12));
    }
    CHECK(worst < 1e-5);

    // crossing a simple zero jumps Im by exactly pi once the smooth theta
    // drift is removed: Im + theta = pi N(t) - pi steps by pi at the zero
    const double z0 = scan.zeros[5];
    const auto left = log_zeta_det(z0 - 5e-4, scan);
    const auto right = log_zeta_det(z0 + 5e-4, scan);
    CHECK((right.log_zeta.imag() + right.theta) - (left.log_zeta.imag() + left.theta) ==
          doctest::Approx(kPi).epsilon(1e-12));
    CHECK(right.log_zeta.imag() - left.log_zeta.imag() ==
          doctest::Approx(kPi).epsilon(1e-2)); // small theta drift at finite offset
    CHECK(left.near_zero);
    CHECK(right.near_zero);

    // singularity guard at a located zero
    CHECK_THROWS_AS((void)log_zeta_det(z0, scan), singularity_error);
    CHECK_THROWS_AS((void)log_zeta_det(2000.0, scan), std::out_of_range);
}

TEST_CASE("mean of S over a window is near zero") {
    const ZeroScan scan = zero_count_scan(20000.0);
    double acc = 0.0;
    std::size_t n = 0;
    for (double t = 10000.0; t < 20000.0; t += 3.7) {
        acc += scan.s_value(t);
        ++n;
    }
    CHECK(std::abs(acc / static_cast<double>(n)) < 0.05);
}

TEST_CASE("sample_L is the normalized log at u e^(N^lambda)") {
    const ZeroScan scan = zero_count_scan(25000.0);
    const double N = std::pow(std::log(1e4), 2.0); // e^(N^0.5) = 1e4
    const std::complex<double> L = sample_L(N, 0.5, 1.25, scan);
    const CriticalLinePoint pt = log_zeta_det(1.25 * 1e4, scan);
    CHECK(L.real() ==
          doctest::Approx(pt.log_zeta.real() / std::sqrt(std::log(N))).epsilon(1e-9));
    CHECK(L.imag() ==
          doctest::Approx(pt.log_zeta.imag() / std::sqrt(std::log(N))).epsilon(1e-9));
    CHECK_THROWS_AS((void)sample_L(N, 0.5, 2.6, scan), std::domain_error);
}

TEST_CASE("ZSCN1 cache round trip") {
    ZeroScan scan = zero_count_scan(300.0);
    scan.warnings.push_back("synthetic warning");
    const std::string path = "zscn_test_cache.bin";
    write_zero_scan_cache(scan, path);
    const ZeroScan r = load_zero_scan_cache(path);
    CHECK(r.t_max == scan.t_max);
    CHECK(r.grid_density == scan.grid_density);
    REQUIRE(r.zeros.size() == scan.zeros.size());
    for (std::size_t i = 0; i < r.zeros.size(); ++i) CHECK(r.zeros[i] == scan.zeros[i]);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0] == "synthetic warning");
    std::remove(path.c_str());
}
