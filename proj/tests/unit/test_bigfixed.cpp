#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "disorderlab/bigfixed.hpp"
#include "disorderlab/dd.hpp"

using dlab::BigFixed;
using dlab::BigInt;

TEST_CASE("from_double/to_double round trip is exact for dyadic values") {
    for (double x : {1.0, 0.5, 1.75, -3.375, 6.283185307179586, 1e-9, 12345.678}) {
        const BigFixed f = BigFixed::from_double(x, 256);
        CHECK(f.to_double() == doctest::Approx(x).epsilon(1e-17));
    }
    // exactly representable values survive unchanged
    const BigFixed f = BigFixed::from_double(1.359375, 128);
    CHECK(f.to_double() == 1.359375);
}

TEST_CASE("multiplication rounds to the stored scale") {
    const BigFixed a = BigFixed::from_double(3.0, 200);
    const BigFixed b = BigFixed::from_double(1.0 / 3.0, 200);
    const double prod = a.mul(b).to_double();
    CHECK(prod == doctest::Approx(1.0).epsilon(1e-18));
}

TEST_CASE("two_pi matches the double-double constant and a higher precision") {
    const BigFixed tp256 = dlab::bf_two_pi(256);
    const BigFixed tp1024 = dlab::bf_two_pi(1024);
    // rescaled difference below 1 ulp at 256 bits
    const BigFixed diff = tp1024.rescale(256).sub(tp256);
    CHECK(boost::multiprecision::abs(diff.mant()) <= 1);
    const double dd_sum = dlab::kTwoPiDD.hi + dlab::kTwoPiDD.lo;
    CHECK(tp256.to_double() == doctest::Approx(dd_sum).epsilon(1e-16));
    // the dd "lo" leg must be the correction of the rounded "hi" leg
    const BigFixed hi = BigFixed::from_double(dlab::kTwoPiDD.hi, 256);
    CHECK(tp256.sub(hi).to_double() == doctest::Approx(dlab::kTwoPiDD.lo).epsilon(1e-10));
}

TEST_CASE("ln2 doubles to std::log(2)") {
    CHECK(dlab::bf_ln2(300).to_double() == doctest::Approx(std::log(2.0)).epsilon(1e-16));
}

TEST_CASE("exp and ln invert each other at high precision") {
    const std::int64_t F = 512;
    const BigFixed x = BigFixed::from_double(7.25, F);
    const BigFixed ex = dlab::bf_exp(x, F);
    CHECK(ex.to_double() == doctest::Approx(std::exp(7.25)).epsilon(1e-15));
    const BigFixed back = dlab::bf_ln(ex, F);
    const BigFixed diff = back.sub(x);
    // |ln(exp(x)) - x| within a few ulps at 512 bits
    CHECK(boost::multiprecision::abs(diff.mant()) <= 8);
}

TEST_CASE("exp satisfies the addition law to working precision") {
    const std::int64_t F = 384;
    const BigFixed a = BigFixed::from_double(1.3125, F);
    const BigFixed b = BigFixed::from_double(2.015625, F);
    const BigFixed lhs = dlab::bf_exp(a.add(b), F);
    const BigFixed rhs = dlab::bf_exp(a, F).mul(dlab::bf_exp(b, F));
    const BigFixed diff = lhs.sub(rhs);
    CHECK(boost::multiprecision::abs(diff.mant()) <= 64);
}

TEST_CASE("divmod returns remainder in [0, m) with exact reconstruction") {
    const std::int64_t F = 128;
    const BigFixed x = BigFixed::from_double(1234.5678, F);
    const BigFixed m = dlab::bf_two_pi(F);
    const auto qr = dlab::bf_divmod(x, m);
    CHECK(qr.remainder.mant() >= 0);
    CHECK(qr.remainder.compare(m) < 0);
    const BigInt recon = qr.quotient * m.mant() + qr.remainder.mant();
    CHECK(recon == x.mant());
    CHECK(std::fmod(1234.5678, 2.0 * 3.14159265358979323846) ==
          doctest::Approx(qr.remainder.to_double()).epsilon(1e-12));
}

TEST_CASE("int_bits reports the integer-part width") {
    CHECK(BigFixed::from_double(1.0, 64).int_bits() == 1);
    CHECK(BigFixed::from_double(255.9, 64).int_bits() == 8);
    CHECK(BigFixed::from_double(0.3, 64).int_bits() == 0);
}

TEST_CASE("exp of a large argument has the predicted bit-length") {
    const std::int64_t F = 256;
    const BigFixed x = BigFixed::from_double(100.0, F);
    const BigFixed ex = dlab::bf_exp(x, F);
    // e^100 needs ceil(100/ln 2) = 145 integer bits
    CHECK(ex.int_bits() == 145);
    CHECK(ex.to_double() == doctest::Approx(2.6881171418161356e43).epsilon(1e-14));
}
