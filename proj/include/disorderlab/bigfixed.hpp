#pragma once

// Fixed-point multiprecision reals on top of boost cpp_int.
//
// A BigFixed holds value = mant * 2^-frac_bits. All operands of a binary
// operation must share frac_bits; results are rounded to nearest back to the
// common scale. This is enough real arithmetic for what the lab needs --
// exp/log of moderate arguments, exact products, and remainders mod 2*pi --
// with explicit control over the number of carried bits, which is the whole
// point when the integer part alone is thousands of bits wide.

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dlab {

using BigInt = boost::multiprecision::cpp_int;

class BigFixed {
public:
    BigFixed() = default;
    BigFixed(BigInt mant, std::int64_t frac_bits) : mant_(std::move(mant)), frac_bits_(frac_bits) {}

    static BigFixed from_double(double x, std::int64_t frac_bits);
    static BigFixed from_uint(std::uint64_t x, std::int64_t frac_bits);

    const BigInt& mant() const { return mant_; }
    std::int64_t frac_bits() const { return frac_bits_; }

    double to_double() const;
    bool is_negative() const { return mant_ < 0; }
    bool is_zero() const { return mant_.is_zero(); }

    // Number of bits in the integer part (0 for values in (-1,1)).
    std::int64_t int_bits() const;

    BigFixed add(const BigFixed& o) const;
    BigFixed sub(const BigFixed& o) const;
    BigFixed mul(const BigFixed& o) const;        // rounded to nearest
    BigFixed mul_exact_double(double s) const;    // exact: s is dyadic; scale kept
    BigFixed div_uint(std::uint64_t d) const;     // rounded to nearest
    BigFixed neg() const { return {-mant_, frac_bits_}; }
    BigFixed abs() const { return {mant_ < 0 ? BigInt(-mant_) : mant_, frac_bits_}; }

    // Rescale to a different frac_bits (rounding when narrowing).
    BigFixed rescale(std::int64_t frac_bits) const;

    int compare(const BigFixed& o) const;

    std::string str(unsigned digits = 30) const;

private:
    BigInt mant_;
    std::int64_t frac_bits_ = 0;
};

// Constants and elementary functions at the requested precision. These are
// one-time setup costs per context; series are plain and unclever.
BigFixed bf_two_pi(std::int64_t frac_bits);
BigFixed bf_ln2(std::int64_t frac_bits);

// exp(x) for |x| up to ~2^20; result carries frac_bits fractional bits.
BigFixed bf_exp(const BigFixed& x, std::int64_t frac_bits);

// ln(x) for x > 0.
BigFixed bf_ln(const BigFixed& x, std::int64_t frac_bits);

// x mod m for m > 0; result in [0, m).
BigFixed bf_mod(const BigFixed& x, const BigFixed& m);

// floor(x / m) and remainder in [0, m) in one division.
struct BigFixedDivMod {
    BigInt quotient;
    BigFixed remainder;
};
BigFixedDivMod bf_divmod(const BigFixed& x, const BigFixed& m);

} // namespace dlab
