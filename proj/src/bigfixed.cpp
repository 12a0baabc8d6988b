#include "disorderlab/bigfixed.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dlab {

namespace {

// Round-to-nearest right shift (ties away from zero, sign-symmetric).
BigInt shift_round(const BigInt& v, std::int64_t bits) {
    if (bits <= 0) return v << (-bits);
    const bool neg = v < 0;
    BigInt a = neg ? BigInt(-v) : v;
    a += BigInt(1) << (bits - 1);
    a >>= bits;
    return neg ? BigInt(-a) : a;
}

} // namespace

BigFixed BigFixed::from_double(double x, std::int64_t frac_bits) {
    if (!std::isfinite(x)) throw std::invalid_argument("BigFixed::from_double: non-finite input");
    int e = 0;
    const double m = std::frexp(x, &e); // x = m * 2^e, |m| in [0.5, 1)
    const auto mant53 = static_cast<std::int64_t>(std::ldexp(m, 53)); // exact
    BigInt v(mant53);
    const std::int64_t shift = frac_bits + e - 53;
    if (shift >= 0)
        v <<= shift;
    else
        v = shift_round(v, -shift);
    return {std::move(v), frac_bits};
}

BigFixed BigFixed::from_uint(std::uint64_t x, std::int64_t frac_bits) {
    BigInt v(x);
    v <<= frac_bits;
    return {std::move(v), frac_bits};
}

double BigFixed::to_double() const {
    if (mant_.is_zero()) return 0.0;
    const bool neg = mant_ < 0;
    BigInt a = neg ? BigInt(-mant_) : mant_;
    const std::int64_t bits = static_cast<std::int64_t>(msb(a)) + 1;
    // Keep the top 64 bits and track the dropped scale.
    std::int64_t drop = bits - 64;
    if (drop < 0) drop = 0;
    const std::uint64_t top = static_cast<std::uint64_t>(a >> drop);
    double d = std::ldexp(static_cast<double>(top), static_cast<int>(drop - frac_bits_));
    return neg ? -d : d;
}

std::int64_t BigFixed::int_bits() const {
    if (mant_.is_zero()) return 0;
    const BigInt a = mant_ < 0 ? BigInt(-mant_) : mant_;
    const std::int64_t bits = static_cast<std::int64_t>(msb(a)) + 1;
    return bits > frac_bits_ ? bits - frac_bits_ : 0;
}

BigFixed BigFixed::add(const BigFixed& o) const {
    if (frac_bits_ != o.frac_bits_) throw std::invalid_argument("BigFixed::add: scale mismatch");
    return {mant_ + o.mant_, frac_bits_};
}

BigFixed BigFixed::sub(const BigFixed& o) const {
    if (frac_bits_ != o.frac_bits_) throw std::invalid_argument("BigFixed::sub: scale mismatch");
    return {mant_ - o.mant_, frac_bits_};
}

BigFixed BigFixed::mul(const BigFixed& o) const {
    if (frac_bits_ != o.frac_bits_) throw std::invalid_argument("BigFixed::mul: scale mismatch");
    return {shift_round(mant_ * o.mant_, frac_bits_), frac_bits_};
}

BigFixed BigFixed::mul_exact_double(double s) const {
    int e = 0;
    const double m = std::frexp(s, &e);
    const auto mant53 = static_cast<std::int64_t>(std::ldexp(m, 53));
    BigInt v = mant_ * mant53;
    const std::int64_t shift = 53 - e;
    return {shift_round(v, shift), frac_bits_};
}

BigFixed BigFixed::div_uint(std::uint64_t d) const {
    if (d == 0) throw std::invalid_argument("BigFixed::div_uint: division by zero");
    const bool neg = mant_ < 0;
    BigInt a = neg ? BigInt(-mant_) : mant_;
    a = (2 * a + d) / (2 * BigInt(d)); // round to nearest
    return {neg ? BigInt(-a) : a, frac_bits_};
}

BigFixed BigFixed::rescale(std::int64_t frac_bits) const {
    if (frac_bits == frac_bits_) return *this;
    if (frac_bits > frac_bits_) return {mant_ << (frac_bits - frac_bits_), frac_bits};
    return {shift_round(mant_, frac_bits_ - frac_bits), frac_bits};
}

int BigFixed::compare(const BigFixed& o) const {
    if (frac_bits_ != o.frac_bits_) throw std::invalid_argument("BigFixed::compare: scale mismatch");
    return mant_.compare(o.mant_);
}

std::string BigFixed::str(unsigned digits) const {
    // Decimal rendering through a scaled integer; for diagnostics only.
    const bool neg = mant_ < 0;
    BigInt a = neg ? BigInt(-mant_) : mant_;
    BigInt ip = a >> frac_bits_;
    BigInt fp = a - (ip << frac_bits_);
    BigInt pow10 = 1;
    for (unsigned i = 0; i < digits; ++i) pow10 *= 10;
    fp = (fp * pow10) >> frac_bits_;
    std::ostringstream os;
    if (neg) os << '-';
    os << ip << '.';
    std::string f = fp.str();
    os << std::string(digits > f.size() ? digits - f.size() : 0, '0') << f;
    return os.str();
}

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

// atan(1/x) for integer x >= 2, by the Taylor series in 1/x; every step is a
// word division so this is cheap even at several thousand bits.
static BigInt atan_inv_mant(std::uint64_t x, std::int64_t frac_bits) {
    const std::int64_t work = frac_bits + 16;
    BigInt term = (BigInt(1) << work) / x; // 1/x
    const BigInt x2(BigInt(x) * x);
    BigInt sum = term;
    bool sub = true;
    for (std::uint64_t k = 3;; k += 2, sub = !sub) {
        term = term / x2;
        if (term.is_zero()) break;
        BigInt t = term / k;
        if (sub)
            sum -= t;
        else
            sum += t;
    }
    return shift_round(sum, work - frac_bits);
}

BigFixed bf_two_pi(std::int64_t frac_bits) {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239).
    const std::int64_t work = frac_bits + 32;
    BigInt pi = 16 * atan_inv_mant(5, work) - 4 * atan_inv_mant(239, work);
    return {shift_round(pi << 1, work - frac_bits), frac_bits};
}

BigFixed bf_ln2(std::int64_t frac_bits) {
    // ln 2 = 2 atanh(1/3) = 2 sum_{k odd} (1/3)^k / k.
    const std::int64_t work = frac_bits + 16;
    BigInt term = (BigInt(1) << work) / 3;
    BigInt sum = term;
    for (std::uint64_t k = 3;; k += 2) {
        term /= 9;
        if (term.is_zero()) break;
        sum += term / k;
    }
    return {shift_round(sum << 1, work - frac_bits), frac_bits};
}

// ---------------------------------------------------------------------------
// exp / ln
// ---------------------------------------------------------------------------

BigFixed bf_exp(const BigFixed& x, std::int64_t frac_bits) {
    const std::int64_t work = frac_bits + 64;
    const BigFixed xw = x.rescale(work);
    const BigFixed ln2 = bf_ln2(work);

    // x = k ln2 + r, |r| <= ln2/2; e^x = 2^k e^r.
    BigInt k = xw.mant() / ln2.mant(); // truncated; correct the remainder below
    BigInt r = xw.mant() - k * ln2.mant();
    if (r > (ln2.mant() >> 1)) {
        r -= ln2.mant();
        k += 1;
    } else if (r < -(ln2.mant() >> 1)) {
        r += ln2.mant();
        k -= 1;
    }

    // Taylor for e^r, |r| <= 0.347: term_n = r^n / n!.
    BigInt term = BigInt(1) << work;
    BigInt sum = term;
    for (std::uint64_t n = 1;; ++n) {
        term = shift_round(term * r, work);
        term /= n;
        if (term.is_zero()) break;
        sum += term;
    }

    const std::int64_t kk = static_cast<std::int64_t>(k);
    const std::int64_t shift = work - frac_bits - kk;
    BigInt mant = shift >= 0 ? shift_round(sum, shift) : BigInt(sum << (-shift));
    return {std::move(mant), frac_bits};
}

BigFixed bf_ln(const BigFixed& x, std::int64_t frac_bits) {
    if (x.mant() <= 0) throw std::domain_error("bf_ln: argument must be positive");
    const std::int64_t work = frac_bits + 32;
    const BigFixed xw = x.rescale(work);

    // x = m * 2^e with m in [1, 2): ln x = e ln2 + 2 atanh((m-1)/(m+1)).
    const std::int64_t bits = static_cast<std::int64_t>(msb(xw.mant())) + 1;
    const std::int64_t e = bits - 1 - work;
    BigInt m = e >= 0 ? BigInt(xw.mant() >> e) : BigInt(xw.mant() << (-e));

    const BigInt one = BigInt(1) << work;
    // y = (m-1)/(m+1) in [0, 1/3)
    BigInt y = ((m - one) << work) / (m + one);
    BigInt y2 = shift_round(y * y, work);
    BigInt term = y;
    BigInt sum = term;
    for (std::uint64_t k = 3;; k += 2) {
        term = shift_round(term * y2, work);
        if (term.is_zero()) break;
        sum += term / k;
    }
    sum <<= 1;
    sum += e * bf_ln2(work).mant();
    return BigFixed(std::move(sum), work).rescale(frac_bits);
}

// ---------------------------------------------------------------------------
// Remainders
// ---------------------------------------------------------------------------

BigFixedDivMod bf_divmod(const BigFixed& x, const BigFixed& m) {
    if (x.frac_bits() != m.frac_bits()) throw std::invalid_argument("bf_divmod: scale mismatch");
    if (m.mant() <= 0) throw std::domain_error("bf_divmod: modulus must be positive");
    BigInt q, r;
    divide_qr(x.mant(), m.mant(), q, r);
    if (r < 0) {
        r += m.mant();
        q -= 1;
    }
    return {std::move(q), BigFixed(std::move(r), x.frac_bits())};
}

BigFixed bf_mod(const BigFixed& x, const BigFixed& m) { return bf_divmod(x, m).remainder; }

} // namespace dlab
