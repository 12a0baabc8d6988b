#pragma once

#include <cmath>

namespace dlab {

// Minimal double-double arithmetic (~106-bit significand). Only the handful
// of operations the phase fast path needs.
struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD dd_two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD dd_quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD dd_two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = dd_two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return dd_quick_two_sum(s.hi, s.lo);
}

inline DD dd_add_d(DD a, double b) {
    DD s = dd_two_sum(a.hi, b);
    s.lo += a.lo;
    return dd_quick_two_sum(s.hi, s.lo);
}

inline DD dd_mul_d(DD a, double b) {
    DD p = dd_two_prod(a.hi, b);
    p.lo += a.lo * b;
    return dd_quick_two_sum(p.hi, p.lo);
}

inline DD dd_sub(DD a, DD b) { return dd_add(a, {-b.hi, -b.lo}); }

inline double dd_value(DD a) { return a.hi + a.lo; }

// 2*pi to double-double precision.
inline constexpr DD kTwoPiDD{6.283185307179586476925286766559, 2.4492935982947063545442e-16};

} // namespace dlab
