#pragma once

// Double-double arithmetic: an unevaluated sum of two doubles giving
// roughly 32 significant decimal digits. Used by the series evaluator
// when compensated double summation cannot reach the requested
// tolerance. Algorithms follow Dekker/Knuth error-free transformations.

#include <cmath>
#include <cstdint>
#include <limits>

namespace mlfrac::detail {

struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double h) : hi(h), lo(0.0) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

inline DD quick_two_sum(double a, double b) {
    // requires |a| >= |b|
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
#ifdef FP_FAST_FMA
    double p = a * b;
    return {p, std::fma(a, b, -p)};
#else
    // Veltkamp split
    constexpr double SPLIT = 134217729.0; // 2^27 + 1
    double p = a * b;
    double ca = SPLIT * a;
    double ahi = ca - (ca - a);
    double alo = a - ahi;
    double cb = SPLIT * b;
    double bhi = cb - (cb - b);
    double blo = b - bhi;
    double err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
    return {p, err};
#endif
}

inline DD operator+(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD operator/(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = a - DD(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - DD(q2) * b;
    double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    return q + DD(q3);
}

inline DD& operator+=(DD& a, DD b) { a = a + b; return a; }
inline DD& operator-=(DD& a, DD b) { a = a - b; return a; }
inline DD& operator*=(DD& a, DD b) { a = a * b; return a; }
inline DD& operator/=(DD& a, DD b) { a = a / b; return a; }

inline bool operator<(DD a, DD b)  { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(DD a, DD b)  { return b < a; }
inline bool operator<=(DD a, DD b) { return !(b < a); }
inline bool operator>=(DD a, DD b) { return !(a < b); }
inline bool operator==(DD a, DD b) { return a.hi == b.hi && a.lo == b.lo; }

inline DD fabs(DD a) { return a.hi < 0.0 ? -a : a; }
inline bool isfinite(DD a) { return std::isfinite(a.hi); }

inline DD ldexp(DD a, int n) { return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)}; }

// ln 2 to double-double precision
inline constexpr DD dd_ln2{6.931471805599452862e-01, 2.3190468138462995584e-17};
// pi to double-double precision
inline constexpr DD dd_pi{3.141592653589793116e+00, 1.2246467991473531772e-16};

DD exp(DD a);
DD log(DD a);
DD lgamma(DD x); // x > 0 only

} // namespace mlfrac::detail
