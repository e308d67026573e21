#include "mlfrac/detail/kernel_moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mlfrac::detail {

namespace {

// x1^g - x0^g for x1 >= x0 >= 0 without cancellation; dx = x1 - x0 exact.
double diff_pow(double x1, double x0, double g, double dx) {
    if (x0 == 0.0) return std::pow(x1, g);
    return std::pow(x0, g) * std::expm1(g * std::log1p(dx / x0));
}

// integral over [s0, s1] of (t-s)^(b-1) s^a ds, expanding the kernel about
// s = 0; geometrically convergent for s1 <= t/2.
//
//   = t^(b-1) sum_n c_n t^-n (s1^(a+n+1) - s0^(a+n+1)) / (a+n+1),
//
// c_n the (all nonnegative) binomial coefficients of (1-y)^(b-1). The power
// differences D_n = (s1^(a+n+1) - s0^(a+n+1))/t^n follow the cancellation-free
// recurrence D_{n+1} = (s1 D_n + h s0^(a+n+1)/t^n) / t.
double moment_near_zero(double t, double s0, double s1, double b, double a) {
    const double h = s1 - s0;
    double coef = 1.0;
    double d = diff_pow(s1, s0, a + 1.0, h);
    double s0pow = std::pow(s0, a + 1.0); // s0^(a+n+1) / t^n
    double acc = 0.0;
    for (int n = 0; n < 400; ++n) {
        double term = coef * d / (a + n + 1.0);
        acc += term;
        if (term <= 1e-17 * acc && n >= 1) break;
        coef *= (static_cast<double>(n + 1) - b) / static_cast<double>(n + 1);
        d = (s1 * d + h * s0pow) / t;
        s0pow *= s0 / t;
    }
    return std::pow(t, b - 1.0) * acc;
}

// integral over [s0, s1] of (t-s)^(b-1) s^a ds via u = t - s, expanding
// (t-u)^a about u = 0; geometrically convergent for s0 >= t/2.
double moment_near_t(double t, double s0, double s1, double b, double a) {
    const double u0 = t - s0; // larger endpoint in u
    const double u1 = t - s1; // smaller, possibly 0
    const double du = s1 - s0;
    double coef = 1.0;        // C(a,n) (-1)^n
    double e = diff_pow(u0, u1, b, du);
    double u1pow = std::pow(u1, b); // u1^(b+n) / t^n
    double acc = 0.0;
    for (int n = 0; n < 400; ++n) {
        double term = coef * e / (b + n);
        acc += term;
        if (std::abs(term) <= 1e-17 * std::abs(acc) && n >= 1) break;
        coef *= (static_cast<double>(n) - a) / static_cast<double>(n + 1);
        e = (u0 * e + du * u1pow) / t;
        u1pow *= u1 / t;
    }
    return std::pow(t, a) * acc;
}

double moment(double t, double s0, double s1, double b, double a) {
    if (s1 <= 0.5 * t) return moment_near_zero(t, s0, s1, b, a);
    if (s0 >= 0.5 * t) return moment_near_t(t, s0, s1, b, a);
    double mid = 0.5 * t;
    return moment_near_zero(t, s0, mid, b, a) + moment_near_t(t, mid, s1, b, a);
}

void check_panel(double t, double s0, double s1, double b) {
    if (!(t > 0.0) || !(s1 > s0) || s0 < 0.0 || s1 > t)
        throw std::invalid_argument("kernel moments: need 0 <= s0 < s1 <= t");
    if (!(b > 0.0) || b > 1.0)
        throw std::invalid_argument("kernel moments: b must lie in (0, 1]");
}

} // namespace

double pure_power_moment(double s0, double s1, double a) {
    double g = a + 1.0;
    return diff_pow(s1, s0, g, s1 - s0) / g;
}

PanelMoments regular_moments(double t, double s0, double s1, double b) {
    check_panel(t, s0, s1, b);
    return {moment(t, s0, s1, b, 0.0), moment(t, s0, s1, b, 1.0)};
}

PanelMoments singular_moments(double t, double s0, double s1, double b, double p) {
    check_panel(t, s0, s1, b);
    if (!(p > -1.0) || p > 0.0)
        throw std::invalid_argument("kernel moments: p must lie in (-1, 0]");
    return {moment(t, s0, s1, b, p), moment(t, s0, s1, b, p + 1.0)};
}

} // namespace mlfrac::detail
