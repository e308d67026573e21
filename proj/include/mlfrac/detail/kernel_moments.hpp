#pragma once

// Closed-form panel moments for product integration against weakly
// singular power kernels. Everything in fracops reduces to
//
//   M_e = integral over [s0, s1] of (t - s)^(b-1) * s^(p+e) ds,  e in {0, 1},
//
// with 0 <= s0 < s1 <= t, b in (0, 1], p in (-1, 0]. For p = 0 the
// antiderivatives are elementary; otherwise the moment is an incomplete
// Beta increment evaluated by a two-sided binomial series that avoids
// cancellation between nearly equal endpoints.

#include <cstdint>
#include <utility>

namespace mlfrac::detail {

struct PanelMoments {
    double m0 = 0.0; // weight of the constant 1
    double m1 = 0.0; // weight of s
};

// Moments for the regular case p = 0 (plain piecewise-linear integrand).
PanelMoments regular_moments(double t, double s0, double s1, double b);

// Moments for the singular-power case: integrand carries s^p with p in (-1, 0).
// m0 multiplies s^p, m1 multiplies s^(p+1).
PanelMoments singular_moments(double t, double s0, double s1, double b, double p);

// integral over [s0, s1] of s^a ds, stable for a > -1
double pure_power_moment(double s0, double s1, double a);

// Hat-function weights on a panel [s0, s1]: contribution of the left and
// right nodal values of a linear interpolant against the kernel moments.
inline std::pair<double, double> hat_weights(const PanelMoments& m, double s0, double s1) {
    double h = s1 - s0;
    double wl = (s1 * m.m0 - m.m1) / h;
    double wr = (m.m1 - s0 * m.m0) / h;
    return {wl, wr};
}

} // namespace mlfrac::detail
