#pragma once

#include <cmath>
#include <numbers>

namespace mlfrac::detail {

// 1/Gamma(x) for arbitrary real x; returns 0 at the poles x = 0, -1, -2, ...
inline double inv_gamma(double x) {
    if (x > 0.5) {
        if (x < 170.0) return 1.0 / std::tgamma(x);
        return std::exp(-std::lgamma(x));
    }
    // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
    double s = std::sin(std::numbers::pi * x);
    if (s == 0.0) return 0.0;
    double y = 1.0 - x;
    if (y < 170.0) return std::tgamma(y) * s / std::numbers::pi;
    int sign = s > 0 ? 1 : -1;
    double mag = std::lgamma(y) + std::log(std::abs(s) / std::numbers::pi);
    return sign * std::exp(mag);
}

} // namespace mlfrac::detail
