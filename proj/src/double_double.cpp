#include "mlfrac/detail/double_double.hpp"

#include <array>
#include <stdexcept>

namespace mlfrac::detail {

DD exp(DD a) {
    // exp(a) = 2^k * exp(r)^512 with r = (a - k ln2)/512, |r| small.
    if (a.hi <= -709.0) return DD(0.0);
    if (a.hi >= 709.0) return DD(std::numeric_limits<double>::infinity());
    if (a.hi == 0.0 && a.lo == 0.0) return DD(1.0);

    double k = std::nearbyint(a.hi / dd_ln2.hi);
    DD r = (a - DD(k) * dd_ln2);
    r = ldexp(r, -9); // /512

    // s = exp(r) - 1 by Taylor; |r| <= ln2/1024 ~ 6.8e-4
    DD p = r;
    DD s = r;
    double fact = 1.0;
    for (int i = 2; i <= 9; ++i) {
        p *= r;
        fact *= static_cast<double>(i);
        s += p / DD(fact);
    }
    // (1+s)^512 - 1 by repeated squaring of the offset form
    for (int i = 0; i < 9; ++i) s = ldexp(s, 1) + s * s;
    DD result = s + DD(1.0);
    return ldexp(result, static_cast<int>(k));
}

DD log(DD a) {
    if (!(a.hi > 0.0)) throw std::domain_error("dd log: argument must be positive");
    DD y(std::log(a.hi + a.lo));
    // one Newton step y <- y + a*exp(-y) - 1 squares the double-seed accuracy
    y = y + a * exp(-y) - DD(1.0);
    return y;
}

namespace {

// Stirling series coefficients B_{2n} / (2n (2n-1)) as exact rationals.
const std::array<DD, 12> stirling_coeffs = {
    DD(1.0) / DD(12.0),
    -(DD(1.0) / DD(360.0)),
    DD(1.0) / DD(1260.0),
    -(DD(1.0) / DD(1680.0)),
    DD(1.0) / DD(1188.0),
    -(DD(691.0) / DD(360360.0)),
    DD(1.0) / DD(156.0),
    -(DD(3617.0) / DD(122400.0)),
    DD(43867.0) / DD(244188.0),
    -(DD(174611.0) / DD(125400.0)),
    DD(77683.0) / DD(5796.0),
    -(DD(236364091.0) / DD(1506960.0)),
};

const DD half_ln_two_pi = DD(0.5) * log(ldexp(dd_pi, 1));

DD lgamma_stirling(DD y) {
    // valid for y >= 32
    DD ly = log(y);
    DD sum = (y - DD(0.5)) * ly - y + half_ln_two_pi;
    DD z = DD(1.0) / (y * y);
    DD acc = stirling_coeffs[11];
    for (int i = 10; i >= 0; --i) acc = acc * z + stirling_coeffs[i];
    return sum + acc / y;
}

} // namespace

DD lgamma(DD x) {
    if (!(x.hi > 0.0)) throw std::domain_error("dd lgamma: argument must be positive");
    if (x.hi >= 32.0) return lgamma_stirling(x);
    int n = static_cast<int>(std::ceil(32.0 - x.hi));
    DD prod(1.0);
    for (int i = 0; i < n; ++i) prod *= x + DD(static_cast<double>(i));
    return lgamma_stirling(x + DD(static_cast<double>(n))) - log(prod);
}

} // namespace mlfrac::detail
