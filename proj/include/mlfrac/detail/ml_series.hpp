#pragma once

// Degree-block summation of the multinomial Mittag-Leffler series, templated
// over the working arithmetic. Block-to-block numerators follow the
// Pascal-type recurrence P_{k+1}(K) = sum_j z_j P_k(K - e_j), which keeps
// them exact up to rounding in the working type; only the reciprocal Gamma
// factor needs transcendental evaluation. Power-of-two block rescaling keeps
// the table in range without introducing rounding of its own.

#include "mlfrac/detail/compositions.hpp"
#include "mlfrac/detail/double_double.hpp"

#include <cmath>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

namespace mlfrac::detail {

struct SeriesOutcome {
    double value = 0.0;
    double round_err = 0.0; // absolute
    double tail_bound = 0.0;
    std::int64_t terms = 0;
    double log10_cancel = 0.0; // magnitude of the largest intermediate
    bool converged = false;
    bool overflowed = false;
};

// Saddle estimate: ln(max term) ~ g*, where g* solves sum_j |z_j| g^(-beta_j) = 1.
double series_peak_log(std::span<const double> beta, std::span<const double> z);

// Estimated decimal digits required for absolute tolerance tol.
double series_digits_needed(std::span<const double> beta, std::span<const double> z, double tol);

template <class Real> struct RealOps;

template <> struct RealOps<double> {
    static double from(double x) { return x; }
    static double to_double(double x) { return x; }
    static double lgamma_fn(double x) { return std::lgamma(x); }
    static double exp_fn(double x) { return std::exp(x); }
    static double ldexp_fn(double x, int n) { return std::ldexp(x, n); }
    static double ln2() { return 0.6931471805599453; }
    static constexpr double eps = 2.2e-16;
};

template <> struct RealOps<DD> {
    static DD from(double x) { return DD(x); }
    static double to_double(DD x) { return static_cast<double>(x); }
    static DD lgamma_fn(DD x) { return detail::lgamma(x); }
    static DD exp_fn(DD x) { return detail::exp(x); }
    static DD ldexp_fn(DD x, int n) { return detail::ldexp(x, n); }
    static DD ln2() { return dd_ln2; }
    static constexpr double eps = 1.3e-32;
};

template <class Real>
SeriesOutcome sum_ml_series(double beta0, std::span<const double> beta,
                            std::span<const double> z, double tol, int start_block,
                            std::int64_t term_cap) {
    using Ops = RealOps<Real>;
    const int m = static_cast<int>(beta.size());
    CompositionEnumerator enumr(m);

    SeriesOutcome out;

    std::vector<Real> zr(m);
    bool all_zero = true;
    for (int j = 0; j < m; ++j) {
        zr[j] = Ops::from(z[j]);
        if (z[j] != 0.0) all_zero = false;
    }

    // blocks to pass before the decreasing-tail test may fire
    double kpeak = 0.0;
    if (!all_zero) {
        double g = series_peak_log(beta, z);
        if (g > 0.0) {
            double denom = 0.0;
            for (int j = 0; j < m; ++j)
                denom += std::abs(z[j]) * std::pow(g, -beta[j]) * beta[j];
            if (denom > 0.0) kpeak = g / denom;
        }
    }
    const int min_block = std::max(start_block + 3, static_cast<int>(std::ceil(1.2 * kpeak)) + 4);

    Real total = Ops::from(0.0);
    Real comp = Ops::from(0.0); // Neumaier carry, exercised for double only
    Real log_scale = Ops::from(0.0);
    bool scaled = false;
    double max_mag = 0.0;
    double err_acc = 0.0;

    std::vector<Real> p(1, Ops::from(1.0)), p_next;
    double b_mag[3] = {-1.0, -1.0, -1.0};
    const int block_cap = 200000;

    for (int k = 0;; ++k) {
        CompositionBlock blk = enumr.block(k);
        if (k > 0) {
            p_next.assign(blk.count, Ops::from(0.0));
            for (std::size_t i = 0; i < blk.count; ++i) {
                Real acc = Ops::from(0.0);
                const std::int64_t* pred = blk.pred.data() + i * m;
                for (int j = 0; j < m; ++j)
                    if (pred[j] >= 0) acc += zr[j] * p[static_cast<std::size_t>(pred[j])];
                p_next[i] = acc;
            }
            p.swap(p_next);
            double mx = 0.0;
            for (const Real& v : p) mx = std::max(mx, std::abs(Ops::to_double(v)));
            if (mx > 1e250 || (mx > 0.0 && mx < 1e-250)) {
                int e = std::ilogb(mx);
                for (Real& v : p) v = Ops::ldexp_fn(v, -e);
                log_scale += Ops::from(static_cast<double>(e)) * Ops::ln2();
                scaled = true;
            }
        }

        Real block_sum = Ops::from(0.0);
        for (std::size_t i = 0; i < blk.count; ++i) {
            const int* c = blk.comp(i);
            Real g = Ops::from(beta0);
            for (int j = 0; j < m; ++j)
                if (c[j] > 0) g += Ops::from(static_cast<double>(c[j])) * Ops::from(beta[j]);

            Real term;
            double eps_weight;
            double gd = Ops::to_double(g);
            if constexpr (std::is_same_v<Real, double>) {
                if (!scaled && gd < 170.0) {
                    term = p[i] / std::tgamma(gd);
                    eps_weight = 4.0;
                } else {
                    double ex = Ops::to_double(log_scale) - std::lgamma(gd);
                    term = p[i] * std::exp(ex);
                    eps_weight = std::abs(ex) + 4.0;
                }
            } else {
                Real ex = log_scale - Ops::lgamma_fn(g);
                term = p[i] * Ops::exp_fn(ex);
                eps_weight = std::abs(Ops::to_double(ex)) + 4.0;
            }

            ++out.terms;
            if (k < start_block) continue;

            if constexpr (std::is_same_v<Real, double>) {
                double s = total + term;
                comp += std::abs(total) >= std::abs(term) ? (total - s) + term
                                                          : (term - s) + total;
                total = s;
            } else {
                total += term;
            }
            block_sum += term;
            double tmag = std::abs(Ops::to_double(term));
            max_mag = std::max({max_mag, tmag, std::abs(Ops::to_double(total))});
            err_acc += tmag * Ops::eps * eps_weight;
        }

        if (!std::isfinite(Ops::to_double(total)) || !std::isfinite(max_mag)) {
            out.overflowed = true;
            out.converged = false;
            out.log10_cancel = series_peak_log(beta, z) / 2.302585092994046 + 2.0;
            return out;
        }

        if (all_zero && k >= 1) {
            out.converged = true;
            break;
        }

        if (k >= start_block) {
            b_mag[0] = b_mag[1];
            b_mag[1] = b_mag[2];
            b_mag[2] = std::abs(Ops::to_double(block_sum));
        }

        if (k >= min_block && b_mag[0] >= 0.0) {
            bool small = b_mag[0] < tol / 10.0 && b_mag[1] < tol / 10.0 && b_mag[2] < tol / 10.0;
            double r1 = b_mag[1] > 0.0 ? b_mag[2] / b_mag[1] : 0.0;
            double r2 = b_mag[0] > 0.0 ? b_mag[1] / b_mag[0] : 0.0;
            if (small && r1 <= 0.95 && r2 <= 0.95) {
                double r = std::min(0.95, std::max({r1, r2, 0.1}));
                out.tail_bound = b_mag[2] * r / (1.0 - r);
                out.converged = true;
                break;
            }
        }

        if (out.terms > term_cap || k > block_cap) {
            out.converged = false;
            break;
        }
    }

    if constexpr (std::is_same_v<Real, double>) total += comp;
    out.value = Ops::to_double(total);
    out.round_err = err_acc + 4.0 * RealOps<Real>::eps * max_mag;
    out.log10_cancel = max_mag > 0.0 ? std::log10(max_mag) : 0.0;
    return out;
}

} // namespace mlfrac::detail
