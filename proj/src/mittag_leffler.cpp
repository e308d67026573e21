#include "mlfrac/mittag_leffler.hpp"

#include "mlfrac/detail/compositions.hpp"
#include "mlfrac/detail/gamma_utils.hpp"
#include "mlfrac/detail/lgamma_big.hpp"
#include "mlfrac/detail/ml_series.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mlfrac::detail {

using Big50 = boost::multiprecision::cpp_bin_float_50;
using Big100 = boost::multiprecision::cpp_bin_float_100;

template <> struct RealOps<Big50> {
    static Big50 from(double x) { return Big50(x); }
    static double to_double(const Big50& x) { return x.convert_to<double>(); }
    static Big50 lgamma_fn(const Big50& x) { return lgamma_stirling_big(x, 50.0); }
    static Big50 exp_fn(const Big50& x) { return exp(x); }
    static Big50 ldexp_fn(const Big50& x, int n) { return ldexp(x, n); }
    static Big50 ln2() { return boost::math::constants::ln_two<Big50>(); }
    static constexpr double eps = 1e-49;
};

template <> struct RealOps<Big100> {
    static Big100 from(double x) { return Big100(x); }
    static double to_double(const Big100& x) { return x.convert_to<double>(); }
    static Big100 lgamma_fn(const Big100& x) { return lgamma_stirling_big(x, 100.0); }
    static Big100 exp_fn(const Big100& x) { return exp(x); }
    static Big100 ldexp_fn(const Big100& x, int n) { return ldexp(x, n); }
    static Big100 ln2() { return boost::math::constants::ln_two<Big100>(); }
    static constexpr double eps = 1e-99;
};

double series_peak_log(std::span<const double> beta, std::span<const double> z) {
    double s = 0.0;
    for (double v : z) s += std::abs(v);
    if (s <= 1.0) return 1.0;
    // f(g) = sum |z_j| g^(-beta_j) is decreasing; bisect f(g) = 1 on [1, 1e12]
    double lo = 1.0, hi = 1e12;
    for (int it = 0; it < 200; ++it) {
        double mid = std::sqrt(lo * hi);
        double f = 0.0;
        for (std::size_t j = 0; j < z.size(); ++j)
            f += std::abs(z[j]) * std::pow(mid, -beta[j]);
        (f > 1.0 ? lo : hi) = mid;
        if (hi / lo < 1.0 + 1e-12) break;
    }
    return std::sqrt(lo * hi);
}

double series_digits_needed(std::span<const double> beta, std::span<const double> z, double tol) {
    double peak = series_peak_log(beta, z);
    return peak / 2.302585092994046 - std::log10(std::max(tol, 1e-300)) + 3.0;
}

} // namespace mlfrac::detail

namespace mlfrac::ml {

using detail::SeriesOutcome;

MLArguments::MLArguments(double b0, std::vector<double> b, std::vector<double> zz)
    : beta0(b0), beta(std::move(b)), z(std::move(zz)) {
    if (!(beta0 > 0.0) || !std::isfinite(beta0))
        throw std::invalid_argument("ml arguments: beta0 must be positive");
    if (beta.empty() || beta.size() != z.size())
        throw std::invalid_argument("ml arguments: beta and z must be nonempty, equal length");
    for (double bj : beta)
        if (!(bj > 0.0) || !(bj < 1.0))
            throw std::invalid_argument("ml arguments: each beta_j must lie in (0, 1)");
    for (double zj : z)
        if (!std::isfinite(zj)) throw std::invalid_argument("ml arguments: z must be finite");
}

std::uint64_t multinomial_coefficient(int k, std::span<const int> parts) {
    long long sum = 0;
    for (int p : parts) {
        if (p < 0) throw std::invalid_argument("multinomial: parts must be nonnegative");
        sum += p;
    }
    if (sum != k) throw std::invalid_argument("multinomial: parts must sum to k");
    unsigned __int128 acc = 1;
    long long n = 0;
    for (int p : parts) {
        for (int i = 1; i <= p; ++i) {
            ++n;
            acc = acc * static_cast<unsigned __int128>(n) / static_cast<unsigned>(i);
            if (acc > static_cast<unsigned __int128>(UINT64_MAX))
                throw std::overflow_error(
                    "multinomial: value exceeds 64 bits; reduce k or use a big-integer path");
        }
    }
    return static_cast<std::uint64_t>(acc);
}

namespace {

constexpr double kDigitsDouble = 14.0;
constexpr double kDigitsDD = 31.0;
constexpr double kDigitsBig50 = 46.0;
constexpr double kDigitsBig100 = 94.0;
constexpr double kZMax = 200.0;
constexpr std::int64_t kTermCap = 1000000;

MLValue eval_with_escalation(double beta0, std::span<const double> beta,
                             std::span<const double> z, double tol, int start_block) {
    MLValue result;

    auto finish = [&](const SeriesOutcome& o, bool escalated) {
        result.value = o.value;
        result.abs_error_estimate = o.round_err + o.tail_bound;
        result.terms_used = std::max<std::int64_t>(1, o.terms);
        result.precision_escalated = escalated;
        return result;
    };
    auto good = [&](const SeriesOutcome& o) {
        return o.converged && !o.overflowed && o.round_err + o.tail_bound <= tol;
    };

    SeriesOutcome d = detail::sum_ml_series<double>(beta0, beta, z, tol, start_block, kTermCap);
    bool cancel_rule = !d.overflowed && d.converged &&
                       d.log10_cancel > 8.0 + std::log10(std::max(std::abs(d.value), tol));
    if (good(d) && !cancel_rule) return finish(d, false);
    if (!d.converged && !d.overflowed && d.terms > kTermCap)
        throw std::runtime_error("ml_eval: series did not converge within the term cap");

    double digits = d.overflowed
                        ? detail::series_digits_needed(beta, z, tol)
                        : d.log10_cancel - std::log10(std::max(tol, 1e-300)) + 3.0;
    double zmax = 0.0;
    for (double v : z) zmax = std::max(zmax, std::abs(v));

    if (digits <= kDigitsDD) {
        SeriesOutcome e =
            detail::sum_ml_series<detail::DD>(beta0, beta, z, tol, start_block, kTermCap);
        if (good(e)) return finish(e, true);
    }
    if (digits <= kDigitsBig50) {
        SeriesOutcome e =
            detail::sum_ml_series<detail::Big50>(beta0, beta, z, tol, start_block, kTermCap);
        if (good(e)) return finish(e, true);
    }
    if (digits <= kDigitsBig100 && zmax <= kZMax) {
        SeriesOutcome e =
            detail::sum_ml_series<detail::Big100>(beta0, beta, z, tol, start_block, kTermCap);
        if (e.converged && !e.overflowed) return finish(e, true);
        throw std::runtime_error("ml_eval: series did not converge within the term cap");
    }
    throw std::domain_error(
        "ml_eval: arguments need about " + std::to_string(static_cast<int>(digits)) +
        " digits, beyond the extended-precision range (|z| <= " + std::to_string(kZMax) +
        " and " + std::to_string(static_cast<int>(kDigitsBig100)) + " digits)");
}

} // namespace

MLValue ml_eval(const MLArguments& args, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("ml_eval: tol must be positive");
    return eval_with_escalation(args.beta0, args.beta, args.z, tol, 0);
}

double ml_recurrence_residual(const MLArguments& args, double tol) {
    const std::size_t m = args.m();
    double each = tol / static_cast<double>(m + 1);
    MLValue lhs = ml_eval(args, each);
    double rhs = 1.0 / std::tgamma(args.beta0);
    for (std::size_t j = 0; j < m; ++j) {
        MLArguments shifted(args.beta0 + args.beta[j], args.beta, args.z);
        rhs += args.z[j] * ml_eval(shifted, each / std::max(1.0, std::abs(args.z[j]))).value;
    }
    return std::abs(lhs.value - rhs);
}

RemainderPair ml_remainder(int ell, const MLArguments& args, double tol) {
    if (ell < 1) throw std::invalid_argument("ml_remainder: ell must be >= 1");
    RemainderPair out;
    out.direct_tail = eval_with_escalation(args.beta0, args.beta, args.z, tol, ell).value;

    detail::CompositionEnumerator enumr(static_cast<int>(args.m()));
    detail::CompositionBlock blk = enumr.block(ell);
    double acc = 0.0;
    for (std::size_t i = 0; i < blk.count; ++i) {
        const int* c = blk.comp(i);
        double w = static_cast<double>(
            multinomial_coefficient(ell, std::span<const int>(c, args.m())));
        double shift = args.beta0;
        for (std::size_t j = 0; j < args.m(); ++j) {
            for (int r = 0; r < c[j]; ++r) w *= args.z[j];
            shift += c[j] * args.beta[j];
        }
        if (w == 0.0) continue;
        MLArguments shifted(shift, args.beta, args.z);
        double each = tol / (static_cast<double>(blk.count) * std::max(1.0, std::abs(w)));
        acc += w * ml_eval(shifted, each).value;
    }
    out.identity_value = acc;
    return out;
}

namespace {

// Arguments of the modal factor: beta' = (a1, a1-a2, ...),
// z(t) = (-lambda t^a1, -q_2 t^(a1-a2), ...).
void factor_arguments(double lambda, const fracops::FractionalOrders& o, double t,
                      std::vector<double>& beta, std::vector<double>& z) {
    const std::size_t m = o.m();
    const double a1 = o.alpha.front();
    beta.resize(m);
    z.resize(m);
    beta[0] = a1;
    z[0] = -lambda * std::pow(t, a1);
    for (std::size_t j = 1; j < m; ++j) {
        beta[j] = a1 - o.alpha[j];
        z[j] = -o.q[j] * std::pow(t, a1 - o.alpha[j]);
    }
}

struct AsymValue {
    double u = 0.0, u_err = 0.0;
    double du = 0.0, du_err = 0.0; // du is the actual derivative value
};

// Inverse-power expansion of the factor for large arguments:
//   u(t)  ~ sum_i (-1)^i lambda^-(i+1) sum_{|I|=i} (i;I) prod q^I
//             sum_l q_l t^-(I.alpha + alpha_l) / Gamma(1 - I.alpha - alpha_l)
// and termwise differentiation for u'. Divergent-tail truncation at the
// smallest term; the first omitted block is the error estimate.
AsymValue asym_factor(double lambda, const fracops::FractionalOrders& o, double t,
                      double tol_floor, bool with_du) {
    const int m = static_cast<int>(o.m());
    detail::CompositionEnumerator enumr(m);
    const double ln_t = std::log(t);

    // divergent-tail truncation: keep the partial sum seen at the smallest
    // block so far; the error estimate is that block with a safety factor
    struct Track {
        double sum = 0.0, best = 0.0;
        double min_mag = std::numeric_limits<double>::infinity();
        bool active = true;
        void feed(double b, double floor) {
            if (!active) return;
            // identically vanishing powers (reciprocal Gamma at a pole) carry
            // no truncation information; skip them
            if (b == 0.0) return;
            if (std::abs(b) > 4.0 * min_mag) { active = false; return; }
            sum += b;
            if (std::abs(b) < min_mag) { min_mag = std::abs(b); best = sum; }
            if (min_mag <= floor) active = false;
        }
    } u_tr, du_tr;
    du_tr.active = with_du;

    double lam_pow = 1.0 / lambda;
    double sign = 1.0;

    std::vector<double> p(1, 1.0), p_next;
    for (int i = 0; i < 64 && (u_tr.active || du_tr.active); ++i) {
        detail::CompositionBlock blk = enumr.block(i);
        if (i > 0) {
            p_next.assign(blk.count, 0.0);
            for (std::size_t n = 0; n < blk.count; ++n) {
                double acc = 0.0;
                const std::int64_t* pred = blk.pred.data() + n * m;
                for (int j = 0; j < m; ++j)
                    if (pred[j] >= 0) acc += o.q[j] * p[static_cast<std::size_t>(pred[j])];
                p_next[n] = acc;
            }
            p.swap(p_next);
        }

        double au = 0.0, ad = 0.0;
        for (std::size_t n = 0; n < blk.count; ++n) {
            const int* c = blk.comp(n);
            double dot = 0.0;
            for (int j = 0; j < m; ++j) dot += c[j] * o.alpha[j];
            for (int l = 0; l < m; ++l) {
                double g = dot + o.alpha[l];
                double tp = std::exp(-g * ln_t);
                au += p[n] * o.q[l] * tp * detail::inv_gamma(1.0 - g);
                if (du_tr.active) ad += p[n] * o.q[l] * tp / t * detail::inv_gamma(-g);
            }
        }
        u_tr.feed(sign * lam_pow * au, tol_floor);
        du_tr.feed(sign * lam_pow * ad, tol_floor / std::max(t, 1.0));
        lam_pow /= lambda;
        sign = -sign;
    }

    AsymValue out;
    out.u = u_tr.best;
    out.u_err = std::max(10.0 * u_tr.min_mag, std::abs(u_tr.best) * 5e-15 + 1e-300);
    out.du = du_tr.best;
    out.du_err = std::max(10.0 * du_tr.min_mag, std::abs(du_tr.best) * 5e-15 + 1e-300);
    return out;
}

FactorValue factor_core(double lambda, const fracops::FractionalOrders& orders, double t,
                        double tol, bool with_du) {
    if (!(lambda > 0.0)) throw std::invalid_argument("solution_factor: lambda must be positive");
    if (!(t >= 0.0)) throw std::invalid_argument("solution_factor: t must be nonnegative");
    if (!(tol > 0.0)) throw std::invalid_argument("solution_factor: tol must be positive");

    const double a1 = orders.alpha.front();
    FactorValue fv;
    fv.du_singular_exponent = a1 - 1.0;
    if (t == 0.0) {
        fv.u_factor = 1.0;
        fv.du_cofactor = -lambda / std::tgamma(a1);
        return fv;
    }

    std::vector<double> beta, z;
    factor_arguments(lambda, orders, t, beta, z);
    const double x = -z[0]; // lambda t^a1

    auto series_route = [&]() {
        MLValue e1 = eval_with_escalation(1.0 + a1, beta, z, tol / std::max(1.0, x), 0);
        fv.u_factor = 1.0 - x * e1.value;
        fv.u_error = x * e1.abs_error_estimate + 4e-16;
        fv.escalated = e1.precision_escalated;
        if (with_du) {
            MLValue e2 = eval_with_escalation(a1, beta, z, tol / std::max(1.0, lambda), 0);
            fv.du_cofactor = -lambda * e2.value;
            fv.du_error = lambda * e2.abs_error_estimate;
            fv.escalated = fv.escalated || e2.precision_escalated;
        }
    };
    auto asym_route = [&](const AsymValue& a) {
        fv.u_factor = a.u;
        fv.u_error = a.u_err;
        if (with_du) {
            double lift = std::pow(t, 1.0 - a1);
            fv.du_cofactor = a.du * lift;
            fv.du_error = a.du_err * lift;
        }
    };

    double digits = detail::series_digits_needed(beta, z, tol / std::max(1.0, x));
    if (digits <= kDigitsDouble) {
        series_route();
    } else {
        AsymValue a = asym_factor(lambda, orders, t, tol / 16.0, with_du);
        double worst = a.u_err;
        if (with_du) worst = std::max(worst, a.du_err * std::pow(t, 1.0 - a1));
        if (worst <= tol / 2.0) {
            asym_route(a);
        } else if (digits <= kDigitsDD) {
            series_route();
        } else if (worst <= tol) {
            asym_route(a);
        } else if (digits <= kDigitsBig100) {
            series_route();
        } else {
            throw std::domain_error(
                "solution_factor: arguments beyond evaluator range (series needs " +
                std::to_string(static_cast<int>(digits)) + " digits, expansion error " +
                std::to_string(worst) + ")");
        }
    }

    if (fv.u_factor < -tol || fv.u_factor > 1.0 + tol) fv.clamped = true;
    fv.u_factor = std::clamp(fv.u_factor, 0.0, 1.0);
    return fv;
}

} // namespace

FactorValue solution_factor(double lambda, const fracops::FractionalOrders& orders, double t,
                            double tol) {
    return factor_core(lambda, orders, t, tol, true);
}

DecayValue decay_factor(double lambda, const fracops::FractionalOrders& orders, double t,
                        double tol) {
    FactorValue f = factor_core(lambda, orders, t, tol, false);
    return DecayValue{f.u_factor, f.u_error, f.escalated, f.clamped};
}

double envelope_constant(const fracops::FractionalOrders& orders) {
    const double a1 = orders.alpha.front();
    double c_env = 1.0 / std::tgamma(1.0 + a1); // z = 0 limit
    for (int il = 0; il <= 12; ++il) {
        double lambda = 0.25 * std::pow(2.0, il);
        for (int it = 0; it <= 12; ++it) {
            double t = 1e-3 * std::pow(10.0, it * 4.0 / 12.0); // up to 10
            double x = lambda * std::pow(t, a1);
            try {
                double e;
                if (x >= 1e-4) {
                    FactorValue f = solution_factor(lambda, orders, t, 1e-8);
                    e = (1.0 - f.u_factor) / x;
                } else {
                    std::vector<double> beta, z;
                    factor_arguments(lambda, orders, t, beta, z);
                    e = eval_with_escalation(1.0 + a1, beta, z, 1e-10, 0).value;
                }
                c_env = std::max(c_env, (1.0 + x) * e);
            } catch (const std::exception&) {
                // grid point beyond evaluator range; the envelope is a heuristic bound
            }
        }
    }
    return c_env;
}

} // namespace mlfrac::ml
