#include "mlfrac/fracops.hpp"

#include "mlfrac/detail/kernel_moments.hpp"
#include "mlfrac/detail/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mlfrac::fracops {

using detail::hat_weights;
using detail::PanelMoments;
using detail::singular_moments;

FractionalOrders::FractionalOrders(std::vector<double> alpha_, std::vector<double> q_)
    : alpha(std::move(alpha_)), q(std::move(q_)) {
    if (alpha.empty()) throw std::invalid_argument("orders: m must be >= 1");
    if (alpha.size() != q.size())
        throw std::invalid_argument("orders: alpha and q must have the same length");
    double prev = 1.0;
    for (double a : alpha) {
        if (!(a > 0.0) || !(a < prev))
            throw std::invalid_argument(
                "orders: exponents must satisfy 1 > alpha_1 > ... > alpha_m > 0");
        prev = a;
    }
    if (q.front() != 1.0) throw std::invalid_argument("orders: q_1 must equal 1");
    for (double w : q)
        if (!(w > 0.0)) throw std::invalid_argument("orders: weights must be positive");
}

TimeGrid::TimeGrid(double T, std::size_t K, double r) : horizon(T), grading(r) {
    if (!(T > 0.0)) throw std::invalid_argument("time grid: horizon must be positive");
    if (K < 1) throw std::invalid_argument("time grid: need at least one step");
    if (!(r >= 1.0)) throw std::invalid_argument("time grid: grading exponent must be >= 1");
    t.resize(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        double ratio = static_cast<double>(k) / static_cast<double>(K);
        t[k] = r == 1.0 ? T * ratio : T * std::pow(ratio, r);
    }
    t[K] = T;
}

double default_grading(const FractionalOrders& orders) {
    return std::min(2.0 / orders.alpha.front(), 4.0);
}

SampledFunction::SampledFunction(TimeGrid g, std::vector<double> v, double p)
    : grid(std::move(g)), values(std::move(v)), singular_exponent(p) {
    if (values.size() != grid.t.size())
        throw std::invalid_argument("sampled function: values must match grid nodes");
    if (!(singular_exponent > -1.0) || singular_exponent > 0.0)
        throw std::invalid_argument("sampled function: singular exponent must lie in (-1, 0]");
}

double SampledFunction::cofactor(std::size_t i) const {
    if (singular_exponent == 0.0 || i == 0) return values[i];
    return values[i] * std::pow(grid.t[i], -singular_exponent);
}

double SampledFunction::eval(double t) const {
    const auto& ts = grid.t;
    if (t < ts.front() || t > ts.back())
        throw std::domain_error("sampled function: evaluation outside the grid");
    if (t == 0.0) {
        if (singular_exponent == 0.0) return values[0];
        return values[0] == 0.0 ? 0.0
                                : std::copysign(std::numeric_limits<double>::infinity(), values[0]);
    }
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - ts.begin())) - 1;
    if (i >= grid.steps()) i = grid.steps() - 1;
    double w = (t - ts[i]) / (ts[i + 1] - ts[i]);
    double c = cofactor(i) * (1.0 - w) + cofactor(i + 1) * w;
    return singular_exponent == 0.0 ? c : c * std::pow(t, singular_exponent);
}

double SampledFunction::sup_norm() const {
    double m = 0.0;
    for (std::size_t i = (singular_exponent < 0.0 ? 1u : 0u); i < values.size(); ++i)
        m = std::max(m, std::abs(values[i]));
    return m;
}

namespace {

// weights of the nodal cofactors 0..k for integral_0^{t_k} (t_k-s)^(b-1) s^p c(s) ds
void cofactor_row(const std::vector<double>& ts, std::size_t k, double b, double p,
                  std::vector<double>& row) {
    row.assign(k + 1, 0.0);
    double tk = ts[k];
    for (std::size_t i = 0; i < k; ++i) {
        PanelMoments m = singular_moments(tk, ts[i], ts[i + 1], b, p);
        auto [wl, wr] = hat_weights(m, ts[i], ts[i + 1]);
        row[i] += wl;
        row[i + 1] += wr;
    }
}

} // namespace

std::vector<double> rl_integral_weights(const SampledFunction& h, double beta, std::size_t k) {
    if (!(beta > 0.0) || beta > 1.0)
        throw std::invalid_argument("rl_integral: beta must lie in (0, 1]");
    if (k >= h.grid.t.size()) throw std::out_of_range("rl_integral_weights: node index");
    std::vector<double> row;
    if (k == 0) return row;
    cofactor_row(h.grid.t, k, beta, h.singular_exponent, row);
    double g = std::tgamma(beta);
    for (double& w : row) w /= g;
    return row;
}

SampledFunction rl_integral(const SampledFunction& h, double beta) {
    if (!(beta > 0.0) || beta > 1.0)
        throw std::invalid_argument("rl_integral: beta must lie in (0, 1]");
    if (h.values.empty() || h.grid.steps() == 0)
        throw std::invalid_argument("rl_integral: empty grid");

    const auto& ts = h.grid.t;
    const std::size_t K = h.grid.steps();
    const double p = h.singular_exponent;
    const double inv_gb = 1.0 / std::tgamma(beta);

    std::vector<double> cof(K + 1);
    for (std::size_t i = 0; i <= K; ++i) cof[i] = h.cofactor(i);

    std::vector<double> out(K + 1, 0.0);
    detail::parallel_for(K, [&](std::size_t idx) {
        std::size_t k = idx + 1;
        double tk = ts[k];
        double acc = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            PanelMoments m = singular_moments(tk, ts[i], ts[i + 1], beta, p);
            auto [wl, wr] = hat_weights(m, ts[i], ts[i + 1]);
            acc += wl * cof[i] + wr * cof[i + 1];
        }
        out[k] = acc * inv_gb;
    });

    double p_out = p + beta;
    if (p_out < 0.0) {
        // leading power: J^beta t^p ~ Gamma(p+1)/Gamma(p+1+beta) t^(p+beta)
        out[0] = cof[0] * std::tgamma(p + 1.0) / std::tgamma(p + 1.0 + beta);
        return SampledFunction(h.grid, std::move(out), p_out);
    }
    if (p_out == 0.0)
        out[0] = cof[0] * std::tgamma(p + 1.0);
    else
        out[0] = 0.0;
    return SampledFunction(h.grid, std::move(out), 0.0);
}

SampledFunction caputo_derivative(const SampledFunction& h, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("caputo_derivative: alpha must lie in (0, 1)");
    if (h.singular_exponent < 0.0)
        throw std::invalid_argument("caputo_derivative: singular inputs are not supported");
    if (h.values.empty() || h.grid.steps() == 0)
        throw std::invalid_argument("caputo_derivative: empty grid");

    const auto& ts = h.grid.t;
    const std::size_t K = h.grid.steps();
    const double inv_g = 1.0 / std::tgamma(1.0 - alpha);

    std::vector<double> slope(K);
    for (std::size_t i = 0; i < K; ++i)
        slope[i] = (h.values[i + 1] - h.values[i]) / (ts[i + 1] - ts[i]);

    std::vector<double> out(K + 1, 0.0);
    detail::parallel_for(K, [&](std::size_t idx) {
        std::size_t k = idx + 1;
        double tk = ts[k];
        double acc = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            acc += slope[i] * detail::regular_moments(tk, ts[i], ts[i + 1], 1.0 - alpha).m0;
        out[k] = acc * inv_g;
    });
    return SampledFunction(h.grid, std::move(out), 0.0);
}

SampledFunction rl_derivative(const SampledFunction& h, double beta) {
    if (!(beta > 0.0) || !(beta < 1.0))
        throw std::invalid_argument("rl_derivative: beta must lie in (0, 1)");
    double p_out = h.singular_exponent - beta;
    if (p_out <= -1.0)
        throw std::invalid_argument("rl_derivative: result is not integrable at t = 0");

    SampledFunction g = rl_integral(h, 1.0 - beta);
    const auto& ts = h.grid.t;
    const std::size_t K = h.grid.steps();
    if (K < 2) throw std::invalid_argument("rl_derivative: need at least two steps");

    // g function values; for a singular g the node-0 value is unusable, so the
    // first half-node slope starts from panel 1.
    std::vector<double> gv(K + 1);
    gv[0] = g.singular_exponent < 0.0 ? std::numeric_limits<double>::quiet_NaN() : g.values[0];
    for (std::size_t i = 1; i <= K; ++i) gv[i] = g.values[i];

    std::vector<double> half(K); // derivative at midpoints of panels
    for (std::size_t i = 0; i < K; ++i) half[i] = (gv[i + 1] - gv[i]) / (ts[i + 1] - ts[i]);

    std::vector<double> out(K + 1, 0.0);
    for (std::size_t i = 1; i < K; ++i) {
        double hl = ts[i] - ts[i - 1], hr = ts[i + 1] - ts[i];
        double dl = half[i - 1], dr = half[i];
        if (std::isnan(dl)) { out[i] = dr; continue; }
        out[i] = (hr * dl + hl * dr) / (hl + hr);
    }
    out[K] = half[K - 1];

    double c0 = h.cofactor(0);
    if (p_out < 0.0) {
        // D^beta t^p ~ Gamma(p+1)/Gamma(p+1-beta) t^(p-beta)
        out[0] = c0 * std::tgamma(h.singular_exponent + 1.0) /
                 std::tgamma(h.singular_exponent + 1.0 - beta);
        return SampledFunction(h.grid, std::move(out), p_out);
    }
    out[0] = std::isnan(gv[0]) ? out[1] : half[0];
    return SampledFunction(h.grid, std::move(out), 0.0);
}

AbelSolution solve_abel_system(const SampledFunction& rho, const FractionalOrders& orders,
                               double residual_threshold) {
    if (rho.singular_exponent != 0.0)
        throw std::invalid_argument("abel solve: rho must be a regular sampled function");
    const auto& ts = rho.grid.t;
    const std::size_t K = rho.grid.steps();
    if (K < 2) throw std::invalid_argument("abel solve: need at least two steps");

    const double alpha1 = orders.alpha.front();
    const double p = alpha1 - 1.0;
    const std::size_t m = orders.m();

    // Rows of the collocation system for the cofactor unknowns c_0..c_K.
    std::vector<std::vector<double>> rows(K);
    detail::parallel_for(K, [&](std::size_t idx) {
        std::size_t k = idx + 1;
        std::vector<double>& row = rows[idx];
        row.assign(k + 1, 0.0);
        std::vector<double> part;
        for (std::size_t j = 0; j < m; ++j) {
            double b = 1.0 - orders.alpha[j];
            double scale = orders.q[j] / std::tgamma(b);
            double tk = ts[k];
            for (std::size_t i = 0; i < k; ++i) {
                PanelMoments mm = singular_moments(tk, ts[i], ts[i + 1], b, p);
                auto [wl, wr] = hat_weights(mm, ts[i], ts[i + 1]);
                row[i] += scale * wl;
                row[i + 1] += scale * wr;
            }
        }
    });

    // anchor: the leading singular amplitude is fixed by rho(0)
    std::vector<double> c(K + 1, 0.0);
    c[0] = rho.values[0] / std::tgamma(alpha1);

    double min_diag = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= K; ++k) {
        const auto& row = rows[k - 1];
        double diag = row[k];
        min_diag = std::min(min_diag, diag);
        if (!(diag > 0.0) || !std::isfinite(diag))
            throw std::runtime_error("abel solve: degenerate triangular diagonal (grid issue)");
        double acc = rho.values[k];
        for (std::size_t i = 0; i < k; ++i) acc -= row[i] * c[i];
        c[k] = acc / diag;
    }

    std::vector<double> mu_vals(K + 1);
    mu_vals[0] = c[0];
    for (std::size_t k = 1; k <= K; ++k) mu_vals[k] = c[k] * std::pow(ts[k], p);
    SampledFunction mu(rho.grid, std::move(mu_vals), p);

    // forward residual through the public operator
    double sup_rho = rho.sup_norm();
    std::vector<double> fwd(K + 1, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        SampledFunction Jmu = rl_integral(mu, 1.0 - orders.alpha[j]);
        for (std::size_t k = 0; k <= K; ++k)
            fwd[k] += orders.q[j] * (k == 0 && Jmu.singular_exponent < 0.0 ? 0.0 : Jmu.values[k]);
    }
    double resid = 0.0;
    for (std::size_t k = 1; k <= K; ++k) resid = std::max(resid, std::abs(fwd[k] - rho.values[k]));
    double rel = resid / (sup_rho > 0.0 ? sup_rho : 1.0);
    if (rel > residual_threshold)
        throw std::runtime_error("abel solve: forward residual " + std::to_string(rel) +
                                 " exceeds threshold; grid too coarse for these orders");
    return AbelSolution{std::move(mu), rel, min_diag};
}

} // namespace mlfrac::fracops
