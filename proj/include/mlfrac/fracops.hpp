#pragma once

// Discrete fractional-calculus operators on sampled functions:
// Riemann-Liouville integrals and derivatives, Caputo derivatives, and the
// triangular product-integration solver for the multi-term Abel equation
//   sum_j q_j J^(1-alpha_j) mu = rho.

#include <cstddef>
#include <vector>

namespace mlfrac::fracops {

// Exponents and weights (alpha_1..alpha_m, q_1..q_m) of the multi-term
// operator sum_j q_j d^alpha_j/dt^alpha_j. Orders strictly decreasing in
// (0,1); weights positive with q_1 = 1.
struct FractionalOrders {
    std::vector<double> alpha;
    std::vector<double> q;

    FractionalOrders(std::vector<double> alpha_, std::vector<double> q_);
    std::size_t m() const { return alpha.size(); }
};

// Time grid t_k = T (k/K)^r, k = 0..K. r = 1 is the uniform grid.
struct TimeGrid {
    double horizon = 0.0;
    double grading = 1.0;
    std::vector<double> t;

    TimeGrid() = default;
    TimeGrid(double T, std::size_t K, double r);
    static TimeGrid uniform(double T, std::size_t K) { return TimeGrid(T, K, 1.0); }

    std::size_t steps() const { return t.empty() ? 0 : t.size() - 1; }
    bool is_uniform() const { return grading == 1.0; }
};

// Recommended grading exponent for operators consuming inputs with a
// t^(alpha_1 - 1) singularity: r = min(2/alpha_1, 4).
double default_grading(const FractionalOrders& orders);

// A function sampled on a TimeGrid. With singular_exponent p < 0 the stored
// object is the cofactor representation f(t) = t^p c(t), c piecewise linear:
// values[i] = f(t_i) for i >= 1 and values[0] = lim_{t->0} t^(-p) f(t).
// p = 0 means plain piecewise-linear samples.
struct SampledFunction {
    TimeGrid grid;
    std::vector<double> values;
    double singular_exponent = 0.0;

    SampledFunction() = default;
    SampledFunction(TimeGrid g, std::vector<double> v, double p = 0.0);

    template <class F>
    static SampledFunction from_function(TimeGrid g, F&& f) {
        std::vector<double> v(g.t.size());
        for (std::size_t i = 0; i < g.t.size(); ++i) v[i] = f(g.t[i]);
        return SampledFunction(std::move(g), std::move(v), 0.0);
    }

    std::size_t size() const { return values.size(); }
    // cofactor c(t_i): equals values[i] for p = 0
    double cofactor(std::size_t i) const;
    // pointwise value; for p < 0 the value at t = 0 is +/-inf unless c(0) = 0
    double eval(double t) const;
    double sup_norm() const;
};

// Riemann-Liouville integral J^beta, exact product integration of the
// stored representation. Output singular exponent is min(p + beta, 0).
SampledFunction rl_integral(const SampledFunction& h, double beta);

// Caputo derivative via the L1 scheme; requires a regular input (p = 0).
SampledFunction caputo_derivative(const SampledFunction& h, double alpha);

// Riemann-Liouville derivative d/dt J^(1-beta), realized as product
// integration followed by half-node differencing. First-order accurate.
SampledFunction rl_derivative(const SampledFunction& h, double beta);

struct AbelSolution {
    SampledFunction mu;        // singular_exponent = alpha_1 - 1
    double forward_residual;   // sup_k |sum_j q_j J^(1-alpha_j) mu - rho| / max(1, sup|rho|)
    double min_diagonal;       // smallest triangular diagonal entry
};

// Solve sum_j q_j J^(1-alpha_j) mu = rho by collocation at the grid nodes in
// the singular-cofactor representation and lower-triangular back-substitution.
// residual_threshold: relative forward residual above which the solve is
// reported as failed (grid too coarse) instead of returning silently.
AbelSolution solve_abel_system(const SampledFunction& rho, const FractionalOrders& orders,
                               double residual_threshold = 1e-2);

// Product-integration weight matrix row for J^beta at target node t_k
// (weights of nodal values 0..k). Exposed for the positivity property:
// all weights are nonnegative. Row k = 0 is empty.
std::vector<double> rl_integral_weights(const SampledFunction& h, double beta, std::size_t k);

} // namespace mlfrac::fracops
