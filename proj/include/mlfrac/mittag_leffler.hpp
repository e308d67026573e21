#pragma once

// Multinomial Mittag-Leffler function
//
//   E_{beta, beta0}(z) = sum_k sum_{k1+...+km=k} (k; k1..km) prod z_j^kj / Gamma(beta0 + k.beta)
//
// evaluated by degree-block summation with compensated arithmetic and
// automatic escalation to extended precision when cancellation eats the
// requested tolerance, plus the structural identities used as checks
// (recurrence, remainder) and the modal solution factor
// 1 - lambda t^alpha1 E(...) with its time derivative.

#include "mlfrac/fracops.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mlfrac::ml {

struct MLArguments {
    double beta0 = 1.0;
    std::vector<double> beta;
    std::vector<double> z;

    MLArguments(double b0, std::vector<double> b, std::vector<double> zz);
    std::size_t m() const { return beta.size(); }
};

struct MLValue {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::int64_t terms_used = 0;
    bool precision_escalated = false;
};

// Exact multinomial coefficient k! / (k1! ... km!). Throws std::overflow_error
// once the exact value no longer fits in 64 bits.
std::uint64_t multinomial_coefficient(int k, std::span<const int> parts);

MLValue ml_eval(const MLArguments& args, double tol);

// |E(beta0) - 1/Gamma(beta0) - sum_j z_j E(beta0 + beta_j)| from m+1
// independent evaluations; valid for any beta0 > 0.
double ml_recurrence_residual(const MLArguments& args, double tol);

struct RemainderPair {
    double direct_tail = 0.0;    // blocks k >= ell of the defining series
    double identity_value = 0.0; // multinomial combination of shifted evaluations
};
RemainderPair ml_remainder(int ell, const MLArguments& args, double tol);

// Modal decay factor of the multi-term relaxation with rate lambda:
//   u(t)  = 1 - lambda t^alpha1 E_{beta', 1+alpha1}(z(t))   in [0, 1]
//   u'(t) = t^(alpha1 - 1) * du_cofactor(t)
// with beta' = (alpha1, alpha1-alpha2, ...) and
// z(t) = (-lambda t^alpha1, -q_2 t^(alpha1-alpha2), ...).
// Large arguments switch to the inverse-power expansion that the recurrence
// identity induces; both routes carry error estimates.
struct FactorValue {
    double u_factor = 1.0;
    double u_error = 0.0;
    double du_cofactor = 0.0; // u'(t) = t^(alpha1-1) * du_cofactor
    double du_error = 0.0;
    double du_singular_exponent = 0.0; // alpha1 - 1
    bool escalated = false;
    bool clamped = false;
};

FactorValue solution_factor(double lambda, const fracops::FractionalOrders& orders, double t,
                            double tol);

// u_factor alone; the evaluation hot path for modal sums, where the
// derivative is not needed and would double the cost.
struct DecayValue {
    double u = 1.0;
    double error = 0.0;
    bool escalated = false;
    bool clamped = false;
};
DecayValue decay_factor(double lambda, const fracops::FractionalOrders& orders, double t,
                        double tol);

// Empirical envelope constant: max of (1 + |z1|) E_{beta',1+alpha1}(z) over a
// (lambda, t) grid, frozen by callers that need a mode-truncation bound.
double envelope_constant(const fracops::FractionalOrders& orders);

} // namespace mlfrac::ml
