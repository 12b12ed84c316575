#pragma once

#include <span>

#include "matls/estimators.hpp"
#include "matls/linalg.hpp"

/// Ground-truth evaluation of the weighted least-squares cost and a dense
/// brute-force minimizer. Everything here is deliberately naive: the cost is
/// summed term by term, the minimizer always assembles the full mn x mn
/// normal equations and solves them with its own pivoted elimination. No
/// update code is shared with the estimators, so agreement between the two
/// paths is evidence rather than tautology.
namespace matls::oracle {

/// Full-weight cost: sum_i vec(y_i - phi_i th)^T Gbar_i vec(y_i - phi_i th)
/// plus vec(th - theta0)^T Rbar vec(th - theta0). Any weight/reg variant is
/// embedded upward into the full form first.
double eval_cost_full(const Mat& theta_hat, std::span<const Measurement> data, const RegSpec& reg,
                      const WeightSchedule& weights);

/// Column-decomposed cost: sum over columns j of the per-column quadratics.
/// Requires per-column or shared specs.
double eval_cost_columnwise(const Mat& theta_hat, std::span<const Measurement> data, const RegSpec& reg,
                            const WeightSchedule& weights);

/// Trace-form cost: tr[ sum_i (y_i - phi_i th)^T G_i (y_i - phi_i th)
/// + (th - theta0)^T R (th - theta0) ]. Requires shared specs.
double eval_cost_trace(const Mat& theta_hat, std::span<const Measurement> data, const RegSpec& reg,
                       const WeightSchedule& weights);

/// Evaluates the cost form matching the regularization variant.
double eval_cost(const Mat& theta_hat, std::span<const Measurement> data, const RegSpec& reg,
                 const WeightSchedule& weights);

/// Unique minimizer via the full dense normal equations, returned as n x m.
/// With no data this is theta0.
Mat brute_force_minimizer(std::span<const Measurement> data, const RegSpec& reg,
                          const WeightSchedule& weights);

/// Frobenius norm of the central-difference gradient of the matching cost
/// form. The per-entry step is h * (1 + |entry|).
double grad_norm_fd(const Mat& theta_hat, std::span<const Measurement> data, const RegSpec& reg,
                    const WeightSchedule& weights, double h);

}  // namespace matls::oracle
