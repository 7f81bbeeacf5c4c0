#pragma once

#include <Eigen/Dense>
#include <optional>

#include "logcdens/params.hpp"
#include "logcdens/weighted_sample.hpp"

namespace logcdens {

//! Objective value with optional analytic gradient in the
//! (phi1, slopes...) layout.
struct ObjectiveValue {
  double value = 0.0;
  std::optional<Eigen::VectorXd> gradient;
};

//! Full evaluation used by the solver: value, gradient, and the
//! magnitudes of the diagonal second derivatives (all nonnegative
//! since the objective is concave).
struct ObjectiveEval {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::VectorXd curvature;
};

//! The finite-dimensional log-likelihood objective
//!   W*phi1 + sum_k tail_k * delta_k * s_k - W * integral of exp(phi)
//! where tail_k is the weight mass at or right of the segment end and
//! the integral is the closed-form piecewise-exponential expression.
//! Defined for any real parameter vector; feasibility is the solver's
//! concern. All accumulation happens in the log domain.
ObjectiveValue objective(const ConcaveParams& params,
                         const WeightedSample& sample,
                         bool with_gradient = false);

//! Value, gradient, and diagonal curvature in one pass.
ObjectiveEval evaluate_objective(const ConcaveParams& params, const WeightedSample& sample);

//! log of integral of exp(phi) over the sample range.
double log_integral_exp(const ConcaveParams& params, const WeightedSample& sample);

//! Worst componentwise deviation between the analytic gradient and a
//! central finite difference with step h, measured relative to
//! max(1, |analytic|, |numeric|).
double gradient_check(const ConcaveParams& params, const WeightedSample& sample, double h);

} // namespace logcdens
