#pragma once

#include <Eigen/Dense>

#include "logcdens/weighted_sample.hpp"

namespace logcdens {

//! Optimization variables of the piecewise-linear log-density.
//!
//! phi1 is the log-density at the first point, slopes[k] the slope on
//! segment (x_k, x_{k+1}), k = 0..n-2. Membership in the feasibility
//! cone means the slopes are nonincreasing; the objective itself is
//! defined for arbitrary real vectors.
struct ConcaveParams {
  double phi1 = 0.0;
  Eigen::VectorXd slopes;

  //! Flat vector (phi1, slopes...), the layout used by gradients.
  Eigen::VectorXd to_vector() const;
  static ConcaveParams from_vector(const Eigen::VectorXd& v);

  //! True when the slopes are nonincreasing.
  bool feasible() const;
};

//! Log-density values at the sample points: phi1 plus accumulated slopes.
Eigen::VectorXd log_density_at_knots(const ConcaveParams& params, const WeightedSample& sample);

//! Inverse transform: recover (phi1, slopes) from per-knot log-densities.
ConcaveParams params_from_knots(const Eigen::VectorXd& points, const Eigen::VectorXd& log_density);

} // namespace logcdens
