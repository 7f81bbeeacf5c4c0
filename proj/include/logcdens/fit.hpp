#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "logcdens/weighted_sample.hpp"

namespace logcdens {

//! Outcome of one solver run.
struct SolverReport {
  int iterations = 0;
  std::vector<double> objective_trace;
  double stationarity_residual = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
};

//! Fitted piecewise-exponential density.
//!
//! The log-density is continuous and piecewise linear between the
//! knots with nonincreasing slopes, and the density is zero outside
//! [knots.front(), knots.back()]. The per-knot CDF and survival values
//! are derived deterministically from (knots, log_density) alone, so a
//! fit rebuilt from a serialized artifact reproduces them bit for bit.
class LogConcaveFit {
public:
  LogConcaveFit(Eigen::VectorXd knots,
                Eigen::VectorXd log_density,
                SolverReport report = {},
                std::optional<WeightedSample> sample = std::nullopt);

  const Eigen::VectorXd& knots() const { return knots_; }
  const Eigen::VectorXd& log_density() const { return log_density_; }
  const Eigen::VectorXd& cdf_at_knots() const { return cdf_; }
  const Eigen::VectorXd& survival_at_knots() const { return survival_; }
  const SolverReport& report() const { return report_; }
  const std::optional<WeightedSample>& sample() const { return sample_; }

  Eigen::Index size() const { return knots_.size(); }
  double support_min() const { return knots_[0]; }
  double support_max() const { return knots_[knots_.size() - 1]; }
  //! Total mass, 1 within 1e-10 for solver-produced fits.
  double total_mass() const { return cdf_[cdf_.size() - 1]; }

private:
  Eigen::VectorXd knots_;
  Eigen::VectorXd log_density_;
  Eigen::VectorXd cdf_;
  Eigen::VectorXd survival_;
  SolverReport report_;
  std::optional<WeightedSample> sample_;
};

} // namespace logcdens
