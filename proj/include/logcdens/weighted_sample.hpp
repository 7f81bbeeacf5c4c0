#pragma once

#include <Eigen/Dense>
#include <optional>

namespace logcdens {

//! Sorted distinct data points with positive weights.
//!
//! Duplicates in the raw data are merged into weights, so the point
//! vector is strictly increasing with at least two entries. Fractional
//! weights carry EM responsibilities through the same code path as
//! plain samples (unit weights reproduce the unweighted case exactly).
class WeightedSample {
public:
  const Eigen::VectorXd& points() const { return points_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  double total_weight() const { return total_weight_; }
  Eigen::Index size() const { return points_.size(); }

  friend WeightedSample prepare_sample(const Eigen::VectorXd& raw,
                                       const std::optional<Eigen::VectorXd>& weights);

private:
  WeightedSample() = default;

  Eigen::VectorXd points_;
  Eigen::VectorXd weights_;
  double total_weight_ = 0.0;
};

//! Sort, merge duplicates, and validate a raw sample.
//!
//! Missing weights default to 1 per raw value. Throws DegenerateSample
//! when fewer than two distinct points remain and InvalidData on
//! nonfinite values or nonpositive weights.
WeightedSample prepare_sample(const Eigen::VectorXd& raw,
                              const std::optional<Eigen::VectorXd>& weights = std::nullopt);

} // namespace logcdens
