#include "logcdens/weighted_sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "logcdens/errors.hpp"

namespace logcdens {

WeightedSample prepare_sample(const Eigen::VectorXd& raw,
                              const std::optional<Eigen::VectorXd>& weights)
{
  const Eigen::Index n = raw.size();
  if (n == 0) {
    throw DegenerateSample("prepare_sample: empty sample");
  }
  if (weights && weights->size() != n) {
    throw InvalidData("prepare_sample: weights length does not match data length");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(raw[i])) {
      throw InvalidData("prepare_sample: nonfinite data value");
    }
    if (weights) {
      const double w = (*weights)[i];
      if (!std::isfinite(w) || w <= 0.0) {
        throw InvalidData("prepare_sample: weights must be finite and positive");
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return raw[a] < raw[b]; });

  std::vector<double> pts;
  std::vector<double> wts;
  pts.reserve(static_cast<std::size_t>(n));
  wts.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index idx : order) {
    const double x = raw[idx];
    const double w = weights ? (*weights)[idx] : 1.0;
    if (!pts.empty() && x == pts.back()) {
      wts.back() += w;
    } else {
      pts.push_back(x);
      wts.push_back(w);
    }
  }

  if (pts.size() < 2) {
    throw DegenerateSample("prepare_sample: need at least 2 distinct points");
  }

  WeightedSample out;
  out.points_ = Eigen::Map<const Eigen::VectorXd>(pts.data(), static_cast<Eigen::Index>(pts.size()));
  out.weights_ = Eigen::Map<const Eigen::VectorXd>(wts.data(), static_cast<Eigen::Index>(wts.size()));
  out.total_weight_ = out.weights_.sum();
  return out;
}

} // namespace logcdens
