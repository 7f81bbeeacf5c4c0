#include "logcdens/isotonic.hpp"

#include <cmath>
#include <vector>

#include "logcdens/errors.hpp"

namespace logcdens {

Eigen::VectorXd project_cone(const Eigen::VectorXd& v, const Eigen::VectorXd& weights)
{
  const Eigen::Index m = v.size();
  if (weights.size() != m) {
    throw InvalidData("project_cone: weights length does not match");
  }
  if (m == 0) {
    return v;
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!std::isfinite(weights[i]) || weights[i] <= 0.0) {
      throw InvalidData("project_cone: weights must be finite and positive");
    }
  }

  // Blocks carry (mean, weight, count); a block whose mean rises above
  // its predecessor violates monotonicity and is pooled.
  std::vector<double> mean(static_cast<std::size_t>(m));
  std::vector<double> wsum(static_cast<std::size_t>(m));
  std::vector<Eigen::Index> count(static_cast<std::size_t>(m));
  std::size_t top = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    mean[top] = v[i];
    wsum[top] = weights[i];
    count[top] = 1;
    ++top;
    while (top >= 2 && mean[top - 1] > mean[top - 2]) {
      const double w = wsum[top - 2] + wsum[top - 1];
      mean[top - 2] = (wsum[top - 2] * mean[top - 2] + wsum[top - 1] * mean[top - 1]) / w;
      wsum[top - 2] = w;
      count[top - 2] += count[top - 1];
      --top;
    }
  }

  Eigen::VectorXd out(m);
  Eigen::Index pos = 0;
  for (std::size_t b = 0; b < top; ++b) {
    for (Eigen::Index r = 0; r < count[b]; ++r) {
      out[pos++] = mean[b];
    }
  }
  return out;
}

Eigen::VectorXd project_cone(const Eigen::VectorXd& v)
{
  return project_cone(v, Eigen::VectorXd::Ones(v.size()));
}

} // namespace logcdens
