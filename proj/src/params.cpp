#include "logcdens/params.hpp"

#include "logcdens/errors.hpp"

namespace logcdens {

Eigen::VectorXd ConcaveParams::to_vector() const
{
  Eigen::VectorXd v(slopes.size() + 1);
  v[0] = phi1;
  v.tail(slopes.size()) = slopes;
  return v;
}

ConcaveParams ConcaveParams::from_vector(const Eigen::VectorXd& v)
{
  ConcaveParams p;
  p.phi1 = v[0];
  p.slopes = v.tail(v.size() - 1);
  return p;
}

bool ConcaveParams::feasible() const
{
  for (Eigen::Index k = 1; k < slopes.size(); ++k) {
    if (slopes[k] > slopes[k - 1])
      return false;
  }
  return true;
}

Eigen::VectorXd log_density_at_knots(const ConcaveParams& params, const WeightedSample& sample)
{
  const Eigen::VectorXd& x = sample.points();
  const Eigen::Index n = x.size();
  if (params.slopes.size() != n - 1) {
    throw InvalidData("log_density_at_knots: slope count must be n - 1");
  }
  Eigen::VectorXd phi(n);
  phi[0] = params.phi1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    phi[k + 1] = phi[k] + (x[k + 1] - x[k]) * params.slopes[k];
  }
  return phi;
}

ConcaveParams params_from_knots(const Eigen::VectorXd& points, const Eigen::VectorXd& log_density)
{
  const Eigen::Index n = points.size();
  if (log_density.size() != n || n < 2) {
    throw InvalidData("params_from_knots: need matching vectors with n >= 2");
  }
  ConcaveParams p;
  p.phi1 = log_density[0];
  p.slopes.resize(n - 1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    p.slopes[k] = (log_density[k + 1] - log_density[k]) / (points[k + 1] - points[k]);
  }
  return p;
}

} // namespace logcdens
