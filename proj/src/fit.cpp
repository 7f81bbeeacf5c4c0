#include "logcdens/fit.hpp"

#include <cmath>

#include "logcdens/errors.hpp"
#include "logcdens/numeric.hpp"

namespace logcdens {

LogConcaveFit::LogConcaveFit(Eigen::VectorXd knots,
                             Eigen::VectorXd log_density,
                             SolverReport report,
                             std::optional<WeightedSample> sample)
  : knots_(std::move(knots))
  , log_density_(std::move(log_density))
  , report_(std::move(report))
  , sample_(std::move(sample))
{
  const Eigen::Index n = knots_.size();
  if (n < 2 || log_density_.size() != n) {
    throw InvalidData("LogConcaveFit: need n >= 2 knots with matching log-densities");
  }
  if (!knots_.allFinite() || !log_density_.allFinite()) {
    throw InvalidData("LogConcaveFit: nonfinite knots or log-densities");
  }
  double prev_slope = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double delta = knots_[k + 1] - knots_[k];
    if (!(delta > 0.0)) {
      throw InvalidData("LogConcaveFit: knots must be strictly increasing");
    }
    const double slope = (log_density_[k + 1] - log_density_[k]) / delta;
    if (slope > prev_slope + 1e-9 * (1.0 + std::abs(prev_slope))) {
      throw InvalidData("LogConcaveFit: log-density slopes must be nonincreasing");
    }
    prev_slope = slope;
  }

  // segment masses: delta * exp(phi_left + log relexp(delta * slope))
  Eigen::VectorXd piece(n - 1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double delta = knots_[k + 1] - knots_[k];
    const double t = log_density_[k + 1] - log_density_[k];
    piece[k] = delta * std::exp(log_density_[k] + log_relexp(t));
  }
  cdf_.resize(n);
  cdf_[0] = 0.0;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    cdf_[k + 1] = cdf_[k] + piece[k];
  }
  survival_.resize(n);
  survival_[n - 1] = 0.0;
  for (Eigen::Index k = n - 1; k-- > 0;) {
    survival_[k] = survival_[k + 1] + piece[k];
  }
}

} // namespace logcdens
