#include "logcdens/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "logcdens/errors.hpp"
#include "logcdens/numeric.hpp"

namespace logcdens {

namespace {

//! Index k of the segment [knots_k, knots_{k+1}] containing x,
//! assuming x is inside the support.
Eigen::Index segment_index(const Eigen::VectorXd& knots, double x)
{
  const auto* begin = knots.data();
  const auto* end = begin + knots.size();
  Eigen::Index k = std::upper_bound(begin, end, x) - begin - 1;
  return std::clamp<Eigen::Index>(k, 0, knots.size() - 2);
}

//! Linear interpolation of the log-density, exact at both knots.
double interp_log_density(const LogConcaveFit& fit, Eigen::Index k, double x)
{
  const double a = fit.knots()[k];
  const double b = fit.knots()[k + 1];
  if (x == a)
    return fit.log_density()[k];
  if (x == b)
    return fit.log_density()[k + 1];
  const double s = (fit.log_density()[k + 1] - fit.log_density()[k]) / (b - a);
  return fit.log_density()[k] + s * (x - a);
}

} // namespace

double log_pdf(const LogConcaveFit& fit, double x)
{
  if (!std::isfinite(x)) {
    throw InvalidData("pdf: nonfinite evaluation point");
  }
  if (x < fit.support_min() || x > fit.support_max()) {
    return neg_inf;
  }
  return interp_log_density(fit, segment_index(fit.knots(), x), x);
}

double pdf(const LogConcaveFit& fit, double x)
{
  const double lp = log_pdf(fit, x);
  return lp == neg_inf ? 0.0 : std::exp(lp);
}

double cdf(const LogConcaveFit& fit, double x)
{
  if (!std::isfinite(x)) {
    throw InvalidData("cdf: nonfinite evaluation point");
  }
  if (x <= fit.support_min())
    return 0.0;
  if (x >= fit.support_max())
    return 1.0;
  const Eigen::Index k = segment_index(fit.knots(), x);
  const double a = fit.knots()[k];
  const double delta = x - a;
  const double s =
    (fit.log_density()[k + 1] - fit.log_density()[k]) / (fit.knots()[k + 1] - a);
  const double piece = delta * std::exp(fit.log_density()[k] + log_relexp(s * delta));
  return std::min(fit.cdf_at_knots()[k] + piece, 1.0);
}

double quantile(const LogConcaveFit& fit, double p)
{
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidData("quantile: p must lie in [0, 1]");
  }
  if (p == 0.0)
    return fit.support_min();
  if (p == 1.0)
    return fit.support_max();
  const Eigen::VectorXd& F = fit.cdf_at_knots();
  const auto* begin = F.data();
  const auto* end = begin + F.size();
  // first knot with cdf >= p bounds the segment on the right
  Eigen::Index j = std::lower_bound(begin, end, p) - begin;
  j = std::clamp<Eigen::Index>(j, 1, F.size() - 1);
  const Eigen::Index k = j - 1;
  const double a = fit.knots()[k];
  const double width = fit.knots()[k + 1] - a;
  const double theta = fit.log_density()[k + 1] - fit.log_density()[k];
  const double rest = (p - F[k]) * std::exp(-fit.log_density()[k]);
  double delta;
  if (std::abs(theta) < 1e-12) {
    delta = rest;
  } else {
    const double s = theta / width;
    const double arg = s * rest;
    delta = arg <= -1.0 ? width : std::log1p(arg) / s;
  }
  return a + std::clamp(delta, 0.0, width);
}

double segment_position(double theta, double u)
{
  if (std::abs(theta) < 1e-12) {
    return u;
  }
  double v;
  if (theta > 500.0) {
    // rewritten to avoid overflowing exp(theta)
    v = 1.0 + std::log(u + (1.0 - u) * std::exp(-theta)) / theta;
  } else {
    v = std::log1p(std::expm1(theta) * u) / theta;
  }
  return std::clamp(v, 0.0, 1.0);
}

std::vector<double> sample(const LogConcaveFit& fit, Rng& rng, std::size_t m)
{
  const Eigen::VectorXd& F = fit.cdf_at_knots();
  const auto* begin = F.data();
  const auto* end = begin + F.size();
  std::vector<double> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double u_seg = rng.uniform();
    Eigen::Index j = std::lower_bound(begin, end, u_seg * fit.total_mass()) - begin;
    j = std::clamp<Eigen::Index>(j, 1, F.size() - 1);
    const double theta = fit.log_density()[j] - fit.log_density()[j - 1];
    const double v = segment_position(theta, rng.uniform());
    out.push_back(fit.knots()[j - 1] + (fit.knots()[j] - fit.knots()[j - 1]) * v);
  }
  return out;
}

double mode(const LogConcaveFit& fit)
{
  const Eigen::VectorXd& phi = fit.log_density();
  const double top = phi.maxCoeff();
  const double tol = 1e-12 * (1.0 + std::abs(top));
  Eigen::Index lo = 0;
  while (phi[lo] < top - tol)
    ++lo;
  Eigen::Index hi = phi.size() - 1;
  while (phi[hi] < top - tol)
    --hi;
  return 0.5 * (fit.knots()[lo] + fit.knots()[hi]);
}

double hazard(const LogConcaveFit& fit, double x)
{
  if (!std::isfinite(x)) {
    throw InvalidData("hazard: nonfinite evaluation point");
  }
  if (x < fit.support_min() || x >= fit.support_max()) {
    throw OutOfSupport("hazard: defined on [x_1, x_n) only");
  }
  const Eigen::Index k = segment_index(fit.knots(), x);
  const double lp = interp_log_density(fit, k, x);
  // survival accumulated from the right avoids cancellation near x_n
  const double b = fit.knots()[k + 1];
  const double s =
    (fit.log_density()[k + 1] - fit.log_density()[k]) / (b - fit.knots()[k]);
  const double rest = (b - x) * std::exp(lp + log_relexp(s * (b - x)));
  return std::exp(lp) / (fit.survival_at_knots()[k + 1] + rest);
}

} // namespace logcdens
