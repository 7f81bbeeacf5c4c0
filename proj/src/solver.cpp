#include "logcdens/solver.hpp"

#include <cmath>

#include "logcdens/errors.hpp"
#include "logcdens/isotonic.hpp"
#include "logcdens/objective.hpp"
#include "logcdens/stats.hpp"

namespace logcdens {

namespace {

void check_config(const SolverConfig& c)
{
  if (c.max_iter < 1 || !(c.tol_objective > 0.0) || !(c.tol_stationarity > 0.0) ||
      !(c.armijo_c > 0.0 && c.armijo_c < 1.0) ||
      !(c.backtrack_factor > 0.0 && c.backtrack_factor < 1.0) || c.max_backtracks < 1) {
    throw InvalidData("SolverConfig: tolerances and factors out of range");
  }
}

constexpr double kCurvatureFloor = 1e-8;

} // namespace

ConcaveParams initial_params(const WeightedSample& sample)
{
  const Eigen::VectorXd& x = sample.points();
  const double mu = stats::weighted_mean(x, sample.weights());
  const double var = stats::weighted_variance(x, sample.weights());
  Eigen::VectorXd phi(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    phi[i] = stats::norm_log_pdf((x[i] - mu) / std::sqrt(var)) - 0.5 * std::log(var);
  }
  ConcaveParams p = params_from_knots(x, phi);
  p.slopes = project_cone(p.slopes);
  return p;
}

double stationarity_residual(const ConcaveParams& params, const WeightedSample& sample)
{
  const ObjectiveValue ev = objective(params, sample, true);
  const Eigen::VectorXd p = params.to_vector();
  Eigen::VectorXd z = p + *ev.gradient;
  z.tail(z.size() - 1) = project_cone(z.tail(z.size() - 1));
  return (z - p).lpNorm<Eigen::Infinity>();
}

StepResult step(const ConcaveParams& params, const WeightedSample& sample, const SolverConfig& config)
{
  check_config(config);
  const ObjectiveEval ev = evaluate_objective(params, sample);
  if (!std::isfinite(ev.value)) {
    throw SolverFailure("step: nonfinite objective at the current point");
  }

  const Eigen::VectorXd p = params.to_vector();
  const Eigen::VectorXd d = ev.curvature.cwiseMax(kCurvatureFloor);
  Eigen::VectorXd target = p + ev.gradient.cwiseQuotient(d);
  Eigen::VectorXd candidate(p.size());
  candidate[0] = target[0];
  candidate.tail(p.size() - 1) =
    project_cone(target.tail(p.size() - 1), d.tail(p.size() - 1));

  const Eigen::VectorXd dir = candidate - p;
  const double ascent = ev.gradient.dot(dir);
  if (!(ascent > 0.0)) {
    return {params, false};
  }

  double alpha = 1.0;
  for (int bt = 0; bt <= config.max_backtracks; ++bt) {
    const ConcaveParams trial = ConcaveParams::from_vector(p + alpha * dir);
    const double v = objective(trial, sample).value;
    if (std::isfinite(v) && v >= ev.value + config.armijo_c * alpha * ascent) {
      return {trial, true};
    }
    alpha *= config.backtrack_factor;
  }
  return {params, false};
}

LogConcaveFit fit_mle(const WeightedSample& sample, const SolverConfig& config)
{
  check_config(config);
  ConcaveParams p = initial_params(sample);
  double value = objective(p, sample).value;
  if (!std::isfinite(value)) {
    throw SolverFailure("fit_mle: nonfinite objective at the initial point");
  }

  SolverReport report;
  report.objective_trace.push_back(value);
  bool converged = false;
  int iter = 0;
  while (iter < config.max_iter) {
    ++iter;
    const StepResult res = step(p, sample, config);
    if (!res.accepted) {
      --iter; // no movement, not counted as an iteration
      break;
    }
    p = res.params;
    const double next = objective(p, sample).value;
    if (!std::isfinite(next)) {
      throw SolverFailure("fit_mle: nonfinite objective after an accepted step");
    }
    report.objective_trace.push_back(next);
    const double change = std::abs(next - value) / (1.0 + std::abs(next));
    value = next;
    if (change <= config.tol_objective &&
        stationarity_residual(p, sample) <= config.tol_stationarity) {
      converged = true;
      break;
    }
  }
  report.iterations = iter;
  report.stationarity_residual = stationarity_residual(p, sample);
  report.converged = converged || report.stationarity_residual <= config.tol_stationarity;

  // exact renormalization: shift phi by -log integral
  Eigen::VectorXd phi = log_density_at_knots(p, sample);
  phi.array() -= log_integral_exp(p, sample);
  return LogConcaveFit(sample.points(), std::move(phi), std::move(report), sample);
}

} // namespace logcdens
