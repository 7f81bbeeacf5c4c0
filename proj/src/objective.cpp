#include "logcdens/objective.hpp"

#include <cmath>

#include "logcdens/errors.hpp"
#include "logcdens/numeric.hpp"

namespace logcdens {

namespace {

void check_params(const ConcaveParams& params, const WeightedSample& sample)
{
  if (params.slopes.size() != sample.size() - 1) {
    throw InvalidData("objective: slope count must be n - 1");
  }
  if (!std::isfinite(params.phi1) || !params.slopes.allFinite()) {
    throw InvalidParams("objective: nonfinite parameters");
  }
}

//! Shared evaluation pass. grad/curv may be null.
double eval_core(const ConcaveParams& params,
                 const WeightedSample& sample,
                 Eigen::VectorXd* grad,
                 Eigen::VectorXd* curv)
{
  check_params(params, sample);
  const Eigen::VectorXd& x = sample.points();
  const Eigen::VectorXd& w = sample.weights();
  const Eigen::Index n = x.size();
  const Eigen::Index m = n - 1; // segments
  const double total = sample.total_weight();
  const double phi1 = params.phi1;
  const Eigen::VectorXd& s = params.slopes;

  // tail[k] = weight mass strictly right of x_k, accumulated from the right
  Eigen::VectorXd tail(m);
  {
    double acc = 0.0;
    for (Eigen::Index k = m; k-- > 0;) {
      acc += w[k + 1];
      tail[k] = acc;
    }
  }

  double linear = total * phi1;
  Eigen::VectorXd delta(m), t(m), cum_before(m), log_piece(m);
  double cum = 0.0;
  double log_total_piece = neg_inf;
  for (Eigen::Index k = 0; k < m; ++k) {
    delta[k] = x[k + 1] - x[k];
    t[k] = delta[k] * s[k];
    cum_before[k] = cum;
    linear += tail[k] * delta[k] * s[k];
    log_piece[k] = std::log(delta[k]) + log_relexp(t[k]) + cum;
    log_total_piece = logaddexp(log_total_piece, log_piece[k]);
    cum += t[k];
  }

  // integral of exp(phi) = exp(phi1 + log_total_piece)
  const double value = linear - total * std::exp(phi1 + log_total_piece);

  if (grad || curv) {
    // suffix[k] = log sum of pieces strictly right of segment k
    Eigen::VectorXd log_suffix(m);
    double suf = neg_inf;
    for (Eigen::Index k = m; k-- > 0;) {
      log_suffix[k] = suf;
      suf = logaddexp(suf, log_piece[k]);
    }
    if (grad) {
      grad->resize(n);
      // d/dphi1 = W*(1 - integral), kept exact near the optimum
      (*grad)[0] = -total * std::expm1(phi1 + log_total_piece);
      for (Eigen::Index k = 0; k < m; ++k) {
        const double within =
          std::exp(phi1 + 2.0 * std::log(delta[k]) + log_relexp_d1(t[k]) + cum_before[k]);
        const double beyond = delta[k] * std::exp(phi1 + log_suffix[k]);
        (*grad)[k + 1] = tail[k] * delta[k] - total * (within + beyond);
      }
    }
    if (curv) {
      curv->resize(n);
      (*curv)[0] = total * std::exp(phi1 + log_total_piece);
      for (Eigen::Index k = 0; k < m; ++k) {
        const double within =
          std::exp(phi1 + 3.0 * std::log(delta[k]) + log_relexp_d2(t[k]) + cum_before[k]);
        const double beyond = delta[k] * delta[k] * std::exp(phi1 + log_suffix[k]);
        (*curv)[k + 1] = total * (within + beyond);
      }
    }
  }
  return value;
}

} // namespace

ObjectiveValue objective(const ConcaveParams& params, const WeightedSample& sample, bool with_gradient)
{
  ObjectiveValue out;
  if (with_gradient) {
    Eigen::VectorXd g;
    out.value = eval_core(params, sample, &g, nullptr);
    out.gradient = std::move(g);
  } else {
    out.value = eval_core(params, sample, nullptr, nullptr);
  }
  return out;
}

ObjectiveEval evaluate_objective(const ConcaveParams& params, const WeightedSample& sample)
{
  ObjectiveEval out;
  out.value = eval_core(params, sample, &out.gradient, &out.curvature);
  return out;
}

double log_integral_exp(const ConcaveParams& params, const WeightedSample& sample)
{
  check_params(params, sample);
  const Eigen::VectorXd& x = sample.points();
  double cum = 0.0;
  double acc = neg_inf;
  for (Eigen::Index k = 0; k + 1 < x.size(); ++k) {
    const double delta = x[k + 1] - x[k];
    const double t = delta * params.slopes[k];
    acc = logaddexp(acc, std::log(delta) + log_relexp(t) + cum);
    cum += t;
  }
  return params.phi1 + acc;
}

double gradient_check(const ConcaveParams& params, const WeightedSample& sample, double h)
{
  if (!(h > 0.0)) {
    throw InvalidData("gradient_check: h must be positive");
  }
  const ObjectiveValue at = objective(params, sample, true);
  const Eigen::VectorXd& g = *at.gradient;
  const Eigen::VectorXd p = params.to_vector();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Eigen::VectorXd lo = p, hi = p;
    lo[i] -= h;
    hi[i] += h;
    const double flo = objective(ConcaveParams::from_vector(lo), sample).value;
    const double fhi = objective(ConcaveParams::from_vector(hi), sample).value;
    const double fd = (fhi - flo) / (2.0 * h);
    const double scale = std::max({1.0, std::abs(g[i]), std::abs(fd)});
    worst = std::max(worst, std::abs(g[i] - fd) / scale);
  }
  return worst;
}

} // namespace logcdens
