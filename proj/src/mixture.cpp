#include "logcdens/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "logcdens/distribution.hpp"
#include "logcdens/errors.hpp"
#include "logcdens/numeric.hpp"
#include "logcdens/rng.hpp"
#include "logcdens/stats.hpp"
#include "logcdens/weighted_sample.hpp"

namespace logcdens {

namespace {

constexpr double kScoreClamp = 1e-6; // normal-score clamp for copula scores
constexpr double kMinEigen = 1e-6;   // correlation eigenvalue floor

//! Signals one collapsed EM run; caught by the restart loop.
struct DegenerateRun {
};

void check_em_config(const EmConfig& c)
{
  if (c.max_em_iter < 1 || !(c.tol_loglik > 0.0) || c.restarts < 1) {
    throw InvalidData("EmConfig: iterations, tolerance and restarts must be positive");
  }
}

void require_distinct(const Eigen::VectorXd& column, int k, const char* what)
{
  std::set<double> distinct(column.data(), column.data() + column.size());
  if (static_cast<int>(distinct.size()) < 2 * k + 2) {
    throw InvalidData(std::string(what) + ": need at least 2k+2 distinct values");
  }
}

double weight_floor(const EmConfig& config, Eigen::Index n)
{
  return config.min_component_weight > 0.0 ? config.min_component_weight
                                           : 2.0 / static_cast<double>(n);
}

//! Uniform random hard partition; one-hot responsibility rows.
Eigen::MatrixXd random_partition(Eigen::Index n, int k, Rng& rng)
{
  Eigen::MatrixXd resp = Eigen::MatrixXd::Zero(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto label = static_cast<int>(rng.uniform() * k);
    resp(i, std::min(label, k - 1)) = 1.0;
  }
  return resp;
}

//! Responsibility-weighted sample of one data column; rows with zero
//! responsibility carry no information and are dropped exactly.
WeightedSample weighted_column(const Eigen::VectorXd& column, const Eigen::VectorXd& resp)
{
  std::vector<double> pts, wts;
  pts.reserve(static_cast<std::size_t>(column.size()));
  wts.reserve(static_cast<std::size_t>(column.size()));
  for (Eigen::Index i = 0; i < column.size(); ++i) {
    if (resp[i] > 0.0) {
      pts.push_back(column[i]);
      wts.push_back(resp[i]);
    }
  }
  try {
    return prepare_sample(
      Eigen::Map<const Eigen::VectorXd>(pts.data(), static_cast<Eigen::Index>(pts.size())),
      Eigen::Map<const Eigen::VectorXd>(wts.data(), static_cast<Eigen::Index>(wts.size())));
  } catch (const DegenerateSample&) {
    throw DegenerateRun{};
  }
}

Eigen::VectorXd mixing_weights(const Eigen::MatrixXd& resp, double floor)
{
  Eigen::VectorXd pi = resp.colwise().mean().transpose();
  if ((pi.array() < floor).any()) {
    throw DegenerateRun{};
  }
  return pi;
}

//! Correlation matrix from responsibility-weighted normal scores, with
//! the minimal shrink toward the identity that restores eigenvalues
//! >= kMinEigen.
Eigen::MatrixXd score_correlation(const Eigen::MatrixXd& scores, const Eigen::VectorXd& w)
{
  const Eigen::Index d = scores.cols();
  const double wsum = w.sum();
  const Eigen::VectorXd mu = scores.transpose() * w / wsum;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const Eigen::VectorXd c = scores.row(i).transpose() - mu;
    cov.noalias() += w[i] * c * c.transpose();
  }
  cov /= wsum;
  Eigen::VectorXd sd = cov.diagonal().cwiseSqrt();
  if ((sd.array() <= 0.0).any()) {
    throw DegenerateRun{};
  }
  Eigen::MatrixXd corr = sd.cwiseInverse().asDiagonal() * cov * sd.cwiseInverse().asDiagonal();
  corr.diagonal().setOnes();
  corr = 0.5 * (corr + corr.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr);
  const double lmin = eig.eigenvalues().minCoeff();
  if (lmin < kMinEigen) {
    const double lambda = (kMinEigen - lmin) / (1.0 - lmin);
    corr = (1.0 - lambda) * corr + lambda * Eigen::MatrixXd::Identity(d, d);
  }
  return corr;
}

MixtureComponent make_component(std::vector<LogConcaveFit> marginals, Eigen::MatrixXd correlation)
{
  MixtureComponent comp{std::move(marginals), std::move(correlation), {}, 0.0};
  const Eigen::Index d = comp.correlation.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(comp.correlation);
  comp.correlation_inverse =
    eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  comp.log_det_correlation = eig.eigenvalues().array().log().sum();
  if (d == 1) {
    comp.correlation_inverse.setOnes();
    comp.log_det_correlation = 0.0;
  }
  return comp;
}

//! Shared E-step: observed-data log-likelihood plus responsibilities.
template <typename LogDensityFn>
double e_step(const Eigen::VectorXd& pi, Eigen::MatrixXd& resp, LogDensityFn&& log_density)
{
  const Eigen::Index n = resp.rows();
  const int k = static_cast<int>(pi.size());
  double loglik = 0.0;
  Eigen::VectorXd lp(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int m = 0; m < k; ++m) {
      lp[m] = std::log(pi[m]) + log_density(m, i);
    }
    const double top = lp.maxCoeff();
    if (top == neg_inf) {
      resp.row(i) = pi.transpose();
      loglik = neg_inf;
      continue;
    }
    const double lse = top + std::log((lp.array() - top).exp().sum());
    resp.row(i) = (lp.array() - lse).exp();
    loglik += lse;
  }
  return loglik;
}

double relative_change(double current, double previous)
{
  return std::abs(current - previous) / (1.0 + std::abs(current));
}

//! Generic restart-and-iterate driver. MStep: resp -> model state
//! (throws DegenerateRun); EStep: state, resp& -> loglik.
template <typename State>
struct EmOutcome {
  State state;
  double loglik = neg_inf;
  std::vector<double> trace;
  int iterations = 0;
  bool converged = false;
};

template <typename State, typename MStep, typename EStep>
EmOutcome<State> run_em(Eigen::Index n, int k, const EmConfig& config, MStep&& m_step, EStep&& e_step_fn)
{
  using Outcome = EmOutcome<State>;
  bool any_success = false;
  Outcome best;
  for (int r = 0; r < config.restarts; ++r) {
    Rng rng = Rng::substream(config.seed, static_cast<std::uint64_t>(r));
    try {
      Eigen::MatrixXd resp = random_partition(n, k, rng);
      State state = m_step(resp);
      Outcome run;
      double prev = neg_inf;
      for (int it = 1; it <= config.max_em_iter; ++it) {
        const double ll = e_step_fn(state, resp);
        if (!std::isfinite(ll)) {
          throw DegenerateRun{};
        }
        run.trace.push_back(ll);
        run.iterations = it;
        run.loglik = ll;
        if (it > 1 && relative_change(ll, prev) <= config.tol_loglik) {
          run.converged = true;
          break;
        }
        prev = ll;
        if (it == config.max_em_iter) {
          break;
        }
        state = m_step(resp);
      }
      run.state = std::move(state);
      if (!any_success || run.loglik > best.loglik) {
        best = std::move(run);
        any_success = true;
      }
    } catch (const DegenerateRun&) {
      continue;
    }
  }
  if (!any_success) {
    throw DegenerateMixture("em_fit: every restart produced a degenerate component");
  }
  return best;
}

struct LogConcaveState {
  Eigen::VectorXd pi;
  std::vector<MixtureComponent> components;
};

struct GaussianState {
  Eigen::VectorXd pi, mu, sd;
};

} // namespace

double component_log_density(const MixtureComponent& component, const Eigen::VectorXd& x)
{
  const auto d = static_cast<Eigen::Index>(component.marginals.size());
  if (x.size() != d) {
    throw InvalidData("component_log_density: dimension mismatch");
  }
  double lf = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double lp = log_pdf(component.marginals[static_cast<std::size_t>(j)], x[j]);
    if (lp == neg_inf) {
      return neg_inf;
    }
    lf += lp;
  }
  if (d > 1) {
    Eigen::VectorXd z(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      const double u = std::clamp(cdf(component.marginals[static_cast<std::size_t>(j)], x[j]),
                                  kScoreClamp, 1.0 - kScoreClamp);
      z[j] = stats::norm_quantile(u);
    }
    const Eigen::MatrixXd h =
      component.correlation_inverse - Eigen::MatrixXd::Identity(d, d);
    lf += -0.5 * component.log_det_correlation - 0.5 * z.dot(h * z);
  }
  return lf;
}

Eigen::VectorXd posterior(const MixtureModel& model, const Eigen::VectorXd& x)
{
  const int k = model.k();
  Eigen::VectorXd lp(k);
  for (int m = 0; m < k; ++m) {
    lp[m] = std::log(model.weights[m]) +
            component_log_density(model.components[static_cast<std::size_t>(m)], x);
  }
  const double top = lp.maxCoeff();
  if (top == neg_inf) {
    return model.weights;
  }
  const double lse = top + std::log((lp.array() - top).exp().sum());
  return (lp.array() - lse).exp();
}

Eigen::VectorXd posterior(const MixtureModel& model, double x)
{
  Eigen::VectorXd v(1);
  v[0] = x;
  return posterior(model, v);
}

Eigen::VectorXd posterior(const GaussianMixture& model, double x)
{
  const int k = model.k();
  Eigen::VectorXd lp(k);
  for (int m = 0; m < k; ++m) {
    lp[m] = std::log(model.weights[m]) + stats::norm_log_pdf((x - model.means[m]) / model.sds[m]) -
            std::log(model.sds[m]);
  }
  const double top = lp.maxCoeff();
  if (top == neg_inf) {
    return model.weights;
  }
  const double lse = top + std::log((lp.array() - top).exp().sum());
  return (lp.array() - lse).exp();
}

Eigen::MatrixXd posterior_matrix(const MixtureModel& model, const Eigen::MatrixXd& data)
{
  Eigen::MatrixXd out(data.rows(), model.k());
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    out.row(i) = posterior(model, Eigen::VectorXd(data.row(i).transpose())).transpose();
  }
  return out;
}

Eigen::MatrixXd posterior_matrix(const GaussianMixture& model, const Eigen::VectorXd& data)
{
  Eigen::MatrixXd out(data.size(), model.k());
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    out.row(i) = posterior(model, data[i]).transpose();
  }
  return out;
}

namespace {

Eigen::VectorXi argmax_rows(const Eigen::MatrixXd& post)
{
  Eigen::VectorXi labels(post.rows());
  for (Eigen::Index i = 0; i < post.rows(); ++i) {
    int best = 0;
    for (int m = 1; m < post.cols(); ++m) {
      if (post(i, m) > post(i, best)) {
        best = m;
      }
    }
    labels[i] = best;
  }
  return labels;
}

} // namespace

Eigen::VectorXi classify(const MixtureModel& model, const Eigen::MatrixXd& data)
{
  return argmax_rows(posterior_matrix(model, data));
}

Eigen::VectorXi classify(const MixtureModel& model, const Eigen::VectorXd& data)
{
  return classify(model, Eigen::MatrixXd(data));
}

Eigen::VectorXi classify(const GaussianMixture& model, const Eigen::VectorXd& data)
{
  return argmax_rows(posterior_matrix(model, data));
}

MixtureModel em_fit(const Eigen::VectorXd& data, int k, const EmConfig& config, const SolverConfig& solver)
{
  check_em_config(config);
  if (k < 1) {
    throw InvalidData("em_fit: k must be at least 1");
  }
  if (!data.allFinite()) {
    throw InvalidData("em_fit: nonfinite data");
  }
  require_distinct(data, k, "em_fit");
  const Eigen::Index n = data.size();
  const double floor = weight_floor(config, n);

  auto m_step = [&](const Eigen::MatrixXd& resp) {
    LogConcaveState state;
    state.pi = mixing_weights(resp, floor);
    state.components.reserve(static_cast<std::size_t>(k));
    for (int m = 0; m < k; ++m) {
      std::vector<LogConcaveFit> marginals;
      marginals.push_back(fit_mle(weighted_column(data, resp.col(m)), solver));
      state.components.push_back(
        make_component(std::move(marginals), Eigen::MatrixXd::Identity(1, 1)));
    }
    return state;
  };
  auto e_step_fn = [&](const LogConcaveState& state, Eigen::MatrixXd& resp) {
    return e_step(state.pi, resp, [&](int m, Eigen::Index i) {
      return log_pdf(state.components[static_cast<std::size_t>(m)].marginals[0], data[i]);
    });
  };

  auto outcome = run_em<LogConcaveState>(n, k, config, m_step, e_step_fn);

  MixtureModel model;
  model.weights = std::move(outcome.state.pi);
  model.components = std::move(outcome.state.components);
  model.loglik = outcome.loglik;
  model.loglik_trace = std::move(outcome.trace);
  model.iterations = outcome.iterations;
  model.converged = outcome.converged;
  return model;
}

GaussianMixture gaussian_em_fit(const Eigen::VectorXd& data, int k, const EmConfig& config)
{
  check_em_config(config);
  if (k < 1) {
    throw InvalidData("gaussian_em_fit: k must be at least 1");
  }
  if (!data.allFinite()) {
    throw InvalidData("gaussian_em_fit: nonfinite data");
  }
  require_distinct(data, k, "gaussian_em_fit");
  const Eigen::Index n = data.size();
  const double floor = weight_floor(config, n);
  const double var_floor = 1e-12 * stats::weighted_variance(data, Eigen::VectorXd::Ones(n));

  auto m_step = [&](const Eigen::MatrixXd& resp) {
    GaussianState state;
    state.pi = mixing_weights(resp, floor);
    state.mu.resize(k);
    state.sd.resize(k);
    for (int m = 0; m < k; ++m) {
      const Eigen::VectorXd w = resp.col(m);
      const double wsum = w.sum();
      const double mu = w.dot(data) / wsum;
      const double var = w.dot((data.array() - mu).square().matrix()) / wsum;
      if (!(var > var_floor)) {
        throw DegenerateRun{};
      }
      state.mu[m] = mu;
      state.sd[m] = std::sqrt(var);
    }
    return state;
  };
  auto e_step_fn = [&](const GaussianState& state, Eigen::MatrixXd& resp) {
    return e_step(state.pi, resp, [&](int m, Eigen::Index i) {
      return stats::norm_log_pdf((data[i] - state.mu[m]) / state.sd[m]) - std::log(state.sd[m]);
    });
  };

  auto outcome = run_em<GaussianState>(n, k, config, m_step, e_step_fn);

  GaussianMixture model;
  model.weights = std::move(outcome.state.pi);
  model.means = std::move(outcome.state.mu);
  model.sds = std::move(outcome.state.sd);
  model.loglik = outcome.loglik;
  model.loglik_trace = std::move(outcome.trace);
  model.iterations = outcome.iterations;
  model.converged = outcome.converged;
  return model;
}

MixtureModel copula_em_fit(const Eigen::MatrixXd& data,
                           int k,
                           const EmConfig& config,
                           const SolverConfig& solver)
{
  check_em_config(config);
  if (k < 1) {
    throw InvalidData("copula_em_fit: k must be at least 1");
  }
  const Eigen::Index d = data.cols();
  if (d < 2) {
    throw InvalidData("copula_em_fit: need at least 2 columns; use em_fit for univariate data");
  }
  if (!data.allFinite()) {
    throw InvalidData("copula_em_fit: nonfinite data");
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    require_distinct(data.col(j), k, "copula_em_fit");
  }
  const Eigen::Index n = data.rows();
  const double floor = weight_floor(config, n);

  auto m_step = [&](const Eigen::MatrixXd& resp) {
    LogConcaveState state;
    state.pi = mixing_weights(resp, floor);
    for (int m = 0; m < k; ++m) {
      const Eigen::VectorXd w = resp.col(m);
      std::vector<LogConcaveFit> marginals;
      marginals.reserve(static_cast<std::size_t>(d));
      for (Eigen::Index j = 0; j < d; ++j) {
        marginals.push_back(fit_mle(weighted_column(data.col(j), w), solver));
      }
      // normal scores of the fitted marginals, responsibility-weighted
      std::vector<Eigen::Index> kept;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (w[i] > 0.0) {
          kept.push_back(i);
        }
      }
      Eigen::MatrixXd scores(static_cast<Eigen::Index>(kept.size()), d);
      Eigen::VectorXd kept_w(static_cast<Eigen::Index>(kept.size()));
      for (Eigen::Index r = 0; r < scores.rows(); ++r) {
        kept_w[r] = w[kept[static_cast<std::size_t>(r)]];
        for (Eigen::Index j = 0; j < d; ++j) {
          const double u =
            std::clamp(cdf(marginals[static_cast<std::size_t>(j)], data(kept[static_cast<std::size_t>(r)], j)),
                       kScoreClamp, 1.0 - kScoreClamp);
          scores(r, j) = stats::norm_quantile(u);
        }
      }
      state.components.push_back(
        make_component(std::move(marginals), score_correlation(scores, kept_w)));
    }
    return state;
  };
  auto e_step_fn = [&](const LogConcaveState& state, Eigen::MatrixXd& resp) {
    return e_step(state.pi, resp, [&](int m, Eigen::Index i) {
      return component_log_density(state.components[static_cast<std::size_t>(m)],
                                   Eigen::VectorXd(data.row(i).transpose()));
    });
  };

  auto outcome = run_em<LogConcaveState>(n, k, config, m_step, e_step_fn);

  MixtureModel model;
  model.weights = std::move(outcome.state.pi);
  model.components = std::move(outcome.state.components);
  model.loglik = outcome.loglik;
  model.loglik_trace = std::move(outcome.trace);
  model.iterations = outcome.iterations;
  model.converged = outcome.converged;
  return model;
}

} // namespace logcdens
