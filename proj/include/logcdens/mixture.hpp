#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "logcdens/fit.hpp"
#include "logcdens/solver.hpp"

namespace logcdens {

//! EM driver settings. min_component_weight <= 0 selects the default
//! floor of 2/n at fit time.
struct EmConfig {
  int max_em_iter = 200;
  double tol_loglik = 1e-8; // relative log-likelihood change
  int restarts = 5;
  double min_component_weight = 0.0;
  std::uint64_t seed = 0;
};

//! One mixture component: d marginal fits coupled by a normal copula.
//! Univariate components have d == 1 and an identity correlation, in
//! which case the copula factor is exactly 1.
struct MixtureComponent {
  std::vector<LogConcaveFit> marginals;
  Eigen::MatrixXd correlation;
  Eigen::MatrixXd correlation_inverse;
  double log_det_correlation = 0.0;
};

struct MixtureModel {
  Eigen::VectorXd weights; // mixing proportions, sum to 1
  std::vector<MixtureComponent> components;
  double loglik = 0.0;
  std::vector<double> loglik_trace;
  int iterations = 0;
  bool converged = false;

  int k() const { return static_cast<int>(components.size()); }
  int dim() const
  {
    return components.empty() ? 0 : static_cast<int>(components[0].marginals.size());
  }
};

//! Normal-component baseline sharing the EM driver surface.
struct GaussianMixture {
  Eigen::VectorXd weights;
  Eigen::VectorXd means;
  Eigen::VectorXd sds;
  double loglik = 0.0;
  std::vector<double> loglik_trace;
  int iterations = 0;
  bool converged = false;

  int k() const { return static_cast<int>(weights.size()); }
};

//! Component log-density: sum of marginal log-densities plus the
//! normal-copula correction (zero for d == 1); -inf outside any
//! marginal support.
double component_log_density(const MixtureComponent& component, const Eigen::VectorXd& x);

//! Posterior component probabilities at one observation, computed in
//! the log domain. When every component density vanishes at x the
//! prior weights are returned.
Eigen::VectorXd posterior(const MixtureModel& model, const Eigen::VectorXd& x);
Eigen::VectorXd posterior(const MixtureModel& model, double x);
Eigen::VectorXd posterior(const GaussianMixture& model, double x);

//! Row-per-observation posteriors; rows sum to 1.
Eigen::MatrixXd posterior_matrix(const MixtureModel& model, const Eigen::MatrixXd& data);
Eigen::MatrixXd posterior_matrix(const GaussianMixture& model, const Eigen::VectorXd& data);

//! Argmax-posterior component index per observation (0-based); ties
//! break toward the lower index.
Eigen::VectorXi classify(const MixtureModel& model, const Eigen::MatrixXd& data);
Eigen::VectorXi classify(const MixtureModel& model, const Eigen::VectorXd& data);
Eigen::VectorXi classify(const GaussianMixture& model, const Eigen::VectorXd& data);

//! Univariate mixture of log-concave components fitted by EM with
//! weighted maximum-likelihood M-steps; best of config.restarts random
//! hard-partition initializations. Throws DegenerateMixture when every
//! restart collapses.
MixtureModel em_fit(const Eigen::VectorXd& data,
                    int k,
                    const EmConfig& config = {},
                    const SolverConfig& solver = {});

//! Gaussian EM baseline with the same driver.
GaussianMixture gaussian_em_fit(const Eigen::VectorXd& data, int k, const EmConfig& config = {});

//! Multivariate extension: log-concave marginals per component plus a
//! normal copula whose correlation comes from responsibility-weighted
//! normal scores. Requires d >= 2 columns.
MixtureModel copula_em_fit(const Eigen::MatrixXd& data,
                           int k,
                           const EmConfig& config = {},
                           const SolverConfig& solver = {});

} // namespace logcdens
