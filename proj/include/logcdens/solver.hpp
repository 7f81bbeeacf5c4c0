#pragma once

#include "logcdens/fit.hpp"
#include "logcdens/params.hpp"
#include "logcdens/weighted_sample.hpp"

namespace logcdens {

//! Stopping rules and line-search constants for the cone solver.
struct SolverConfig {
  int max_iter = 500;
  double tol_objective = 1e-10;    // relative objective change
  double tol_stationarity = 1e-8;  // max norm of the projected gradient step
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  int max_backtracks = 60;
};

struct StepResult {
  ConcaveParams params;
  bool accepted = false;
};

//! Feasible starting point: the log of the moment-matched normal
//! density at the sample points, slope block projected onto the cone.
ConcaveParams initial_params(const WeightedSample& sample);

//! One projected-Newton iteration: diagonal quadratic model from the
//! gradient and clipped curvature, candidate via the weighted cone
//! projection, Armijo backtracking along the segment to the candidate.
//! accepted == false when no ascent step was found (stationary point
//! or exhausted backtracking).
StepResult step(const ConcaveParams& params, const WeightedSample& sample, const SolverConfig& config);

//! Max norm of project(params + gradient) - params, zero exactly at a
//! constrained stationary point. Unit projection weights.
double stationarity_residual(const ConcaveParams& params, const WeightedSample& sample);

//! Maximize the objective over the nonincreasing-slope cone and return
//! the exactly renormalized fit. Non-convergence is reported through
//! the SolverReport flag; nonfinite arithmetic raises SolverFailure.
LogConcaveFit fit_mle(const WeightedSample& sample, const SolverConfig& config = {});

} // namespace logcdens
