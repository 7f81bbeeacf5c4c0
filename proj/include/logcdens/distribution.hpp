#pragma once

#include <Eigen/Dense>
#include <vector>

#include "logcdens/fit.hpp"
#include "logcdens/rng.hpp"

namespace logcdens {

//! Density at x; zero outside the support.
double pdf(const LogConcaveFit& fit, double x);

//! Log-density at x; -inf outside the support.
double log_pdf(const LogConcaveFit& fit, double x);

//! Distribution function, closed form per segment.
double cdf(const LogConcaveFit& fit, double x);

//! Inverse distribution function for p in [0, 1].
double quantile(const LogConcaveFit& fit, double p);

//! Exact two-stage sampler: a segment index J drawn with the per-knot
//! CDF increments, then the within-segment position from one uniform.
std::vector<double> sample(const LogConcaveFit& fit, Rng& rng, std::size_t m);

//! Within-segment position for log-density increment theta and uniform
//! u: log(1 + (exp(theta) - 1) u) / theta, with u as the theta -> 0
//! limit. |theta| below 1e-12 is treated as zero.
double segment_position(double theta, double u);

//! Mode of the fitted density; midpoint of the argmax interval when
//! the log-density is flat on top.
double mode(const LogConcaveFit& fit);

//! Hazard rate pdf(x) / (1 - cdf(x)), defined on [x_1, x_n) and
//! nondecreasing there. Throws OutOfSupport outside that interval.
double hazard(const LogConcaveFit& fit, double x);

} // namespace logcdens
