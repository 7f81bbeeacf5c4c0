#pragma once

#include <Eigen/Dense>

namespace logcdens {
namespace stats {

//! Standard normal density.
double norm_pdf(double x);

//! Standard normal log-density.
double norm_log_pdf(double x);

//! Standard normal distribution function, via erfc.
double norm_cdf(double x);

//! Standard normal quantile for p in (0, 1).
//!
//! Wichura's PPND16 rational approximation, accurate to about 1e-15.
double norm_quantile(double p);

//! Weighted mean with weights summing to w.sum().
double weighted_mean(const Eigen::VectorXd& x, const Eigen::VectorXd& w);

//! Weighted population variance (divisor w.sum()).
double weighted_variance(const Eigen::VectorXd& x, const Eigen::VectorXd& w);

} // namespace stats
} // namespace logcdens
