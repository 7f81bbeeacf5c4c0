#pragma once

#include <cmath>
#include <limits>

namespace logcdens {

//! Numerically stable helpers built around the relative exponential
//!   relexp(t) = (exp(t) - 1) / t = integral of exp(t*u) over u in [0,1],
//! which is the 0/0 form that appears in every piecewise-exponential
//! integral of the model. relexp and its first two derivatives are
//! strictly positive on the whole real line, so their logs are always
//! defined; the log forms are what keeps steep slopes from overflowing.

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

//! relexp(t) with the exact limit relexp(0) = 1.
inline double relexp(double t)
{
  if (std::abs(t) < 1e-8) {
    return 1.0 + t * (0.5 + t / 6.0);
  }
  return std::expm1(t) / t;
}

//! log(relexp(t)).
inline double log_relexp(double t)
{
  if (std::abs(t) < 1e-8) {
    return std::log1p(t * (0.5 + t / 6.0));
  }
  if (t < 0.0) {
    // relexp(t) = (1 - exp(t)) / (-t), both factors positive
    return std::log(-std::expm1(t)) - std::log(-t);
  }
  if (t <= 700.0) {
    return std::log(std::expm1(t) / t);
  }
  return t - std::log(t); // exp(-t) term below double resolution
}

//! log of relexp'(t) = ((t - 1)*expm1(t) + t) / t^2, relexp'(0) = 1/2.
inline double log_relexp_d1(double t)
{
  if (std::abs(t) < 0.5) {
    // sum_{m>=1} m t^{m-1} / (m+1)!
    double term = 0.5;
    double sum = term;
    for (int m = 2; m <= 40; ++m) {
      term *= t * m / ((m - 1) * (m + 1.0));
      sum += term;
      if (std::abs(term) < 1e-18 * sum)
        break;
    }
    return std::log(sum);
  }
  if (t <= 700.0) {
    return std::log(((t - 1.0) * std::expm1(t) + t) / (t * t));
  }
  return t + std::log(t - 1.0) - 2.0 * std::log(t);
}

//! log of relexp''(t) = (exp(t)*(t^2 - 2t + 2) - 2) / t^3, relexp''(0) = 1/3.
inline double log_relexp_d2(double t)
{
  if (std::abs(t) < 0.5) {
    // sum_{m>=2} m (m-1) t^{m-2} / (m+1)!
    double term = 1.0 / 3.0;
    double sum = term;
    for (int m = 3; m <= 40; ++m) {
      term *= t * m / ((m - 2) * (m + 1.0));
      sum += term;
      if (std::abs(term) < 1e-18 * sum)
        break;
    }
    return std::log(sum);
  }
  if (t <= 700.0) {
    const double q = t * t - 2.0 * t + 2.0;
    return std::log((std::expm1(t) * q + t * (t - 2.0)) / (t * t * t));
  }
  return t + std::log(t * t - 2.0 * t + 2.0) - 3.0 * std::log(t);
}

//! log(exp(a) + exp(b)) without overflow; handles -inf operands.
inline double logaddexp(double a, double b)
{
  if (a == neg_inf)
    return b;
  if (b == neg_inf)
    return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

} // namespace logcdens
