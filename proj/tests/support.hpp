#pragma once

// Test-only oracles and data generators. Everything here is kept
// independent of the library code paths it is used to check: the
// quadrature oracle integrates exp(phi) numerically instead of using
// the closed-form segment masses, and the cone-projection oracle
// enumerates block compositions instead of running PAVA.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "logcdens/rng.hpp"

namespace testsupport {

// ---- adaptive quadrature ------------------------------------------------

inline double simpson(const std::function<double(double)>& f, double a, double m, double b,
                      double fa, double fm, double fb)
{
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth)
{
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, lm, m, fa, flm, fm);
  const double right = simpson(f, m, rm, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

//! Integral of f over [a, b] to absolute tolerance tol.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 48)
{
  if (a == b)
    return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = simpson(f, a, m, b, fa, fm, fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// ---- quadrature oracle for the objective --------------------------------

//! Test-side piecewise-linear interpolation of per-knot log values.
inline double interp_loglinear(const Eigen::VectorXd& x, const Eigen::VectorXd& phi, double v)
{
  const Eigen::Index n = x.size();
  if (v <= x[0])
    return phi[0];
  if (v >= x[n - 1])
    return phi[n - 1];
  Eigen::Index k = std::upper_bound(x.data(), x.data() + n, v) - x.data() - 1;
  k = std::clamp<Eigen::Index>(k, 0, n - 2);
  const double w = (v - x[k]) / (x[k + 1] - x[k]);
  return phi[k] * (1.0 - w) + phi[k + 1] * w;
}

//! Per-knot log values from (phi1, slopes), accumulated directly.
inline Eigen::VectorXd accumulate_phi(const Eigen::VectorXd& x, double phi1,
                                      const Eigen::VectorXd& slopes)
{
  Eigen::VectorXd phi(x.size());
  phi[0] = phi1;
  for (Eigen::Index k = 0; k + 1 < x.size(); ++k) {
    phi[k + 1] = phi[k] + slopes[k] * (x[k + 1] - x[k]);
  }
  return phi;
}

//! Integral of exp(phi) over the sample range by adaptive quadrature,
//! split at the knots.
inline double quadrature_integral_exp(const Eigen::VectorXd& x, const Eigen::VectorXd& phi,
                                      double rel_tol = 1e-13)
{
  double total = 0.0;
  for (Eigen::Index k = 0; k + 1 < x.size(); ++k) {
    auto f = [&](double v) { return std::exp(interp_loglinear(x, phi, v)); };
    const double rough = std::max(std::exp(phi[k]), std::exp(phi[k + 1])) * (x[k + 1] - x[k]);
    total += adaptive_simpson(f, x[k], x[k + 1], std::max(rough, 1e-30) * rel_tol);
  }
  return total;
}

//! Oracle objective: sum_i w_i phi(x_i) - W * integral exp(phi).
inline double oracle_objective(const Eigen::VectorXd& x, const Eigen::VectorXd& w, double phi1,
                               const Eigen::VectorXd& slopes)
{
  const Eigen::VectorXd phi = accumulate_phi(x, phi1, slopes);
  return w.dot(phi) - w.sum() * quadrature_integral_exp(x, phi);
}

// ---- cone projection oracle ----------------------------------------------

//! Weighted LS projection onto nonincreasing vectors by enumerating
//! all 2^(m-1) compositions into consecutive blocks; each candidate
//! takes the weighted mean per block and must be feasible. The true
//! projection is one of these candidates, so the feasible minimizer of
//! the weighted SSE is the projection. Only for small m.
inline Eigen::VectorXd oracle_project_nonincreasing(const Eigen::VectorXd& v,
                                                    const Eigen::VectorXd& w)
{
  const int m = static_cast<int>(v.size());
  double best_sse = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best = v;
  for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
    // bit k set = block boundary between k and k+1
    Eigen::VectorXd cand(m);
    int start = 0;
    bool feasible = true;
    double prev_mean = std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k) {
      const bool boundary = (k == m - 1) || (mask >> k & 1u);
      if (!boundary)
        continue;
      double sw = 0.0, sv = 0.0;
      for (int j = start; j <= k; ++j) {
        sw += w[j];
        sv += w[j] * v[j];
      }
      const double mean = sv / sw;
      if (mean > prev_mean + 1e-15) {
        feasible = false;
        break;
      }
      for (int j = start; j <= k; ++j)
        cand[j] = mean;
      prev_mean = mean;
      start = k + 1;
    }
    if (!feasible)
      continue;
    const double sse = (cand - v).cwiseAbs2().dot(w);
    if (sse < best_sse) {
      best_sse = sse;
      best = cand;
    }
  }
  return best;
}

// ---- deterministic generators --------------------------------------------

inline double draw_normal(logcdens::Rng& rng)
{
  // Box-Muller; one variate per pair of uniforms keeps the stream simple
  double u1 = rng.uniform();
  while (u1 <= 0.0)
    u1 = rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline Eigen::VectorXd draw_normals(logcdens::Rng& rng, Eigen::Index n, double mean = 0.0,
                                    double sd = 1.0)
{
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i)
    out[i] = mean + sd * draw_normal(rng);
  return out;
}

//! Gamma(2, 1) as the sum of two unit exponentials.
inline double draw_gamma2(logcdens::Rng& rng)
{
  double u1 = rng.uniform(), u2 = rng.uniform();
  while (u1 <= 0.0)
    u1 = rng.uniform();
  while (u2 <= 0.0)
    u2 = rng.uniform();
  return -std::log(u1) - std::log(u2);
}

inline double draw_logistic(logcdens::Rng& rng)
{
  double u = rng.uniform();
  while (u <= 0.0 || u >= 1.0)
    u = rng.uniform();
  return std::log(u / (1.0 - u));
}

// ---- empirical statistics -------------------------------------------------

//! One-sample Kolmogorov-Smirnov statistic against a reference CDF.
inline double ks_statistic(std::vector<double> draws, const std::function<double(double)>& ref_cdf)
{
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double d = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double f = ref_cdf(draws[i]);
    d = std::max(d, std::abs((i + 1) / n - f));
    d = std::max(d, std::abs(i / n - f));
  }
  return d;
}

//! Two-component misclassification count, minimized over the label swap.
inline int misclassified_2(const Eigen::VectorXi& labels, const Eigen::VectorXi& truth)
{
  int direct = 0;
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    direct += labels[i] != truth[i];
  }
  return std::min<int>(direct, static_cast<int>(labels.size()) - direct);
}

} // namespace testsupport
