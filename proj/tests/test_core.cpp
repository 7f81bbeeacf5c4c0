#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "logcdens/errors.hpp"
#include "logcdens/isotonic.hpp"
#include "logcdens/numeric.hpp"
#include "logcdens/objective.hpp"
#include "logcdens/params.hpp"
#include "logcdens/rng.hpp"
#include "logcdens/weighted_sample.hpp"
#include "support.hpp"

using namespace logcdens;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs)
{
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs)
    v[i++] = x;
  return v;
}

ConcaveParams make_params(double phi1, std::initializer_list<double> slopes)
{
  ConcaveParams p;
  p.phi1 = phi1;
  p.slopes = vec(slopes);
  return p;
}

//! Random sample with n distinct sorted points in [0, 4]; optionally
//! random weights in [0.2, 3].
WeightedSample random_sample(Rng& rng, Eigen::Index n, bool weighted)
{
  Eigen::VectorXd raw(n);
  for (Eigen::Index i = 0; i < n; ++i)
    raw[i] = 4.0 * rng.uniform();
  if (!weighted)
    return prepare_sample(raw);
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i)
    w[i] = 0.2 + 2.8 * rng.uniform();
  return prepare_sample(raw, w);
}

ConcaveParams random_params(Rng& rng, Eigen::Index n)
{
  ConcaveParams p;
  p.phi1 = -2.0 + 3.0 * rng.uniform();
  p.slopes.resize(n - 1);
  for (Eigen::Index k = 0; k + 1 < n; ++k)
    p.slopes[k] = -2.5 + 5.0 * rng.uniform();
  return p;
}

} // namespace

TEST_CASE("prepare_sample merges duplicates into weights")
{
  const WeightedSample s = prepare_sample(vec({1, 0, 1}));
  CHECK(s.points()[0] == 0.0);
  CHECK(s.points()[1] == 1.0);
  CHECK(s.weights()[0] == 1.0);
  CHECK(s.weights()[1] == 2.0);
  CHECK(s.total_weight() == 3.0);
}

TEST_CASE("prepare_sample rejects degenerate and invalid input")
{
  CHECK_THROWS_AS(prepare_sample(vec({5})), DegenerateSample);
  CHECK_THROWS_AS(prepare_sample(vec({5, 5, 5})), DegenerateSample);
  CHECK_THROWS_AS(prepare_sample(Eigen::VectorXd()), DegenerateSample);
  CHECK_THROWS_AS(prepare_sample(vec({0, std::nan("")})), InvalidData);
  CHECK_THROWS_AS(prepare_sample(vec({0, 1}), vec({1, -1})), InvalidData);
  CHECK_THROWS_AS(prepare_sample(vec({0, 1}), vec({1, 0})), InvalidData);
  CHECK_THROWS_AS(prepare_sample(vec({0, 1, 2}), vec({1, 1})), InvalidData);
}

TEST_CASE("prepare_sample passes explicit weights through")
{
  const WeightedSample s = prepare_sample(vec({0, 1, 2}), vec({0.5, 0.25, 0.25}));
  CHECK(s.points().size() == 3);
  CHECK(s.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("objective matches closed-form values on two points")
{
  const WeightedSample s = prepare_sample(vec({0, 1}));
  CHECK(objective(make_params(0.0, {0.0}), s).value == doctest::Approx(-2.0).epsilon(1e-15));
  const double expected = 1.0 - 2.0 * (std::exp(1.0) - 1.0);
  CHECK(objective(make_params(0.0, {1.0}), s).value == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("objective agrees with the quadrature oracle on three points")
{
  const WeightedSample s = prepare_sample(vec({0, 1, 2}));
  const ConcaveParams p = make_params(-1.0, {0.5, -0.5});
  const double got = objective(p, s).value;
  const double want = testsupport::oracle_objective(s.points(), s.weights(), p.phi1, p.slopes);
  CHECK(got == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("objective equals the weighted quadrature oracle on random inputs")
{
  Rng rng(123);
  for (int rep = 0; rep < 40; ++rep) {
    const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng.uniform() * 20);
    const WeightedSample s = random_sample(rng, n, rep % 2 == 1);
    const ConcaveParams p = random_params(rng, s.size());
    const double got = objective(p, s).value;
    const double want = testsupport::oracle_objective(s.points(), s.weights(), p.phi1, p.slopes);
    CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("objective is continuous through the zero-slope branch")
{
  const WeightedSample s = prepare_sample(vec({0, 0.7, 1.9, 3.0}));
  const double at_zero = objective(make_params(-0.5, {0.4, 0.0, -0.8}), s).value;
  const double at_eps = objective(make_params(-0.5, {0.4, 1e-12, -0.8}), s).value;
  CHECK(std::abs(at_eps - at_zero) < 1e-9);
}

TEST_CASE("objective rejects nonfinite parameters")
{
  const WeightedSample s = prepare_sample(vec({0, 1}));
  CHECK_THROWS_AS(objective(make_params(std::nan(""), {0.0}), s), InvalidParams);
  ConcaveParams p = make_params(0.0, {0.0});
  p.slopes[0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(objective(p, s), InvalidParams);
}

TEST_CASE("analytic gradient matches central differences")
{
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng.uniform() * 15);
    const WeightedSample s = random_sample(rng, n, rep % 2 == 0);
    const ConcaveParams p = random_params(rng, s.size());
    CHECK(gradient_check(p, s, 1e-6) < 1e-5);
  }
}

TEST_CASE("gradient limit branch at zero slope stays accurate")
{
  const WeightedSample s = prepare_sample(vec({0, 1, 2.5}));
  CHECK(gradient_check(make_params(-0.7, {0.0, 0.0}), s, 1e-6) < 1e-4);
  CHECK(gradient_check(make_params(-0.2, {0.3, 0.0}), s, 1e-6) < 1e-4);
}

TEST_CASE("normalized uniform is stationary in phi1")
{
  const WeightedSample s = prepare_sample(vec({0, 1}));
  const ObjectiveValue v = objective(make_params(0.0, {0.0}), s, true);
  CHECK((*v.gradient)[0] == 0.0);
}

TEST_CASE("project_cone keeps feasible input unchanged")
{
  const Eigen::VectorXd v = vec({3, 2, 1});
  const Eigen::VectorXd out = project_cone(v);
  CHECK(out == v);
}

TEST_CASE("project_cone pools violators to weighted means")
{
  const Eigen::VectorXd a = project_cone(vec({3, 1, 2}));
  CHECK(a[0] == doctest::Approx(3.0));
  CHECK(a[1] == doctest::Approx(1.5));
  CHECK(a[2] == doctest::Approx(1.5));
  const Eigen::VectorXd b = project_cone(vec({1, 2}), vec({3, 1}));
  CHECK(b[0] == doctest::Approx(1.25));
  CHECK(b[1] == doctest::Approx(1.25));
}

TEST_CASE("project_cone rejects nonpositive weights")
{
  CHECK_THROWS_AS(project_cone(vec({1, 2}), vec({1, 0})), InvalidData);
  CHECK_THROWS_AS(project_cone(vec({1, 2}), vec({1, -2})), InvalidData);
  CHECK_THROWS_AS(project_cone(vec({1, 2}), vec({1})), InvalidData);
}

TEST_CASE("project_cone agrees with the composition oracle")
{
  Rng rng(99);
  for (int rep = 0; rep < 60; ++rep) {
    const int m = 1 + static_cast<int>(rng.uniform() * 9);
    Eigen::VectorXd v(m), w(m);
    for (int i = 0; i < m; ++i) {
      v[i] = -3.0 + 6.0 * rng.uniform();
      w[i] = 0.1 + 3.0 * rng.uniform();
    }
    const Eigen::VectorXd got = project_cone(v, w);
    const Eigen::VectorXd want = testsupport::oracle_project_nonincreasing(v, w);
    CHECK((got - want).lpNorm<Eigen::Infinity>() < 1e-11);
  }
}

TEST_CASE("project_cone is idempotent, feasible, and non-expansive")
{
  Rng rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    const int m = 2 + static_cast<int>(rng.uniform() * 12);
    Eigen::VectorXd u(m), v(m), w(m);
    for (int i = 0; i < m; ++i) {
      u[i] = -3.0 + 6.0 * rng.uniform();
      v[i] = -3.0 + 6.0 * rng.uniform();
      w[i] = 0.1 + 3.0 * rng.uniform();
    }
    const Eigen::VectorXd pu = project_cone(u, w);
    const Eigen::VectorXd pv = project_cone(v, w);
    CHECK(project_cone(pu, w) == pu);
    for (int i = 0; i + 1 < m; ++i) {
      CHECK(pu[i] >= pu[i + 1] - 1e-12);
    }
    const double lhs = (pu - pv).cwiseAbs2().dot(w);
    const double rhs = (u - v).cwiseAbs2().dot(w);
    CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
  }
}

TEST_CASE("knot transform accumulates and inverts")
{
  const WeightedSample s01 = prepare_sample(vec({0, 1}));
  const Eigen::VectorXd phi = log_density_at_knots(make_params(0.0, {0.0}), s01);
  CHECK(phi[0] == 0.0);
  CHECK(phi[1] == 0.0);

  const WeightedSample s02 = prepare_sample(vec({0, 2}));
  const Eigen::VectorXd phi2 = log_density_at_knots(make_params(1.0, {-1.0}), s02);
  CHECK(phi2[0] == doctest::Approx(1.0));
  CHECK(phi2[1] == doctest::Approx(-1.0));

  // knots -> params -> knots round trip
  Rng rng(42);
  for (int rep = 0; rep < 20; ++rep) {
    const WeightedSample s = random_sample(rng, 12, false);
    Eigen::VectorXd phi0(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
      phi0[i] = -4.0 + 8.0 * rng.uniform();
    const ConcaveParams p = params_from_knots(s.points(), phi0);
    const Eigen::VectorXd phi1 = log_density_at_knots(p, s);
    const double scale = 1.0 + phi0.lpNorm<Eigen::Infinity>();
    CHECK((phi1 - phi0).lpNorm<Eigen::Infinity>() <= 1e-14 * scale);
  }
}

TEST_CASE("stable relexp helpers agree with naive forms away from zero")
{
  for (double t : {-30.0, -3.0, -0.7, 0.9, 4.0, 25.0}) {
    CHECK(log_relexp(t) == doctest::Approx(std::log((std::exp(t) - 1.0) / t)).epsilon(1e-12));
    const double d1 = (std::exp(t) * (t - 1.0) + 1.0) / (t * t);
    CHECK(log_relexp_d1(t) == doctest::Approx(std::log(d1)).epsilon(1e-11));
    const double d2 = (std::exp(t) * (t * t - 2.0 * t + 2.0) - 2.0) / (t * t * t);
    CHECK(log_relexp_d2(t) == doctest::Approx(std::log(d2)).epsilon(1e-10));
  }
  CHECK(relexp(0.0) == 1.0);
  CHECK(log_relexp(0.0) == 0.0);
}
