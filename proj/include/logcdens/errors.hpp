#pragma once

#include <stdexcept>
#include <string>

namespace logcdens {

//! Fewer than two distinct data points.
class DegenerateSample : public std::runtime_error {
public:
  explicit DegenerateSample(const std::string& msg)
    : std::runtime_error(msg)
  {
  }
};

//! Nonfinite, malformed, or out-of-contract input values.
class InvalidData : public std::runtime_error {
public:
  explicit InvalidData(const std::string& msg)
    : std::runtime_error(msg)
  {
  }
};

//! Nonfinite parameter vector passed to the objective.
class InvalidParams : public std::runtime_error {
public:
  explicit InvalidParams(const std::string& msg)
    : std::runtime_error(msg)
  {
  }
};

//! Numerical breakdown inside the solver (nonfinite objective).
class SolverFailure : public std::runtime_error {
public:
  explicit SolverFailure(const std::string& msg)
    : std::runtime_error(msg)
  {
  }
};

//! Evaluation point outside the support where the quantity is undefined.
class OutOfSupport : public std::runtime_error {
public:
  explicit OutOfSupport(const std::string& msg)
    : std::runtime_error(msg)
  {
  }
};

//! Every EM restart collapsed (empty or underweight component).
class DegenerateMixture : public std::runtime_error {
public:
  explicit DegenerateMixture(const std::string& msg)
    : std::runtime_error(msg)
  {
  }
};

} // namespace logcdens
