#include "logcdens/artifact.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "logcdens/errors.hpp"

namespace logcdens {

namespace {
constexpr int kArtifactVersion = 1;

void write_array(std::ostream& os, const Eigen::VectorXd& v)
{
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0)
      os << ',';
    os << format_double(v[i]);
  }
  os << ']';
}

Eigen::VectorXd read_array(const nlohmann::json& j, const char* key)
{
  if (!j.contains(key) || !j[key].is_array()) {
    throw InvalidData(std::string("artifact: missing array field '") + key + "'");
  }
  const auto& a = j[key];
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto& e = a[static_cast<std::size_t>(i)];
    if (!e.is_number()) {
      throw InvalidData(std::string("artifact: non-numeric entry in '") + key + "'");
    }
    v[i] = e.get<double>();
  }
  return v;
}

} // namespace

std::string format_double(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_fit_artifact(std::ostream& os, const LogConcaveFit& fit)
{
  const SolverReport& rep = fit.report();
  os << "{\"version\":" << kArtifactVersion;
  os << ",\"knots\":";
  write_array(os, fit.knots());
  os << ",\"log_density\":";
  write_array(os, fit.log_density());
  os << ",\"cdf_at_knots\":";
  write_array(os, fit.cdf_at_knots());
  os << ",\"report\":{\"iterations\":" << rep.iterations
     << ",\"converged\":" << (rep.converged ? "true" : "false")
     << ",\"stationarity_residual\":"
     << (std::isfinite(rep.stationarity_residual) ? format_double(rep.stationarity_residual)
                                                  : std::string("null"))
     << ",\"objective_trace\":[";
  for (std::size_t i = 0; i < rep.objective_trace.size(); ++i) {
    if (i > 0)
      os << ',';
    os << format_double(rep.objective_trace[i]);
  }
  os << "]}}\n";
}

std::string fit_artifact_to_string(const LogConcaveFit& fit)
{
  std::ostringstream os;
  write_fit_artifact(os, fit);
  return os.str();
}

LogConcaveFit load_fit_artifact(std::istream& is)
{
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidData(std::string("artifact: malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("version") || !j["version"].is_number_integer()) {
    throw InvalidData("artifact: missing version field");
  }
  if (j["version"].get<int>() != kArtifactVersion) {
    throw InvalidData("artifact: unsupported version");
  }
  Eigen::VectorXd knots = read_array(j, "knots");
  Eigen::VectorXd log_density = read_array(j, "log_density");

  SolverReport report;
  if (j.contains("report") && j["report"].is_object()) {
    const auto& r = j["report"];
    report.iterations = r.value("iterations", 0);
    report.converged = r.value("converged", false);
    if (r.contains("stationarity_residual") && r["stationarity_residual"].is_number()) {
      report.stationarity_residual = r["stationarity_residual"].get<double>();
    }
    if (r.contains("objective_trace") && r["objective_trace"].is_array()) {
      for (const auto& e : r["objective_trace"]) {
        report.objective_trace.push_back(e.get<double>());
      }
    }
  }
  return LogConcaveFit(std::move(knots), std::move(log_density), std::move(report));
}

LogConcaveFit load_fit_artifact_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw InvalidData("artifact: cannot open '" + path + "'");
  }
  return load_fit_artifact(in);
}

} // namespace logcdens
