#pragma once

#include <iosfwd>
#include <string>

#include "logcdens/fit.hpp"

namespace logcdens {

//! Serialize a double with 17 significant digits, enough for an exact
//! round trip through text.
std::string format_double(double x);

//! Write the fit artifact JSON: version, knots, log_density,
//! cdf_at_knots, and the solver report. Key order and number format
//! are fixed so identical fits serialize to identical bytes.
void write_fit_artifact(std::ostream& os, const LogConcaveFit& fit);
std::string fit_artifact_to_string(const LogConcaveFit& fit);

//! Parse an artifact produced by write_fit_artifact. The per-knot CDF
//! is rederived from (knots, log_density), which reproduces the stored
//! values bit for bit for untampered artifacts. Throws InvalidData on
//! malformed documents.
LogConcaveFit load_fit_artifact(std::istream& is);
LogConcaveFit load_fit_artifact_file(const std::string& path);

} // namespace logcdens
