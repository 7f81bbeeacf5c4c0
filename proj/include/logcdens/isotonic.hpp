#pragma once

#include <Eigen/Dense>

namespace logcdens {

//! Weighted least-squares projection onto the nonincreasing cone
//! { y : y_1 >= y_2 >= ... >= y_m } via pool-adjacent-violators.
//!
//! Exact in finitely many merges, idempotent, and non-expansive in the
//! weighted norm. Throws InvalidData on nonpositive weights or length
//! mismatch.
Eigen::VectorXd project_cone(const Eigen::VectorXd& v, const Eigen::VectorXd& weights);

//! Unit-weight overload.
Eigen::VectorXd project_cone(const Eigen::VectorXd& v);

} // namespace logcdens
