#pragma once

#include <gtest/gtest.h>

#include <Eigen/Dense>

namespace geamkit::testing {

inline double max_entry_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e300;
  return (a - b).cwiseAbs().maxCoeff();
}

inline ::testing::AssertionResult MatrixNear(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol) {
  const double diff = max_entry_diff(a, b);
  if (diff <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "max entry difference " << diff << " exceeds " << tol;
}

}  // namespace geamkit::testing
