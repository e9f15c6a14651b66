#pragma once

#include <Eigen/Dense>
#include <complex>

namespace gw {

/// Relative singular-value threshold used for null spaces and ranks.
inline constexpr double kNullSpaceTol = 1e-10;

/// Orthonormal basis (columns) of the null space of A, keeping right singular
/// vectors whose singular value is <= rel_tol * sigma_max.
Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& a, double rel_tol = kNullSpaceTol);
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol = kNullSpaceTol);

/// Number of singular values above rel_tol * sigma_max.
int numerical_rank(const Eigen::MatrixXcd& a, double rel_tol);

/// 2-norm condition number (infinite for singular input).
double condition_number(const Eigen::MatrixXcd& a);

}  // namespace gw
