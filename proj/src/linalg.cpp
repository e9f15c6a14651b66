#include "gw/linalg.hpp"

#include <Eigen/SVD>
#include <limits>

namespace gw {

namespace {

template <typename Matrix>
Matrix null_space_impl(const Matrix& a, double rel_tol) {
  const Eigen::Index cols = a.cols();
  if (cols == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  if (smax == 0.0) return Matrix::Identity(cols, cols);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * smax) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

}  // namespace

Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& a, double rel_tol) {
  return null_space_impl(a, rel_tol);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol) {
  return null_space_impl(a, rel_tol);
}

int numerical_rank(const Eigen::MatrixXcd& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return rank;
}

double condition_number(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 1.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

}  // namespace gw
