#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "gw/master.hpp"

namespace gw {

using SparseMat = Eigen::SparseMatrix<double, Eigen::ColMajor>;

/// One tensor factor: a finite-dimensional gl_{r+1}-module given by the
/// dense matrices of all E_{i,j} in a fixed basis.
struct Factor {
  int r = 0;
  /// Highest weight as gl-weight (m_0 .. m_r), e.g. (0, ..., 0, -1) for the
  /// dual vector representation.
  std::vector<int> gl_highest;
  /// e[(i-1) * (r+1) + (j-1)] is the matrix of E_{i,j}.
  std::vector<Eigen::MatrixXd> e;
  int highest_index = 0;

  int dim() const { return static_cast<int>(e.front().rows()); }
  const Eigen::MatrixXd& gen(int i, int j) const { return e[static_cast<std::size_t>((i - 1) * (r + 1) + (j - 1))]; }
  /// <Lambda, alpha_i> for i = 1..r (equal to <Lambda, H_i> in type A).
  std::vector<int> dynkin() const;

  /// (C^{r+1})^*, with E_{i,j} e*_k = -delta_{ik} e*_j.
  static Factor dual_vector(int r);
  /// Sym^m of (C^2)^*, basis q = 0..m for e*_1^{m-q} e*_2^q; r = 1.
  static Factor sym_power(int m);
};

/// Tensor product of factors, basis in lexicographic order of multi-indices
/// with the first factor most significant.
class RepSpace {
 public:
  static constexpr Eigen::Index kMaxDim = 4096;

  RepSpace(int r, std::vector<Factor> factors);
  /// n copies of the dual vector representation of gl_{r+1}.
  static RepSpace dual_tensor(int r, int n);
  /// Sym^{m_s} factors for r = 1.
  static RepSpace sym_tensor(const std::vector<int>& ms);

  int r() const { return r_; }
  int n() const { return static_cast<int>(factors_.size()); }
  Eigen::Index dim() const { return dim_; }
  const std::vector<Factor>& factors() const { return factors_; }

  std::vector<int> multi_index(Eigen::Index k) const;
  Eigen::Index flat_index(const std::vector<int>& a) const;

  /// E^{(s)}_{i,j}, 1-based i, j, s.
  SparseMat generator_action(int i, int j, int s) const;
  /// sum_s E^{(s)}_{i,j}.
  SparseMat total_action(int i, int j) const;
  /// Applies E^{(s)}_{i,j} to a coordinate vector without forming the matrix.
  Eigen::VectorXcd apply(int i, int j, int s, const Eigen::VectorXcd& v) const;

  /// <weight of basis vector k, H_i>, i = 1..r.
  std::vector<int> sl_weight(Eigen::Index k) const;
  Eigen::VectorXd highest_weight_vector() const;
  /// Weights (Lambda_s, alpha_i) of the factors, as a MasterSpec weights matrix.
  std::vector<std::vector<int>> factor_weights() const;

 private:
  int r_;
  std::vector<Factor> factors_;
  std::vector<Eigen::Index> stride_;
  Eigen::Index dim_;
};

/// Columns form an orthonormal basis of a subspace of the rep coordinates.
struct Subspace {
  Eigen::MatrixXd basis;
  Eigen::Index dim() const { return basis.cols(); }
};

Subspace weight_space(const RepSpace& rep, const std::vector<int>& mu);
/// Vectors of weight mu annihilated by every sum_s E^{(s)}_{i,i+1}.
Subspace singular_subspace(const RepSpace& rep, const std::vector<int>& mu);

/// dim Sing of the tensor power of the dual vector representation at Lambda(d).
int multiplicity_N(const ExponentSpec& d);

/// Gram matrix of the Shapovalov form of one factor in its basis, built from
/// S(v, v) = 1 and S(E_{j,i} u, w) = S(u, E_{i,j} w).
Eigen::MatrixXd factor_gram(const Factor& f);
/// Kronecker product of the factor Gram matrices.
Eigen::MatrixXd shapovalov_gram(const RepSpace& rep);

}  // namespace gw
