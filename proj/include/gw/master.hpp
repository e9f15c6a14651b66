#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gw/diffop.hpp"
#include "gw/poly.hpp"

namespace gw {

/// Exponents at infinity d_1 < ... < d_{r+1} of a space of polynomials.
struct ExponentSpec {
  std::vector<int> d;

  int r() const { return static_cast<int>(d.size()) - 1; }
  /// n = sum_i (d_i - i + 1), with 1-based i.
  int n() const;
  /// l_i = sum_{j <= i} (d_j - j + 1), i = 1..r.
  std::vector<int> l() const;
  /// <Lambda(d), H_i> = n delta_{ir} - (2 l_i - l_{i-1} - l_{i+1}).
  std::vector<int> lambda() const;
  /// Throws BadExponents unless d is strictly increasing, nonnegative, with
  /// l_i >= 0 and Lambda(d) dominant.
  void validate() const;
};

/// One master function: Cartan data, weights at the points z, and the
/// number of variables of each color.
struct MasterSpec {
  int r = 0;
  std::vector<std::vector<int>> gram;     ///< r x r, (alpha_i, alpha_j)
  std::vector<std::vector<int>> weights;  ///< n x r, (Lambda_s, alpha_i)
  std::vector<cplx> z;
  std::vector<int> l;
  /// Exponents the spec was derived from; empty when built directly.
  std::vector<int> d;

  int n() const { return static_cast<int>(z.size()); }
  int total_l() const;
  /// Throws InvalidSpec on malformed data.
  void validate() const;
  bool is_type_a() const;
  /// Every weight row is (0, ..., 0, 1).
  bool all_last_fundamental() const;
  /// <mu, H_i> for mu = sum_s Lambda_s - sum_i l_i alpha_i; type A only.
  std::vector<int> target_weight() const;
};

/// Critical-point candidate, grouped by color.
struct TuplePoint {
  std::vector<std::vector<cplx>> groups;

  std::vector<cplx> flat() const;
  static TuplePoint from_flat(const std::vector<cplx>& flat, const std::vector<int>& l);
  TuplePoint conj() const;
};

/// y_i = prod_j (x - t_j^{(i)}).
using TupleY = std::vector<Poly>;

MasterSpec spec_from_exponents(const ExponentSpec& d, std::vector<cplx> z);

/// 1e-8 * (1 + max(|z|, |t|)).
double collision_tol(const MasterSpec& spec, const TuplePoint& t);
/// Smallest distance between a coordinate and a pole of the residual.
double min_pole_distance(const MasterSpec& spec, const TuplePoint& t);
/// Throws Collision when min_pole_distance < collision_tol.
void check_collision_free(const MasterSpec& spec, const TuplePoint& t);
void check_shape(const MasterSpec& spec, const TuplePoint& t);

cplx log_master(const MasterSpec& spec, const TuplePoint& t);
/// d log(Phi)/dt_j^{(i)} in flat (group-major) order.
Eigen::VectorXcd bae_residual(const MasterSpec& spec, const TuplePoint& t);
Eigen::MatrixXcd bae_jacobian(const MasterSpec& spec, const TuplePoint& t);

TupleY tuple_y(const TuplePoint& t);

/// prod_s (x - z_s)^{(Lambda_s, alpha_i)}, i is 0-based.
Poly weight_polynomial(const MasterSpec& spec, int i);

/// D_t for a type-A spec with arbitrary weights.
ScalarDiffOp fundamental_op_typeA(const MasterSpec& spec, const TuplePoint& t);
/// (d + ln'(y_1)) (d + ln'(y_2 / y_1)) ... (d + ln'(T / y_r)) with T = prod (x - z_s),
/// for tensor powers of the last fundamental weight. Throws Unsupported.
ScalarDiffOp plus_sign_op_typeA(const MasterSpec& spec, const TuplePoint& t);

/// Recovers y_1..y_r from a degree-echelonized basis of the fundamental
/// space; throws InexactDivision when a Wronskian quotient is not polynomial.
TupleY recover_tuple(std::span<const Poly> basis, const MasterSpec& spec);

}  // namespace gw
