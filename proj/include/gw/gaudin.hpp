#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "gw/master.hpp"
#include "gw/ratfn.hpp"
#include "gw/rep.hpp"

namespace gw {

using CSparse = Eigen::SparseMatrix<cplx, Eigen::ColMajor>;
/// Matrix polynomial, numerators[j] is the coefficient of x^j.
using MatPoly = std::vector<CSparse>;
/// Matrix polynomial in the variables w_s = 1 / (x - z_s), keyed by the
/// exponent vector (e_1, ..., e_n).
using PoleForm = std::map<std::vector<int>, CSparse>;

inline constexpr double kDefectTol = 1e-10;
inline constexpr double kEigenResidualTol = 1e-9;
inline constexpr double kSeparationTol = 1e-6;

/// Monic operator d^N + C_1(x) d^{N-1} + ... + C_N(x) acting on vector-valued
/// functions. C_k(x) = numerators[k-1](x) / common_den(x)^k.
struct OperatorDiffOp {
  int order = 0;
  Eigen::Index dim = 1;
  Poly common_den = Poly::constant(1.0);
  /// Distinct roots of common_den, used for pole detection.
  std::vector<cplx> poles;
  std::vector<MatPoly> numerators;
  /// Entrywise bounds on the moduli of the terms summed into each numerator
  /// entry (same layout as numerators); empty for hand-assembled operators.
  std::vector<MatPoly> magnitudes;
  /// C_k = sum_e pole_terms[k-1][e] prod_s (x - poles[s])^{-e_s}. Evaluation
  /// uses this form when present, since it avoids the cancellation of the
  /// expanded numerators near the poles.
  std::vector<PoleForm> pole_terms;

  /// Dense C_k(x). Throws PoleAtX when x is a root of common_den.
  Eigen::MatrixXcd coeff(int k, cplx x) const;
  /// C_k(x) * v for a block of column vectors.
  Eigen::MatrixXcd apply_coeff(int k, cplx x, const Eigen::MatrixXcd& v) const;
  /// Entry (a, b) of C_k as a rational function.
  RatFn entry(int k, Eigen::Index a, Eigen::Index b) const;
};

/// The determinant-type operator built from X_{ij} = delta_ij d/dx - sum_s E^{(s)}_{j,i} / (x - z_s).
OperatorDiffOp build_M(const RepSpace& rep, std::span<const cplx> z);
/// sum_k (-1)^k (d/dx)^{N-k} o C_k, re-expanded with coefficients on the left.
OperatorDiffOp build_K(const OperatorDiffOp& m);

/// Orthonormal basis of the whole space.
Subspace full_space(Eigen::Index dim);

/// P^T C_i(x) P. Throws NotInvariant when C_i(x) P leaves span(P) by more
/// than kDefectTol (relative), PoleAtX at a pole.
Eigen::MatrixXcd hamiltonian_matrix(const OperatorDiffOp& op, int i, cplx x, const Subspace& sub);

/// max_{i,j} |[C_i(u), C_j(v)]| / (1 + |C_i(u)| |C_j(v)|) on the subspace, Frobenius norms.
double commutation_defect(const OperatorDiffOp& op, cplx u, cplx v, const Subspace& sub);

/// max_i |G C_i(x) - C_i(x)^T G| / |G C_i(x)| with G the tensor Shapovalov Gram matrix.
double shapovalov_defect(const OperatorDiffOp& op, cplx x, const RepSpace& rep);

/// Every eigenvalue of every compression has |Im| <= 1e-8 (1 + |lambda|).
bool real_spectrum_check(const OperatorDiffOp& op, const Subspace& sub, std::span<const cplx> xs);

/// Scalar by which the central polynomial A(x) acts on an irreducible factor.
Poly central_psi(const Factor& f);
/// A(x) as a matrix on the factor.
Eigen::MatrixXcd central_element(const Factor& f, cplx x);
/// max over samples of |A(x) - psi(x) Id| / |psi(x)|.
double central_element_check(const Factor& f, std::span<const cplx> xs);

/// Dimension of the space of vector polynomials u with deg u <= degree_bound
/// and op u = 0.
int polynomial_solutions_check(const OperatorDiffOp& op, int degree_bound);

enum class EigenTarget {
  /// K against D_t (minus-sign factors, reversed order).
  K,
  /// M against the plus-sign factorization; all_last_fundamental specs only.
  M,
};

/// Coefficients of the scalar operator whose coefficients should be the
/// eigenvalues on the Bethe vector of t.
ScalarDiffOp eigenvalue_operator(const MasterSpec& spec, const TuplePoint& t, EigenTarget target);

/// max over samples and i of |C_i(x) w - lambda_i(x) w| / |w|. Throws ZeroVector.
double eigenvalue_match(const OperatorDiffOp& op, const Eigen::VectorXcd& w, const TuplePoint& t,
                        const MasterSpec& spec, std::span<const cplx> xs, EigenTarget target = EigenTarget::K);

/// Joint eigenvalue tuples over all samples and coefficients, one per column
/// of the simultaneous eigenbasis. Throws NotDiagonalizable.
std::vector<std::vector<cplx>> joint_spectrum(const OperatorDiffOp& op, const Subspace& sub,
                                              std::span<const cplx> xs, std::uint64_t seed = 1);
/// Joint eigenvalue tuples are pairwise separated by more than kSeparationTol.
bool simple_spectrum_check(const OperatorDiffOp& op, const Subspace& sub, std::span<const cplx> xs,
                           std::uint64_t seed = 1);

/// Points in the disc |x| <= 2 (1 + max|z|), at distance >= 1e-3 from every z.
/// With real_only the points lie on the real segment.
std::vector<cplx> sample_points(std::span<const cplx> z, int count, std::uint64_t seed, bool real_only);

struct SpectralReport {
  std::vector<cplx> x_samples;
  /// eigenvalues[b][k][i-1] = lambda_i(x_k) for Bethe vector b.
  std::vector<std::vector<std::vector<cplx>>> eigenvalues;
  std::vector<double> eigen_residuals;
  double symmetry_defect = 0.0;
  double commutator_defect = 0.0;
  /// z and the samples are real; real_spectrum is only meaningful then.
  bool real_data = false;
  bool real_spectrum = true;
  bool simple = true;
};

/// Runs the spectral checks for K on the singular subspace `sing`; bethe[b]
/// is the Bethe vector of orbits[b]. Samples are real when z is real, and
/// the real-spectrum flag is only evaluated in that case.
SpectralReport spectral_report(const MasterSpec& spec, const RepSpace& rep, const OperatorDiffOp& k,
                               const Subspace& sing, std::span<const TuplePoint> orbits,
                               std::span<const Eigen::VectorXcd> bethe, int samples = 5, std::uint64_t seed = 1);

}  // namespace gw
