#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gw/poly.hpp"
#include "gw/ratfn.hpp"

namespace gw {

/// Monic linear differential operator
///   d^N/dx^N + a_1(x) d^{N-1}/dx^{N-1} + ... + a_N(x)
/// with rational coefficients; coeffs[k-1] holds a_k.
struct ScalarDiffOp {
  int order = 0;
  std::vector<RatFn> coeffs;

  static ScalarDiffOp derivative_power(int order);

  /// a_k(x) for k = 1..order.
  std::vector<cplx> coeff_values(cplx x) const;
  /// op applied to the polynomial f.
  RatFn apply(const Poly& f) const;
};

/// Coefficients expressed as numerators over powers of one common
/// denominator: a_k = numerators[k-1] / common_den^k.
struct CommonDenOp {
  int order = 0;
  Poly common_den;
  std::vector<Poly> numerators;

  ScalarDiffOp to_op() const;
};

/// Indicial data at a point; `point` is unset for the point at infinity.
struct ExponentReport {
  std::optional<cplx> point;
  std::vector<cplx> exponents;
};

Poly wronskian(std::span<const Poly> fs);
/// Wronskian divided by its leading coefficient; throws ZeroWronskian.
Poly monic_wronskian(std::span<const Poly> fs);

/// The monic operator of order fs.size() whose kernel is span(fs).
ScalarDiffOp fundamental_operator(std::span<const Poly> basis);

/// Expands (d/dx - u_0)(d/dx - u_1)...(d/dx - u_{m-1}).
ScalarDiffOp compose_factors(std::span<const RatFn> us);
/// Same expansion when every u_k = numerators[k] / common_den.
CommonDenOp compose_factors(std::span<const Poly> numerators, const Poly& common_den);

/// sum_k (-1)^k (d/dx)^{N-k} o a_k, re-expanded with coefficients on the left.
ScalarDiffOp formal_conjugate(const ScalarDiffOp& op);

/// Echelonized basis (strictly increasing degrees, monic, reduced) of the
/// polynomial solutions of op f = 0 with deg f <= degree_bound.
std::vector<Poly> polynomial_kernel(const ScalarDiffOp& op, int degree_bound);

/// Fully reduced echelon form of span(fs): monic, strictly increasing degrees.
std::vector<Poly> echelon_basis(std::span<const Poly> fs);

/// Roots of the indicial polynomial at `point` (nullopt = infinity). At
/// infinity a solution asymptotic to x^d has exponent -d.
ExponentReport exponents_at(const ScalarDiffOp& op, std::optional<cplx> point);

/// Roots of the Wronskian with multiplicity.
std::vector<cplx> ramification_points(std::span<const Poly> fs);

bool is_real_space(const ScalarDiffOp& op, double tol);

}  // namespace gw
