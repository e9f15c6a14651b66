#pragma once

#include "gw/poly.hpp"

namespace gw {

/// Ratio num/den of complex polynomials with a monic, nonzero denominator.
///
/// Arithmetic does not cancel common factors; call reduced() for the
/// best-effort approximate gcd cancellation, or cancel_factor() when the
/// candidate common factor is known.
class RatFn {
 public:
  /// Roots of num and den closer than this (relative) are cancelled by reduced().
  static constexpr double kCancelTol = 1e-10;

  RatFn() : den_(Poly::constant(1.0)) {}
  RatFn(Poly num);  // NOLINT: polynomials are rational functions
  RatFn(Poly num, Poly den);

  static RatFn constant(cplx c) { return RatFn(Poly::constant(c)); }
  /// f'/f
  static RatFn log_derivative(const Poly& f);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  cplx operator()(cplx x) const { return num_(x) / den_(x); }
  RatFn derivative() const;
  RatFn conj() const;
  RatFn reduced() const;
  /// Divides num and den by `factor` as long as both divide with relative
  /// remainder <= tol.
  RatFn cancel_factor(const Poly& factor, double tol) const;

  RatFn& operator+=(const RatFn& o);
  RatFn& operator-=(const RatFn& o);
  RatFn& operator*=(const RatFn& o);

  friend RatFn operator+(RatFn a, const RatFn& b) { return a += b; }
  friend RatFn operator-(RatFn a, const RatFn& b) { return a -= b; }
  friend RatFn operator*(RatFn a, const RatFn& b) { return a *= b; }
  friend RatFn operator-(RatFn a) {
    a.num_ *= -1.0;
    return a;
  }

 private:
  Poly num_;
  Poly den_;
};

/// True when p divides q exactly up to a relative remainder of tol; the
/// quotient is stored in *quotient when non-null.
bool divides(const Poly& p, const Poly& q, double tol, Poly* quotient = nullptr);

}  // namespace gw
