#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace gw {

using cplx = std::complex<double>;

/// Dense univariate polynomial with complex coefficients, ascending degree.
///
/// The zero polynomial has no coefficients. Every constructor and arithmetic
/// result is trimmed: trailing coefficients with |c| <= 1e-12 * max|c| are
/// dropped, so the stored leading coefficient is always nonzero.
class Poly {
 public:
  static constexpr double kTrimTol = 1e-12;

  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs);
  Poly(std::initializer_list<cplx> coeffs);

  static Poly constant(cplx c);
  static Poly x();
  /// (x - root)
  static Poly linear(cplx root);
  /// Monic polynomial with the given roots; the empty product is 1.
  static Poly from_roots(std::span<const cplx> roots);
  static Poly monomial(int degree, cplx c = 1.0);

  bool is_zero() const { return c_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return c_; }
  /// Coefficient of x^k (zero beyond the degree).
  cplx operator[](int k) const;
  cplx leading() const;
  double max_abs_coeff() const;

  cplx operator()(cplx x) const;
  Poly derivative(int times = 1) const;
  Poly monic() const;
  /// Coefficients of p(x + shift).
  Poly shifted(cplx shift) const;
  Poly conj() const;
  Poly pow(int e) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(cplx s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, cplx s) { return a *= s; }
  friend Poly operator*(cplx s, Poly a) { return a *= s; }
  friend Poly operator-(Poly a) { return a *= -1.0; }

 private:
  void trim();
  std::vector<cplx> c_;
};

/// Quotient and remainder of long division; throws on division by zero.
std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den);

/// Sup-norm of the coefficient difference.
double coeff_distance(const Poly& a, const Poly& b);

/// All complex roots with multiplicity (companion eigenvalues, Newton
/// polished), sorted by real part then imaginary part.
std::vector<cplx> find_roots(const Poly& p);

}  // namespace gw
