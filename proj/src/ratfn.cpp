#include "gw/ratfn.hpp"

#include <algorithm>
#include <cmath>

#include "gw/error.hpp"

namespace gw {

namespace {

constexpr double kSameDenTol = 1e-14;

bool same_poly(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return false;
  return coeff_distance(a, b) <= kSameDenTol * std::max(1.0, a.max_abs_coeff());
}

}  // namespace

bool divides(const Poly& p, const Poly& q, double tol, Poly* quotient) {
  if (p.is_zero()) return false;
  if (q.is_zero()) {
    if (quotient) *quotient = Poly();
    return true;
  }
  auto [quo, rem] = divmod(q, p);
  if (rem.max_abs_coeff() > tol * q.max_abs_coeff()) return false;
  if (quotient) *quotient = std::move(quo);
  return true;
}

RatFn::RatFn(Poly num) : num_(std::move(num)), den_(Poly::constant(1.0)) {}

RatFn::RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::InvalidSpec, "rational function with zero denominator");
  const cplx lead = den_.leading();
  if (lead != cplx(1.0)) {
    num_ *= 1.0 / lead;
    den_ *= 1.0 / lead;
  }
}

RatFn RatFn::log_derivative(const Poly& f) { return RatFn(f.derivative(), f); }

RatFn RatFn::derivative() const {
  if (den_.degree() == 0) return RatFn(num_.derivative());
  return RatFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFn RatFn::conj() const { return RatFn(num_.conj(), den_.conj()); }

namespace {
// Denominators produced by differentiation are exact powers of one
// another; anything looser falls back to the plain product.
constexpr double kExactTol = 1e-13;
}  // namespace

RatFn& RatFn::operator+=(const RatFn& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  Poly quo;
  if (same_poly(den_, o.den_)) {
    num_ += o.num_;
  } else if (den_.degree() >= o.den_.degree() && divides(o.den_, den_, kExactTol, &quo)) {
    num_ += o.num_ * quo;
  } else if (o.den_.degree() > den_.degree() && divides(den_, o.den_, kExactTol, &quo)) {
    num_ = num_ * quo + o.num_;
    den_ = o.den_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  return *this;
}

RatFn& RatFn::operator-=(const RatFn& o) { return *this += -o; }

RatFn& RatFn::operator*=(const RatFn& o) {
  num_ *= o.num_;
  if (o.den_.degree() > 0) den_ *= o.den_;
  return *this;
}

RatFn RatFn::cancel_factor(const Poly& factor, double tol) const {
  if (factor.degree() <= 0) return *this;
  Poly num = num_;
  Poly den = den_;
  Poly qn, qd;
  while (den.degree() >= factor.degree() && divides(factor, den, tol, &qd) &&
         divides(factor, num, tol, &qn)) {
    num = std::move(qn);
    den = std::move(qd);
    if (num.is_zero()) break;
  }
  return RatFn(std::move(num), std::move(den));
}

RatFn RatFn::reduced() const {
  if (num_.is_zero()) return RatFn();
  if (den_.degree() <= 0 || num_.degree() <= 0) return *this;
  std::vector<cplx> den_roots = find_roots(den_);
  std::vector<cplx> num_roots = find_roots(num_);
  std::vector<bool> used(num_roots.size(), false);
  Poly num = num_;
  Poly den = den_;
  for (cplx rho : den_roots) {
    for (std::size_t k = 0; k < num_roots.size(); ++k) {
      if (used[k]) continue;
      if (std::abs(num_roots[k] - rho) <= kCancelTol * (1.0 + std::abs(rho))) {
        used[k] = true;
        num = divmod(num, Poly::linear(num_roots[k])).first;
        den = divmod(den, Poly::linear(rho)).first;
        break;
      }
    }
  }
  return RatFn(std::move(num), std::move(den));
}

}  // namespace gw
