#include "gw/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "gw/error.hpp"

namespace gw {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::BadExponents: return "BadExponents";
    case ErrorKind::Collision: return "Collision";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ZeroWronskian: return "ZeroWronskian";
    case ErrorKind::InexactDivision: return "InexactDivision";
    case ErrorKind::IrregularSingularity: return "IrregularSingularity";
    case ErrorKind::NotRealData: return "NotRealData";
    case ErrorKind::DimensionCap: return "DimensionCap";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::PoleAtX: return "PoleAtX";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

Poly::Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<cplx> coeffs) : c_(coeffs) { trim(); }

Poly Poly::constant(cplx c) { return Poly(std::vector<cplx>{c}); }

Poly Poly::x() { return Poly({0.0, 1.0}); }

Poly Poly::linear(cplx root) { return Poly({-root, 1.0}); }

Poly Poly::from_roots(std::span<const cplx> roots) {
  std::vector<cplx> c{1.0};
  for (cplx r : roots) {
    c.push_back(0.0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] *= -r;
  }
  return Poly(std::move(c));
}

Poly Poly::monomial(int degree, cplx c) {
  std::vector<cplx> v(static_cast<std::size_t>(degree) + 1, 0.0);
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  const double tol = kTrimTol * (m > 0.0 ? m : 1.0);
  while (!c_.empty() && std::abs(c_.back()) <= tol) c_.pop_back();
}

cplx Poly::operator[](int k) const {
  if (k < 0 || k > degree()) return 0.0;
  return c_[static_cast<std::size_t>(k)];
}

cplx Poly::leading() const { return c_.empty() ? cplx(0.0) : c_.back(); }

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

cplx Poly::operator()(cplx x) const {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative(int times) const {
  std::vector<cplx> c = c_;
  for (int t = 0; t < times && !c.empty(); ++t) {
    for (std::size_t k = 1; k < c.size(); ++k) c[k - 1] = c[k] * static_cast<double>(k);
    c.pop_back();
  }
  return Poly(std::move(c));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * (1.0 / leading());
}

Poly Poly::shifted(cplx shift) const {
  // Repeated synthetic division (Taylor shift).
  std::vector<cplx> c = c_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k > i; --k) c[k - 1] += shift * c[k];
  return Poly(std::move(c));
}

Poly Poly::conj() const {
  std::vector<cplx> c = c_;
  for (auto& v : c) v = std::conj(v);
  return Poly(std::move(c));
}

Poly Poly::pow(int e) const {
  Poly result = constant(1.0);
  for (int i = 0; i < e; ++i) result *= *this;
  return result;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  trim();
  return *this;
}

std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw Error(ErrorKind::InexactDivision, "polynomial division by zero");
  if (num.degree() < den.degree()) return {Poly(), num};
  std::vector<cplx> rem = num.coeffs();
  const int dd = den.degree();
  const int qd = num.degree() - dd;
  std::vector<cplx> q(static_cast<std::size_t>(qd) + 1, 0.0);
  const cplx lead = den.leading();
  for (int k = qd; k >= 0; --k) {
    const cplx f = rem[static_cast<std::size_t>(k + dd)] / lead;
    q[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= f * den[j];
  }
  rem.resize(static_cast<std::size_t>(dd));
  // Trimming is relative to each polynomial's own scale, so a numerically
  // tiny remainder stays visible to callers checking exactness.
  return {Poly(std::move(q)), Poly(std::move(rem))};
}

double coeff_distance(const Poly& a, const Poly& b) {
  const int d = std::max(a.degree(), b.degree());
  double m = 0.0;
  for (int k = 0; k <= d; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

namespace {

bool root_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<cplx> find_roots(const Poly& p) {
  std::vector<cplx> roots;
  if (p.degree() <= 0) return roots;
  // Exact zero roots first; they keep the companion matrix well scaled.
  int zeros = 0;
  while (p[zeros] == cplx(0.0)) ++zeros;
  std::vector<cplx> c(p.coeffs().begin() + zeros, p.coeffs().end());
  const Poly q(c);
  const int n = q.degree();
  roots.assign(static_cast<std::size_t>(zeros), 0.0);
  if (n >= 1) {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    const cplx lead = q.leading();
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -q[i] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
    const Poly dq = q.derivative();
    for (int i = 0; i < n; ++i) {
      cplx z = es.eigenvalues()(i);
      double best = std::abs(q(z));
      for (int it = 0; it < 8 && best > 0.0; ++it) {
        const cplx d = dq(z);
        if (d == cplx(0.0)) break;
        const cplx cand = z - q(z) / d;
        const double v = std::abs(q(cand));
        if (!(v < best)) break;
        z = cand;
        best = v;
      }
      roots.push_back(z);
    }
  }
  std::sort(roots.begin(), roots.end(), root_less);
  return roots;
}

}  // namespace gw
