#include "gw/diffop.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "gw/error.hpp"
#include "gw/linalg.hpp"

namespace gw {

namespace {

// Falling factorial rho (rho-1) ... (rho-m+1) as a polynomial in rho.
Poly falling_factorial(int m) {
  Poly p = Poly::constant(1.0);
  for (int i = 0; i < m; ++i) p *= Poly::linear(static_cast<double>(i));
  return p;
}

double falling_factorial(int q, int m) {
  double v = 1.0;
  for (int i = 0; i < m; ++i) v *= static_cast<double>(q - i);
  return v;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * static_cast<double>(n - k + i) / static_cast<double>(i);
  return v;
}

// Determinant of rows [row, m) restricted to the columns in `mask`, by
// Laplace expansion along the first remaining row.
class PolyDet {
 public:
  explicit PolyDet(const std::vector<std::vector<Poly>>& a) : a_(a) {}

  Poly det(std::size_t row, unsigned mask) {
    if (row == a_.size()) return Poly::constant(1.0);
    const auto key = (static_cast<unsigned long>(row) << 32) | mask;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Poly acc;
    int pos = 0;
    for (unsigned c = 0; c < 32; ++c) {
      if (!(mask & (1u << c))) continue;
      const Poly& entry = a_[row][c];
      if (!entry.is_zero()) {
        Poly term = entry * det(row + 1, mask & ~(1u << c));
        if (pos % 2 == 0)
          acc += term;
        else
          acc -= term;
      }
      ++pos;
    }
    memo_.emplace(key, acc);
    return acc;
  }

 private:
  const std::vector<std::vector<Poly>>& a_;
  std::unordered_map<unsigned long, Poly> memo_;
};

std::vector<std::vector<Poly>> derivative_matrix(std::span<const Poly> fs, int columns) {
  std::vector<std::vector<Poly>> a(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    Poly d = fs[i];
    for (int j = 0; j < columns; ++j) {
      a[i].push_back(d);
      d = d.derivative();
    }
  }
  return a;
}

// Hadamard-style scale of the Wronskian matrix, used to decide whether a
// computed Wronskian is numerically zero.
double wronskian_scale(std::span<const Poly> fs) {
  double scale = 1.0;
  const int m = static_cast<int>(fs.size());
  for (const Poly& f : fs) {
    double row = 0.0;
    Poly d = f;
    for (int j = 0; j < m; ++j) {
      row += d.max_abs_coeff() * d.max_abs_coeff();
      d = d.derivative();
    }
    scale *= std::sqrt(row) * static_cast<double>(1 + std::max(0, f.degree()));
  }
  return scale;
}

bool wronskian_is_zero(const Poly& w, std::span<const Poly> fs) {
  return w.is_zero() || w.max_abs_coeff() <= 1e-11 * wronskian_scale(fs);
}

// Low-order coefficients of a shifted polynomial below `tol` relative to the
// largest one are treated as exact zeros.
int valuation(const Poly& p, double tol) {
  const double scale = p.max_abs_coeff();
  for (int j = 0; j <= p.degree(); ++j)
    if (std::abs(p[j]) > tol * scale) return j;
  return p.degree() + 1;
}

int effective_degree(const Poly& p, double tol) {
  const double scale = p.max_abs_coeff();
  for (int j = p.degree(); j >= 0; --j)
    if (std::abs(p[j]) > tol * scale) return j;
  return -1;
}

constexpr double kLaurentTol = 1e-8;

}  // namespace

ScalarDiffOp ScalarDiffOp::derivative_power(int order) {
  ScalarDiffOp op;
  op.order = order;
  op.coeffs.assign(static_cast<std::size_t>(order), RatFn());
  return op;
}

std::vector<cplx> ScalarDiffOp::coeff_values(cplx x) const {
  std::vector<cplx> v;
  v.reserve(coeffs.size());
  for (const auto& c : coeffs) v.push_back(c(x));
  return v;
}

RatFn ScalarDiffOp::apply(const Poly& f) const {
  RatFn acc(f.derivative(order));
  for (int k = 1; k <= order; ++k) {
    const Poly fk = f.derivative(order - k);
    if (fk.is_zero() || coeffs[k - 1].is_zero()) continue;
    acc += coeffs[k - 1] * RatFn(fk);
  }
  return acc;
}

ScalarDiffOp CommonDenOp::to_op() const {
  ScalarDiffOp op;
  op.order = order;
  Poly den = Poly::constant(1.0);
  for (int k = 1; k <= order; ++k) {
    den *= common_den;
    op.coeffs.emplace_back(numerators[k - 1], den);
  }
  return op;
}

Poly wronskian(std::span<const Poly> fs) {
  if (fs.empty()) throw Error(ErrorKind::InvalidSpec, "wronskian of an empty sequence");
  if (fs.size() > 16) throw Error(ErrorKind::DimensionCap, "wronskian of more than 16 functions");
  const auto a = derivative_matrix(fs, static_cast<int>(fs.size()));
  PolyDet det(a);
  return det.det(0, (1u << fs.size()) - 1);
}

Poly monic_wronskian(std::span<const Poly> fs) {
  Poly w = wronskian(fs);
  if (wronskian_is_zero(w, fs)) throw Error(ErrorKind::ZeroWronskian, "functions are linearly dependent");
  return w.monic();
}

ScalarDiffOp fundamental_operator(std::span<const Poly> basis) {
  const int m = static_cast<int>(basis.size());
  if (m == 0) throw Error(ErrorKind::InvalidSpec, "fundamental operator of an empty basis");
  // D f = Wr(f_1, ..., f_m, f) / Wr(f_1, ..., f_m); expanding along the row
  // of f gives the coefficient of f^{(j)} as a signed maximal minor.
  const auto a = derivative_matrix(basis, m + 1);
  PolyDet det(a);
  const unsigned all = (1u << (m + 1)) - 1;
  const Poly w = det.det(0, all & ~(1u << m));
  if (wronskian_is_zero(w, basis)) throw Error(ErrorKind::ZeroWronskian, "basis is linearly dependent");
  ScalarDiffOp op;
  op.order = m;
  for (int k = 1; k <= m; ++k) {
    const int j = m - k;
    Poly minor = det.det(0, all & ~(1u << j));
    if ((m + j) % 2 != 0) minor *= -1.0;
    op.coeffs.emplace_back(std::move(minor), w);
  }
  return op;
}

CommonDenOp compose_factors(std::span<const Poly> numerators, const Poly& common_den) {
  // Coefficient of d^j after composing p factors has denominator Q^{p-j};
  // only numerators are stored. c[j] = numerator of the d^j coefficient.
  const Poly dq = common_den.derivative();
  std::vector<Poly> c{Poly::constant(1.0)};
  int p = 0;
  for (auto it = numerators.rbegin(); it != numerators.rend(); ++it, ++p) {
    std::vector<Poly> next(c.size() + 1);
    for (std::size_t j = 0; j < c.size(); ++j) {
      const int e = p - static_cast<int>(j);
      // (P / Q^e)' = (P' Q - e P Q') / Q^{e+1}
      Poly deriv = c[j].derivative() * common_den;
      if (e != 0) deriv -= static_cast<double>(e) * (c[j] * dq);
      next[j] += deriv;
      next[j] -= *it * c[j];
      next[j + 1] += c[j];
    }
    c = std::move(next);
  }
  CommonDenOp out;
  out.order = static_cast<int>(numerators.size());
  out.common_den = common_den;
  // c[order] is the constant 1 of the monic leading term.
  for (int k = 1; k <= out.order; ++k) out.numerators.push_back(c[out.order - k]);
  return out;
}

ScalarDiffOp compose_factors(std::span<const RatFn> us) {
  if (us.empty()) throw Error(ErrorKind::InvalidSpec, "compose_factors needs at least one factor");
  // Common denominator: product of the distinct denominators.
  std::vector<Poly> dens;
  std::vector<std::size_t> which(us.size());
  for (std::size_t k = 0; k < us.size(); ++k) {
    const Poly& d = us[k].den();
    std::size_t idx = dens.size();
    for (std::size_t i = 0; i < dens.size(); ++i)
      if (dens[i].degree() == d.degree() && coeff_distance(dens[i], d) <= 1e-14 * std::max(1.0, d.max_abs_coeff())) idx = i;
    if (idx == dens.size()) dens.push_back(d);
    which[k] = idx;
  }
  Poly q = Poly::constant(1.0);
  for (const auto& d : dens) q *= d;
  std::vector<Poly> nums;
  for (std::size_t k = 0; k < us.size(); ++k) {
    Poly n = us[k].num();
    for (std::size_t i = 0; i < dens.size(); ++i)
      if (i != which[k]) n *= dens[i];
    nums.push_back(std::move(n));
  }
  return compose_factors(nums, q).to_op();
}

namespace {

// Writes every denominator as a power of one base polynomial when possible;
// returns false otherwise.
bool power_form(const ScalarDiffOp& op, Poly& base, std::vector<int>& powers) {
  base = Poly::constant(1.0);
  for (const auto& c : op.coeffs)
    if (!c.is_zero() && c.den().degree() > 0 && (base.degree() == 0 || c.den().degree() < base.degree())) base = c.den();
  powers.clear();
  for (const auto& c : op.coeffs) {
    if (c.is_zero() || c.den().degree() == 0) {
      powers.push_back(0);
      continue;
    }
    const int e = c.den().degree() / base.degree();
    if (e * base.degree() != c.den().degree()) return false;
    const Poly p = base.pow(e);
    if (coeff_distance(p, c.den()) > 1e-12 * p.max_abs_coeff()) return false;
    powers.push_back(e);
  }
  return true;
}

}  // namespace

ScalarDiffOp formal_conjugate(const ScalarDiffOp& op) {
  const int n = op.order;
  ScalarDiffOp out;
  out.order = n;
  out.coeffs.assign(static_cast<std::size_t>(n), RatFn());
  Poly base;
  std::vector<int> powers;
  if (power_form(op, base, powers)) {
    // Every term of coefficient j is a numerator over base^e; collect the
    // numerators per power and combine once.
    const Poly db = base.derivative();
    std::vector<std::vector<std::pair<Poly, int>>> terms(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
      const RatFn& a = op.coeffs[k - 1];
      if (a.is_zero()) continue;
      Poly p = a.num();
      int e = powers[k - 1];
      for (int q = 0; k + q <= n; ++q) {
        const double coef = ((k % 2 == 0) ? 1.0 : -1.0) * binomial(n - k, q);
        terms[k + q - 1].emplace_back(p * coef, e);
        if (e == 0) {
          p = p.derivative();
        } else {
          Poly np = p.derivative() * base;
          np -= static_cast<double>(e) * (p * db);
          p = std::move(np);
          ++e;
        }
      }
    }
    for (int j = 1; j <= n; ++j) {
      int emax = 0;
      for (const auto& t : terms[j - 1]) emax = std::max(emax, t.second);
      Poly num;
      for (const auto& [p, e] : terms[j - 1]) num += p * base.pow(emax - e);
      if (!num.is_zero()) out.coeffs[j - 1] = RatFn(std::move(num), base.pow(emax));
    }
    return out;
  }
  // Derivatives of a_k kept over powers of its own denominator.
  for (int k = 1; k <= n; ++k) {
    const RatFn& a = op.coeffs[k - 1];
    if (a.is_zero()) continue;
    const Poly& d = a.den();
    const Poly dd = d.derivative();
    Poly p = a.num();
    Poly den = d;
    for (int q = 0; k + q <= n; ++q) {
      const int j = k + q;
      const double coef = ((k % 2 == 0) ? 1.0 : -1.0) * binomial(n - k, q);
      out.coeffs[j - 1] += RatFn(p * coef, den);
      // (P / D^{q+1})' = (P' D - (q+1) P D') / D^{q+2}
      Poly np = p.derivative() * d;
      if (dd.degree() >= 0) np -= static_cast<double>(q + 1) * (p * dd);
      p = std::move(np);
      den *= d;
    }
  }
  return out;
}

std::vector<Poly> echelon_basis(std::span<const Poly> fs) {
  int deg = -1;
  for (const auto& f : fs) deg = std::max(deg, f.degree());
  const int rows = static_cast<int>(fs.size());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, deg + 1);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k <= fs[i].degree(); ++k) a(i, k) = fs[i][k];
  const double scale = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
  std::vector<std::pair<int, int>> pivots;  // (degree, row)
  int next = 0;
  for (int col = deg; col >= 0 && next < rows; --col) {
    int best = -1;
    double bv = 1e-9 * scale;
    for (int i = next; i < rows; ++i)
      if (std::abs(a(i, col)) > bv) {
        bv = std::abs(a(i, col));
        best = i;
      }
    if (best < 0) {
      for (int i = next; i < rows; ++i) a(i, col) = 0.0;
      continue;
    }
    a.row(next).swap(a.row(best));
    a.row(next) /= a(next, col);
    for (int i = 0; i < rows; ++i)
      if (i != next && a(i, col) != cplx(0.0)) a.row(i) -= a(i, col) * a.row(next);
    for (int i = next + 1; i < rows; ++i) a(i, col) = 0.0;
    pivots.emplace_back(col, next);
    ++next;
  }
  std::sort(pivots.begin(), pivots.end());
  std::vector<Poly> out;
  for (auto [col, row] : pivots) {
    std::vector<cplx> c(static_cast<std::size_t>(col) + 1);
    for (int k = 0; k <= col; ++k) c[static_cast<std::size_t>(k)] = a(row, k);
    c.back() = 1.0;
    out.emplace_back(std::move(c));
  }
  return out;
}

std::vector<Poly> polynomial_kernel(const ScalarDiffOp& op, int degree_bound) {
  if (degree_bound < 0) return {};
  const int n = op.order;
  // Common multiple of the denominators.
  Poly lcm = Poly::constant(1.0);
  for (const auto& c : op.coeffs) {
    if (c.is_zero()) continue;
    const Poly& d = c.den();
    if (divides(d, lcm, 1e-10)) continue;
    if (divides(lcm, d, 1e-10))
      lcm = d;
    else
      lcm *= d;
  }
  std::vector<Poly> mult(static_cast<std::size_t>(n) + 1);
  mult[0] = lcm;
  for (int k = 1; k <= n; ++k) {
    const RatFn& c = op.coeffs[k - 1];
    if (c.is_zero()) continue;
    Poly quo;
    if (!divides(c.den(), lcm, 1e-8, &quo)) throw Error(ErrorKind::InexactDivision, "denominator does not divide common multiple");
    mult[k] = c.num() * quo;
  }
  const int cols = degree_bound + 1;
  // Columns are scaled by the size of the terms summed into them rather
  // than by the size of the result, so an image that cancels to rounding
  // noise stays small.
  std::vector<Poly> images;
  Eigen::VectorXd colscale = Eigen::VectorXd::Ones(cols);
  int rows = 1;
  for (int q = 0; q <= degree_bound; ++q) {
    Poly g;
    double size = 0.0;
    for (int k = 0; k <= n; ++k) {
      const int order = n - k;
      if (mult[k].is_zero() || q < order) continue;
      const double ff = falling_factorial(q, order);
      g += mult[k] * Poly::monomial(q - order, ff);
      size = std::max(size, ff * mult[k].max_abs_coeff());
    }
    if (size > 0.0) colscale(q) = size;
    rows = std::max(rows, g.degree() + 1);
    images.push_back(std::move(g));
  }
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, cols);
  for (int q = 0; q < cols; ++q)
    for (int i = 0; i <= images[q].degree(); ++i) a(i, q) = images[q][i] / colscale(q);

  // Degree by degree: a solution with leading term x^q, reduced against the
  // leading degrees already found, is the least-squares completion of column
  // q by the remaining lower columns; it exists iff the residual vanishes.
  constexpr double kResidualTol = 1e-8;
  std::vector<Poly> basis;
  std::vector<int> free_cols;
  for (int q = 0; q < cols; ++q) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(free_cols.size()));
    Eigen::VectorXcd res = a.col(q);
    if (!free_cols.empty()) {
      Eigen::MatrixXcd sub(rows, static_cast<Eigen::Index>(free_cols.size()));
      for (std::size_t j = 0; j < free_cols.size(); ++j) sub.col(static_cast<Eigen::Index>(j)) = a.col(free_cols[j]);
      c = sub.colPivHouseholderQr().solve(-a.col(q));
      res += sub * c;
    }
    if (res.norm() <= kResidualTol) {
      std::vector<cplx> coeffs(static_cast<std::size_t>(q) + 1, 0.0);
      coeffs[q] = 1.0;
      for (std::size_t j = 0; j < free_cols.size(); ++j)
        coeffs[free_cols[j]] = c(static_cast<Eigen::Index>(j)) * colscale(q) / colscale(free_cols[j]);
      basis.emplace_back(std::move(coeffs));
    } else {
      free_cols.push_back(q);
    }
  }
  return basis;
}

ExponentReport exponents_at(const ScalarDiffOp& op, std::optional<cplx> point) {
  const int n = op.order;
  std::vector<cplx> indicial_coeff(static_cast<std::size_t>(n) + 1, 0.0);
  indicial_coeff[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    const RatFn& a = op.coeffs[k - 1];
    if (a.is_zero()) continue;
    if (!point) {
      const int dn = effective_degree(a.num(), 1e-9);
      const int dd = effective_degree(a.den(), 1e-9);
      if (dn < 0) continue;
      if (dn - dd > -k) throw Error(ErrorKind::IrregularSingularity, "coefficient decays too slowly at infinity");
      if (dn - dd == -k) indicial_coeff[k] = a.num()[dn] / a.den()[dd];
      continue;
    }
    const Poly num = a.num().shifted(*point);
    const Poly den = a.den().shifted(*point);
    const int vd = valuation(den, kLaurentTol);
    const int vn = valuation(num, kLaurentTol);
    if (vn > num.degree()) continue;
    if (vd - vn > k) throw Error(ErrorKind::IrregularSingularity, "pole order exceeds coefficient index");
    const int target = vd - k;  // coefficient of h^{-k} in num/den
    if (target < vn) continue;
    // Power series of num(h) / (den(h) / h^vd) up to h^target.
    std::vector<cplx> s(static_cast<std::size_t>(target) + 1, 0.0);
    const cplx d0 = den[vd];
    for (int j = 0; j <= target; ++j) {
      cplx v = j >= vn ? num[j] : cplx(0.0);
      for (int i = 1; i <= j; ++i) v -= den[vd + i] * s[static_cast<std::size_t>(j - i)];
      s[static_cast<std::size_t>(j)] = v / d0;
    }
    indicial_coeff[k] = s.back();
  }
  Poly indicial;
  for (int k = 0; k <= n; ++k)
    if (indicial_coeff[k] != cplx(0.0)) indicial += falling_factorial(n - k) * indicial_coeff[k];
  ExponentReport report;
  report.point = point;
  report.exponents = find_roots(indicial);
  if (!point)
    for (auto& e : report.exponents) e = -e;
  std::sort(report.exponents.begin(), report.exponents.end(),
            [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  return report;
}

std::vector<cplx> ramification_points(std::span<const Poly> fs) {
  return find_roots(monic_wronskian(fs));
}

bool is_real_space(const ScalarDiffOp& op, double tol) {
  auto real_poly = [tol](const Poly& p) {
    for (const auto& c : p.coeffs())
      if (std::abs(c.imag()) > tol * (1.0 + std::abs(c))) return false;
    return true;
  };
  for (const auto& c : op.coeffs)
    if (!real_poly(c.num()) || !real_poly(c.den())) return false;
  return true;
}

}  // namespace gw
