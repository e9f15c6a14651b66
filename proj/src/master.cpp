#include "gw/master.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "gw/error.hpp"

namespace gw {

int ExponentSpec::n() const {
  int n = 0;
  for (std::size_t i = 0; i < d.size(); ++i) n += d[i] - static_cast<int>(i);
  return n;
}

std::vector<int> ExponentSpec::l() const {
  std::vector<int> l;
  int acc = 0;
  for (int i = 0; i < r(); ++i) {
    acc += d[static_cast<std::size_t>(i)] - i;
    l.push_back(acc);
  }
  return l;
}

std::vector<int> ExponentSpec::lambda() const {
  const std::vector<int> ls = l();
  const int rr = r();
  std::vector<int> out(static_cast<std::size_t>(rr));
  for (int i = 0; i < rr; ++i) {
    const int prev = i > 0 ? ls[i - 1] : 0;
    const int next = i + 1 < rr ? ls[i + 1] : 0;
    out[i] = (i == rr - 1 ? n() : 0) - (2 * ls[i] - prev - next);
  }
  return out;
}

void ExponentSpec::validate() const {
  if (d.size() < 2) throw Error(ErrorKind::BadExponents, "need at least two exponents (r >= 1)");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) throw Error(ErrorKind::BadExponents, "exponents must be nonnegative");
    if (i > 0 && d[i] <= d[i - 1]) throw Error(ErrorKind::BadExponents, "exponents must be strictly increasing");
  }
  for (int li : l())
    if (li < 0) throw Error(ErrorKind::BadExponents, "negative l_i");
  for (int a : lambda())
    if (a < 0) throw Error(ErrorKind::BadExponents, "Lambda(d) is not dominant");
}

int MasterSpec::total_l() const {
  int s = 0;
  for (int v : l) s += v;
  return s;
}

void MasterSpec::validate() const {
  if (r < 1) throw Error(ErrorKind::InvalidSpec, "rank must be positive");
  if (static_cast<int>(gram.size()) != r) throw Error(ErrorKind::InvalidSpec, "gram must be r x r");
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(gram[i].size()) != r) throw Error(ErrorKind::InvalidSpec, "gram must be r x r");
    if (gram[i][i] <= 0) throw Error(ErrorKind::InvalidSpec, "gram diagonal must be positive");
    for (int j = 0; j < r; ++j) {
      if (gram[i][j] != gram[j][i]) throw Error(ErrorKind::InvalidSpec, "gram must be symmetric");
      if (i != j && gram[i][j] > 0) throw Error(ErrorKind::InvalidSpec, "gram off-diagonal must be nonpositive");
    }
  }
  if (static_cast<int>(l.size()) != r) throw Error(ErrorKind::InvalidSpec, "l must have r entries");
  for (int v : l)
    if (v < 0) throw Error(ErrorKind::InvalidSpec, "l entries must be nonnegative");
  if (weights.size() != z.size()) throw Error(ErrorKind::InvalidSpec, "weights must have one row per z");
  for (const auto& row : weights) {
    if (static_cast<int>(row.size()) != r) throw Error(ErrorKind::InvalidSpec, "weight rows must have r entries");
    for (int v : row)
      if (v < 0) throw Error(ErrorKind::InvalidSpec, "weights must be nonnegative");
  }
  double zmax = 0.0;
  for (auto v : z) zmax = std::max(zmax, std::abs(v));
  for (std::size_t a = 0; a < z.size(); ++a)
    for (std::size_t b = a + 1; b < z.size(); ++b)
      if (std::abs(z[a] - z[b]) <= 1e-10 * std::max(zmax, 1e-300))
        throw Error(ErrorKind::InvalidSpec, "z entries must be pairwise distinct");
}

bool MasterSpec::is_type_a() const {
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const int expect = i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0);
      if (gram[i][j] != expect) return false;
    }
  return true;
}

bool MasterSpec::all_last_fundamental() const {
  for (const auto& row : weights)
    for (int i = 0; i < r; ++i)
      if (row[i] != (i == r - 1 ? 1 : 0)) return false;
  return true;
}

std::vector<int> MasterSpec::target_weight() const {
  std::vector<int> mu(static_cast<std::size_t>(r), 0);
  for (const auto& row : weights)
    for (int i = 0; i < r; ++i) mu[i] += row[i];
  for (int i = 0; i < r; ++i) {
    const int prev = i > 0 ? l[i - 1] : 0;
    const int next = i + 1 < r ? l[i + 1] : 0;
    mu[i] -= 2 * l[i] - prev - next;
  }
  return mu;
}

std::vector<cplx> TuplePoint::flat() const {
  std::vector<cplx> out;
  for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
  return out;
}

TuplePoint TuplePoint::from_flat(const std::vector<cplx>& flat, const std::vector<int>& l) {
  TuplePoint t;
  std::size_t pos = 0;
  for (int li : l) {
    t.groups.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                          flat.begin() + static_cast<std::ptrdiff_t>(pos + static_cast<std::size_t>(li)));
    pos += static_cast<std::size_t>(li);
  }
  return t;
}

TuplePoint TuplePoint::conj() const {
  TuplePoint c = *this;
  for (auto& g : c.groups)
    for (auto& v : g) v = std::conj(v);
  return c;
}

MasterSpec spec_from_exponents(const ExponentSpec& d, std::vector<cplx> z) {
  d.validate();
  const int r = d.r();
  if (static_cast<int>(z.size()) != d.n())
    throw Error(ErrorKind::InvalidSpec, "number of z points must equal n = " + std::to_string(d.n()));
  MasterSpec spec;
  spec.r = r;
  spec.gram.assign(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
  for (int i = 0; i < r; ++i) {
    spec.gram[i][i] = 2;
    if (i + 1 < r) spec.gram[i][i + 1] = spec.gram[i + 1][i] = -1;
  }
  std::vector<int> row(static_cast<std::size_t>(r), 0);
  row.back() = 1;
  spec.weights.assign(z.size(), row);
  spec.z = std::move(z);
  spec.l = d.l();
  spec.d = d.d;
  spec.validate();
  return spec;
}

void check_shape(const MasterSpec& spec, const TuplePoint& t) {
  if (static_cast<int>(t.groups.size()) != spec.r) throw Error(ErrorKind::InvalidSpec, "tuple must have r groups");
  for (int i = 0; i < spec.r; ++i)
    if (static_cast<int>(t.groups[i].size()) != spec.l[i])
      throw Error(ErrorKind::InvalidSpec, "group " + std::to_string(i + 1) + " must have l_i coordinates");
}

double collision_tol(const MasterSpec& spec, const TuplePoint& t) {
  double m = 0.0;
  for (auto v : spec.z) m = std::max(m, std::abs(v));
  for (const auto& g : t.groups)
    for (auto v : g) m = std::max(m, std::abs(v));
  return 1e-8 * (1.0 + m);
}

double min_pole_distance(const MasterSpec& spec, const TuplePoint& t) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < spec.r; ++i) {
    const auto& gi = t.groups[i];
    for (std::size_t j = 0; j < gi.size(); ++j) {
      for (auto zs : spec.z) m = std::min(m, std::abs(gi[j] - zs));
      for (std::size_t s = j + 1; s < gi.size(); ++s) m = std::min(m, std::abs(gi[j] - gi[s]));
      for (int k = i + 1; k < spec.r; ++k) {
        if (spec.gram[i][k] == 0) continue;
        for (auto v : t.groups[k]) m = std::min(m, std::abs(gi[j] - v));
      }
    }
  }
  return m;
}

void check_collision_free(const MasterSpec& spec, const TuplePoint& t) {
  check_shape(spec, t);
  if (min_pole_distance(spec, t) < collision_tol(spec, t))
    throw Error(ErrorKind::Collision, "coordinate within collision tolerance of a pole");
}

cplx log_master(const MasterSpec& spec, const TuplePoint& t) {
  check_collision_free(spec, t);
  cplx acc = 0.0;
  for (int i = 0; i < spec.r; ++i) {
    const auto& gi = t.groups[i];
    for (std::size_t j = 0; j < gi.size(); ++j) {
      for (int s = 0; s < spec.n(); ++s) {
        const int w = spec.weights[s][i];
        if (w != 0) acc -= static_cast<double>(w) * std::log(gi[j] - spec.z[s]);
      }
      for (std::size_t s = j + 1; s < gi.size(); ++s)
        acc += static_cast<double>(spec.gram[i][i]) * std::log(gi[j] - gi[s]);
      for (int k = i + 1; k < spec.r; ++k) {
        if (spec.gram[i][k] == 0) continue;
        for (auto v : t.groups[k]) acc += static_cast<double>(spec.gram[i][k]) * std::log(gi[j] - v);
      }
    }
  }
  return acc;
}

Eigen::VectorXcd bae_residual(const MasterSpec& spec, const TuplePoint& t) {
  check_collision_free(spec, t);
  Eigen::VectorXcd f(spec.total_l());
  int row = 0;
  for (int i = 0; i < spec.r; ++i) {
    const auto& gi = t.groups[i];
    for (std::size_t j = 0; j < gi.size(); ++j, ++row) {
      const cplx tj = gi[j];
      cplx acc = 0.0;
      for (int s = 0; s < spec.n(); ++s) {
        const int w = spec.weights[s][i];
        if (w != 0) acc -= static_cast<double>(w) / (tj - spec.z[s]);
      }
      for (int k = 0; k < spec.r; ++k) {
        const int g = spec.gram[i][k];
        if (g == 0) continue;
        const auto& gk = t.groups[k];
        for (std::size_t s = 0; s < gk.size(); ++s) {
          if (k == i && s == j) continue;
          acc += static_cast<double>(g) / (tj - gk[s]);
        }
      }
      f(row) = acc;
    }
  }
  return f;
}

Eigen::MatrixXcd bae_jacobian(const MasterSpec& spec, const TuplePoint& t) {
  check_collision_free(spec, t);
  const int total = spec.total_l();
  Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(total, total);
  std::vector<int> offset(static_cast<std::size_t>(spec.r) + 1, 0);
  for (int i = 0; i < spec.r; ++i) offset[i + 1] = offset[i] + spec.l[i];
  for (int i = 0; i < spec.r; ++i) {
    const auto& gi = t.groups[i];
    for (std::size_t j = 0; j < gi.size(); ++j) {
      const int row = offset[i] + static_cast<int>(j);
      const cplx tj = gi[j];
      cplx diag = 0.0;
      for (int s = 0; s < spec.n(); ++s) {
        const int w = spec.weights[s][i];
        if (w != 0) {
          const cplx d = tj - spec.z[s];
          diag += static_cast<double>(w) / (d * d);
        }
      }
      for (int k = 0; k < spec.r; ++k) {
        const int g = spec.gram[i][k];
        if (g == 0) continue;
        const auto& gk = t.groups[k];
        for (std::size_t s = 0; s < gk.size(); ++s) {
          if (k == i && s == j) continue;
          const cplx d = tj - gk[s];
          const cplx term = static_cast<double>(g) / (d * d);
          diag -= term;
          jac(row, offset[k] + static_cast<int>(s)) += term;
        }
      }
      jac(row, row) += diag;
    }
  }
  return jac;
}

TupleY tuple_y(const TuplePoint& t) {
  TupleY ys;
  for (const auto& g : t.groups) ys.push_back(Poly::from_roots(g));
  return ys;
}

Poly weight_polynomial(const MasterSpec& spec, int i) {
  Poly p = Poly::constant(1.0);
  for (int s = 0; s < spec.n(); ++s)
    for (int e = 0; e < spec.weights[s][i]; ++e) p *= Poly::linear(spec.z[s]);
  return p;
}

namespace {

constexpr double kFactorCancelTol = 1e-8;

Poly product_except(const std::vector<Poly>& factors, std::size_t skip) {
  Poly p = Poly::constant(1.0);
  for (std::size_t k = 0; k < factors.size(); ++k)
    if (k != skip) p *= factors[k];
  return p;
}

}  // namespace

namespace {

// Expands the composition over the common denominator prod (x - z_s) prod y_i
// and divides the y_i out of each numerator. Exact for any t, but the
// monomial expansion loses digits as the degree grows.
ScalarDiffOp expanded_op(const MasterSpec& spec, const TuplePoint& t) {
  const int r = spec.r;
  const int n = spec.n();
  // Q = prod_s (x - z_s) * prod_i y_i, each factor kept separately so every
  // logarithmic derivative has an exact numerator over Q.
  std::vector<Poly> factors;
  for (int s = 0; s < n; ++s) factors.push_back(Poly::linear(spec.z[s]));
  const TupleY ys = tuple_y(t);
  std::vector<int> y_index(static_cast<std::size_t>(r), -1);
  for (int i = 0; i < r; ++i)
    if (spec.l[i] > 0) {
      y_index[i] = static_cast<int>(factors.size());
      factors.push_back(ys[i]);
    }
  Poly q = Poly::constant(1.0);
  for (const auto& f : factors) q *= f;

  auto log_deriv_num = [&](std::size_t idx) { return factors[idx].derivative() * product_except(factors, idx); };
  // Factor c (0 = rightmost) is d/dx - ln'(y_{c+1} T_1...T_c / y_c).
  std::vector<Poly> nums;
  for (int c = r; c >= 0; --c) {
    Poly u;
    for (int s = 0; s < n; ++s) {
      int e = 0;
      for (int i = 0; i < c; ++i) e += spec.weights[s][i];
      if (e != 0) u += static_cast<double>(e) * log_deriv_num(static_cast<std::size_t>(s));
    }
    if (c < r && y_index[c] >= 0) u += log_deriv_num(static_cast<std::size_t>(y_index[c]));
    if (c > 0 && y_index[c - 1] >= 0) u -= log_deriv_num(static_cast<std::size_t>(y_index[c - 1]));
    nums.push_back(std::move(u));
  }
  const CommonDenOp composed = compose_factors(nums, q);

  Poly tz = Poly::constant(1.0);
  for (int s = 0; s < n; ++s) tz *= factors[s];
  ScalarDiffOp op;
  op.order = r + 1;
  for (int k = 1; k <= r + 1; ++k) {
    Poly num = composed.numerators[k - 1];
    Poly den = tz.pow(k);
    // The poles at the t-coordinates cancel at a critical point.
    for (int i = 0; i < r; ++i) {
      if (spec.l[i] == 0) continue;
      int remaining = k;
      Poly quo;
      while (remaining > 0 && !num.is_zero() && divides(ys[i], num, kFactorCancelTol, &quo)) {
        num = std::move(quo);
        --remaining;
      }
      if (num.is_zero()) remaining = 0;
      den *= ys[i].pow(remaining);
    }
    op.coeffs.emplace_back(std::move(num), std::move(den));
  }
  return op;
}

// sum_j e_j / (x - p_j)
using PoleSum = std::vector<std::pair<cplx, double>>;
using Series = std::vector<cplx>;

Series pole_series(const PoleSum& u, cplx x0, int len) {
  Series out(static_cast<std::size_t>(len), 0.0);
  for (const auto& [p, e] : u) {
    const cplx w = 1.0 / (x0 - p);
    cplx pw = w;
    for (int m = 0; m < len; ++m) {
      out[m] += (m % 2 ? -e : e) * pw;
      pw *= w;
    }
  }
  return out;
}

// a_1..a_N at x0 of (d/dx - u_0) o ... o (d/dx - u_{N-1}), composed on
// truncated Taylor series around x0.
std::vector<cplx> composed_values(const std::vector<PoleSum>& us, cplx x0) {
  const int order = static_cast<int>(us.size());
  const int len = order + 1;
  std::vector<Series> b(static_cast<std::size_t>(order) + 1, Series(static_cast<std::size_t>(len), 0.0));
  b[0][0] = 1.0;
  for (int c = order - 1; c >= 0; --c) {
    const Series u = pole_series(us[c], x0, len);
    std::vector<Series> nb(b.size(), Series(static_cast<std::size_t>(len), 0.0));
    for (int j = 0; j <= order; ++j) {
      const Series& bj = b[j];
      for (int m = 0; m + 1 < len; ++m) nb[j][m] += static_cast<double>(m + 1) * bj[m + 1];
      if (j < order)
        for (int m = 0; m < len; ++m) nb[j + 1][m] += bj[m];
      for (int m = 0; m < len; ++m)
        for (int q = 0; q <= m; ++q) nb[j][m] -= u[q] * bj[m - q];
    }
    b = std::move(nb);
  }
  std::vector<cplx> a(static_cast<std::size_t>(order));
  for (int k = 1; k <= order; ++k) a[k - 1] = b[order - k][0];
  return a;
}

// Fits a_k = N_k / Tz^k for the composition of the factors (d - u_c), left to
// right, where the poles at the t-coordinates are expected to cancel.
ScalarDiffOp fit_on_z(const MasterSpec& spec, const std::vector<PoleSum>& us, std::span<const cplx> poles,
                      const std::function<ScalarDiffOp()>& fallback) {
  const int n = spec.n();
  const int order = static_cast<int>(us.size());
  // At a critical point a_k = N_k / Tz^k with deg N_k <= k (n - 1), since the
  // operator is Fuchsian and its only finite poles are the z_s. The monomial
  // coefficients of N_k are read off discrete Fourier transforms of sampled
  // values on a ladder of circles |x| = R; coefficient j is taken from the
  // circle with the smallest rounding estimate max|N_k| / R^j. A final check
  // at unrelated points catches the case where the poles at t do not cancel,
  // and then the exact expansion is used instead.
  double pole_max = 0.0;
  for (cplx p : poles) pole_max = std::max(pole_max, std::abs(p));
  const int max_deg = order * std::max(n - 1, 0);
  const int samples = 2 * (max_deg + 1) + 8;

  Poly tz = Poly::constant(1.0);
  for (int s = 0; s < n; ++s) tz *= Poly::linear(spec.z[s]);
  auto numerator_values = [&](cplx x) {
    const auto a = composed_values(us, x);
    std::vector<cplx> v(a.size());
    const cplx tzx = tz(x);
    cplx tzk = 1.0;
    for (std::size_t k = 0; k < a.size(); ++k) v[k] = a[k] * (tzk *= tzx);
    return v;
  };

  std::vector<std::vector<cplx>> coef(static_cast<std::size_t>(order));
  std::vector<std::vector<double>> err(static_cast<std::size_t>(order));
  for (int k = 1; k <= order; ++k) {
    coef[k - 1].assign(static_cast<std::size_t>(k * std::max(n - 1, 0)) + 1, 0.0);
    err[k - 1].assign(coef[k - 1].size(), std::numeric_limits<double>::infinity());
  }
  const double r_max = 2.0 * (1.0 + pole_max);
  for (double radius = 0.25; radius <= r_max; radius *= std::sqrt(2.0)) {
    bool clear = true;
    for (cplx p : poles) clear = clear && std::abs(std::abs(p) - radius) >= 0.08 * radius;
    if (!clear) continue;
    std::vector<std::vector<cplx>> vals(static_cast<std::size_t>(order), std::vector<cplx>(static_cast<std::size_t>(samples)));
    for (int m = 0; m < samples; ++m) {
      const auto v = numerator_values(std::polar(radius, 2.0 * M_PI * (m + 0.5) / samples));
      for (int k = 0; k < order; ++k) vals[k][m] = v[k];
    }
    for (int k = 0; k < order; ++k) {
      double peak = 0.0;
      for (cplx v : vals[k]) peak = std::max(peak, std::abs(v));
      for (std::size_t j = 0; j < coef[k].size(); ++j) {
        const double e = peak / std::pow(radius, static_cast<double>(j));
        if (e >= err[k][j]) continue;
        cplx acc = 0.0;
        for (int m = 0; m < samples; ++m)
          acc += vals[k][m] * std::polar(1.0, -2.0 * M_PI * static_cast<double>(j) * (m + 0.5) / samples);
        coef[k][j] = acc / (static_cast<double>(samples) * std::pow(radius, static_cast<double>(j)));
        err[k][j] = e;
      }
    }
  }
  std::vector<Poly> nums;
  for (auto& c : coef) nums.emplace_back(std::move(c));

  constexpr double kFitTol = 1e-9;
  const double check_radius = 1.0 + 1.3 * pole_max;
  for (int m = 0; m < 7; ++m) {
    const cplx x = std::polar(check_radius, 2.0 * M_PI * (m + 0.37) / 7.0);
    const auto v = numerator_values(x);
    for (int k = 0; k < order; ++k) {
      double size = 0.0;
      for (int j = 0; j <= nums[k].degree(); ++j) size += std::abs(nums[k][j]) * std::pow(check_radius, j);
      if (std::abs(nums[k](x) - v[k]) > kFitTol * std::max(size, std::abs(v[k]))) return fallback();
    }
  }
  ScalarDiffOp op;
  op.order = order;
  for (int k = 1; k <= order; ++k) op.coeffs.emplace_back(std::move(nums[k - 1]), tz.pow(k));
  return op;
}

}  // namespace

ScalarDiffOp fundamental_op_typeA(const MasterSpec& spec, const TuplePoint& t) {
  if (!spec.is_type_a()) throw Error(ErrorKind::Unsupported, "fundamental operator requires type-A Cartan data");
  check_collision_free(spec, t);
  const int r = spec.r;
  const int n = spec.n();

  // Factor list from left to right: c = r, ..., 0, with
  // u_c = ln'(y_{c+1} T_1 ... T_c / y_c).
  std::vector<PoleSum> us;
  std::vector<cplx> poles(spec.z.begin(), spec.z.end());
  for (int c = r; c >= 0; --c) {
    PoleSum u;
    for (int s = 0; s < n; ++s) {
      int e = 0;
      for (int i = 0; i < c; ++i) e += spec.weights[s][i];
      if (e != 0) u.emplace_back(spec.z[s], static_cast<double>(e));
    }
    if (c < r)
      for (cplx p : t.groups[c]) u.emplace_back(p, 1.0);
    if (c > 0)
      for (cplx p : t.groups[c - 1]) u.emplace_back(p, -1.0);
    us.push_back(std::move(u));
  }
  for (const auto& g : t.groups) poles.insert(poles.end(), g.begin(), g.end());
  return fit_on_z(spec, us, poles, [&] { return expanded_op(spec, t); });
}


ScalarDiffOp plus_sign_op_typeA(const MasterSpec& spec, const TuplePoint& t) {
  if (!spec.is_type_a() || !spec.all_last_fundamental())
    throw Error(ErrorKind::Unsupported, "plus-sign factorization needs a tensor power of the last fundamental weight");
  check_collision_free(spec, t);
  const int r = spec.r;
  // Factor k is d + ln'(chain_{k+1} / chain_k) with chain = (1, y_1, ..., y_r, T).
  std::vector<PoleSum> us;
  for (int k = 0; k <= r; ++k) {
    PoleSum u;
    if (k > 0)
      for (cplx p : t.groups[static_cast<std::size_t>(k - 1)]) u.emplace_back(p, 1.0);
    if (k < r)
      for (cplx p : t.groups[static_cast<std::size_t>(k)]) u.emplace_back(p, -1.0);
    else
      for (cplx p : spec.z) u.emplace_back(p, -1.0);
    us.push_back(std::move(u));
  }
  std::vector<cplx> poles(spec.z.begin(), spec.z.end());
  for (const auto& g : t.groups) poles.insert(poles.end(), g.begin(), g.end());
  return fit_on_z(spec, us, poles, [&] {
    const TupleY y = tuple_y(t);
    std::vector<Poly> chain{Poly::constant(1.0)};
    chain.insert(chain.end(), y.begin(), y.end());
    chain.push_back(Poly::from_roots(spec.z));
    std::vector<RatFn> rs;
    for (std::size_t k = 0; k + 1 < chain.size(); ++k)
      rs.push_back(RatFn::log_derivative(chain[k]) - RatFn::log_derivative(chain[k + 1]));
    ScalarDiffOp op = compose_factors(rs);
    for (auto& c : op.coeffs)
      for (const Poly& yi : y) c = c.cancel_factor(yi, kFactorCancelTol);
    return op;
  });
}

TupleY recover_tuple(std::span<const Poly> basis, const MasterSpec& spec) {
  const int r = spec.r;
  if (static_cast<int>(basis.size()) != r + 1) throw Error(ErrorKind::InvalidSpec, "basis must have r+1 elements");
  for (std::size_t i = 1; i < basis.size(); ++i)
    if (basis[i].degree() <= basis[i - 1].degree())
      throw Error(ErrorKind::InvalidSpec, "basis must have strictly increasing degrees");
  std::vector<Poly> ts;
  for (int i = 0; i < r; ++i) ts.push_back(weight_polynomial(spec, i));
  TupleY ys;
  for (int i = 1; i <= r; ++i) {
    const Poly w = wronskian(basis.subspan(0, static_cast<std::size_t>(i)));
    if (w.is_zero()) throw Error(ErrorKind::ZeroWronskian, "basis is linearly dependent");
    // divisor T_{i-1} T_{i-2}^2 ... T_1^{i-1}
    Poly divisor = Poly::constant(1.0);
    for (int j = 1; j < i; ++j) divisor *= ts[j - 1].pow(i - j);
    Poly quo;
    if (!divides(divisor, w, 1e-8, &quo))
      throw Error(ErrorKind::InexactDivision, "Wronskian quotient is not a polynomial");
    ys.push_back(quo.monic());
  }
  return ys;
}

}  // namespace gw
