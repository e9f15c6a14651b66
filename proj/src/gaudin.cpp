#include "gw/gaudin.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <random>

#include "gw/error.hpp"
#include "gw/linalg.hpp"

namespace gw {

namespace {

CSparse zero_mat(Eigen::Index dim) { return CSparse(dim, dim); }

CSparse identity_mat(Eigen::Index dim) {
  CSparse id(dim, dim);
  id.setIdentity();
  return id;
}

// Polynomials in w_s = 1 / (x - z_s) with matrix coefficients. All
// coefficients built from the generator matrices are small integers, so this
// arithmetic is exact and cancellations come out as true zeros.
void add_into(PoleForm& acc, const PoleForm& b, double scale) {
  for (const auto& [e, m] : b) {
    auto it = acc.find(e);
    if (it == acc.end())
      acc.emplace(e, scale * m);
    else
      it->second += scale * m;
  }
}

PoleForm mul(const PoleForm& a, const PoleForm& b) {
  PoleForm out;
  for (const auto& [ea, ma] : a)
    for (const auto& [eb, mb] : b) {
      CSparse prod = ma * mb;
      if (prod.nonZeros() == 0) continue;
      std::vector<int> e(ea.size());
      for (std::size_t s = 0; s < e.size(); ++s) e[s] = ea[s] + eb[s];
      auto it = out.find(e);
      if (it == out.end())
        out.emplace(std::move(e), std::move(prod));
      else
        it->second += prod;
    }
  return out;
}

// d/dx with w_s' = -w_s^2.
PoleForm derivative(const PoleForm& a) {
  PoleForm out;
  for (const auto& [e, m] : a)
    for (std::size_t s = 0; s < e.size(); ++s) {
      if (e[s] == 0) continue;
      std::vector<int> up = e;
      ++up[s];
      add_into(out, PoleForm{{up, m}}, -static_cast<double>(e[s]));
    }
  return out;
}

void drop_zeros(PoleForm& f) {
  for (auto it = f.begin(); it != f.end();) {
    it->second.prune(cplx(0.0));
    it = it->second.nonZeros() == 0 ? f.erase(it) : std::next(it);
  }
}

// Numerators over T^k of C_k = sum_e M_e prod_s w_s^{e_s}. With shadow set,
// every scalar is replaced by its modulus, which bounds the terms summed
// into each numerator entry.
std::vector<MatPoly> to_numerators(const std::vector<PoleForm>& forms, std::span<const cplx> z, Eigen::Index dim,
                                   bool shadow) {
  std::vector<MatPoly> nums(forms.size());
  for (std::size_t k = 1; k <= forms.size(); ++k) {
    MatPoly& out = nums[k - 1];
    for (const auto& [e, m] : forms[k - 1]) {
      Poly p = Poly::constant(1.0);
      for (std::size_t s = 0; s < z.size(); ++s)
        p *= Poly::linear(shadow ? cplx(-std::abs(z[s])) : z[s]).pow(static_cast<int>(k) - e[s]);
      const CSparse mat = shadow ? CSparse(m.unaryExpr([](cplx v) { return cplx(std::abs(v)); })) : m;
      if (out.size() < p.coeffs().size()) out.resize(p.coeffs().size(), zero_mat(dim));
      for (int j = 0; j <= p.degree(); ++j) out[static_cast<std::size_t>(j)] += (shadow ? cplx(std::abs(p[j])) : p[j]) * mat;
    }
  }
  return nums;
}

// Drops entries that are below the rounding scale given by the shadow.
void prune_noise(std::vector<MatPoly>& nums, const std::vector<MatPoly>& shadow) {
  constexpr double kNoise = 1e-12;
  for (std::size_t k = 0; k < nums.size(); ++k)
    for (std::size_t j = 0; j < nums[k].size(); ++j) {
      const CSparse& bound = shadow[k][j];
      nums[k][j].prune([&](Eigen::Index row, Eigen::Index col, const cplx& v) {
        return std::abs(v) > kNoise * std::abs(bound.coeff(row, col));
      });
    }
}

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

void check_pole(const OperatorDiffOp& op, cplx x) {
  for (cplx z : op.poles)
    if (std::abs(x - z) <= 1e-12 * (1.0 + std::abs(z))) throw Error(ErrorKind::PoleAtX, "evaluation point is a pole");
}

// Partial product of X-factors; c[p] is the coefficient of d^p.
struct PartialOp {
  int factors = 0;
  std::vector<PoleForm> c;
};

}  // namespace

Eigen::MatrixXcd OperatorDiffOp::coeff(int k, cplx x) const {
  return apply_coeff(k, x, Eigen::MatrixXcd::Identity(dim, dim));
}

Eigen::MatrixXcd OperatorDiffOp::apply_coeff(int k, cplx x, const Eigen::MatrixXcd& v) const {
  if (k < 1 || k > order) throw Error(ErrorKind::InvalidSpec, "coefficient index out of range");
  check_pole(*this, x);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, v.cols());
  if (!pole_terms.empty()) {
    std::vector<cplx> w;
    for (cplx p : poles) w.push_back(1.0 / (x - p));
    for (const auto& [e, m] : pole_terms[static_cast<std::size_t>(k - 1)]) {
      cplx c = 1.0;
      for (std::size_t s = 0; s < e.size(); ++s)
        for (int j = 0; j < e[s]; ++j) c *= w[s];
      acc.noalias() += c * (m * v);
    }
    return acc;
  }
  const MatPoly& n = numerators[static_cast<std::size_t>(k - 1)];
  for (std::size_t j = n.size(); j-- > 0;) {
    acc *= x;
    if (n[j].nonZeros()) acc += n[j] * v;
  }
  return acc / std::pow(common_den(x), k);
}

RatFn OperatorDiffOp::entry(int k, Eigen::Index a, Eigen::Index b) const {
  const MatPoly& n = numerators[static_cast<std::size_t>(k - 1)];
  std::vector<cplx> c(n.size());
  for (std::size_t j = 0; j < n.size(); ++j) c[j] = n[j].coeff(a, b);
  return RatFn(Poly(std::move(c)), common_den.pow(k));
}

namespace {

std::vector<PoleForm> expand_m(const RepSpace& rep) {
  const int r = rep.r();
  const int big_n = r + 1;
  const Eigen::Index dim = rep.dim();
  const std::size_t n = static_cast<std::size_t>(rep.n());

  // a_ders[k][c][m] is the m-th derivative of A_{kc} = sum_s E^{(s)}_{c,k} w_s.
  std::vector<std::vector<std::vector<PoleForm>>> a_ders(static_cast<std::size_t>(big_n),
                                                         std::vector<std::vector<PoleForm>>(static_cast<std::size_t>(big_n)));
  for (int k = 1; k <= big_n; ++k)
    for (int c = 1; c <= big_n; ++c) {
      PoleForm base;
      for (std::size_t s = 0; s < n; ++s) {
        CSparse e = rep.generator_action(c, k, static_cast<int>(s) + 1).cast<cplx>();
        if (e.nonZeros() == 0) continue;
        std::vector<int> unit(n, 0);
        unit[s] = 1;
        base.emplace(std::move(unit), std::move(e));
      }
      auto& ders = a_ders[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(c - 1)];
      ders.push_back(base);
      for (int m = 1; m <= r; ++m) ders.push_back(derivative(ders.back()));
    }

  std::vector<PoleForm> forms(static_cast<std::size_t>(big_n));
  // Depth-first over rows; the prefix product is shared by all permutations
  // that agree on the first rows.
  std::vector<bool> used(static_cast<std::size_t>(big_n), false);
  auto extend = [&](auto&& self, const PartialOp& left, int row, int sign) -> void {
    if (row > big_n) {
      for (int k = 1; k <= big_n; ++k)
        add_into(forms[static_cast<std::size_t>(k - 1)], left.c[static_cast<std::size_t>(big_n - k)],
                 static_cast<double>(sign));
      return;
    }
    int smaller_unused = 0;
    for (int c = 1; c <= big_n; ++c) {
      if (used[static_cast<std::size_t>(c - 1)]) continue;
      // Each unused column smaller than c ends up in a later row: one inversion.
      const int flip = smaller_unused++ % 2 ? -1 : 1;
      PartialOp next;
      next.factors = left.factors + 1;
      next.c.assign(static_cast<std::size_t>(next.factors) + 1, PoleForm{});
      const auto& ders = a_ders[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(c - 1)];
      for (int p = 0; p <= left.factors; ++p) {
        const PoleForm& cp = left.c[static_cast<std::size_t>(p)];
        if (cp.empty()) continue;
        if (c == row) add_into(next.c[static_cast<std::size_t>(p + 1)], cp, 1.0);
        // c_p d^p o (-A) = -sum_m binom(p, m) c_p A^{(m)} d^{p-m}.
        for (int m = 0; m <= p; ++m)
          add_into(next.c[static_cast<std::size_t>(p - m)], mul(cp, ders[static_cast<std::size_t>(m)]), -binom(p, m));
      }
      used[static_cast<std::size_t>(c - 1)] = true;
      self(self, next, row + 1, sign * flip);
      used[static_cast<std::size_t>(c - 1)] = false;
    }
  };
  PartialOp start;
  start.c = {PoleForm{{std::vector<int>(n, 0), identity_mat(dim)}}};
  extend(extend, start, 1, 1);
  for (auto& f : forms) drop_zeros(f);
  return forms;
}

std::vector<PoleForm> conjugate_forms(const std::vector<PoleForm>& forms) {
  const int big_n = static_cast<int>(forms.size());
  std::vector<PoleForm> out(forms.size());
  for (int j = 1; j <= big_n; ++j) {
    PoleForm& acc = out[static_cast<std::size_t>(j - 1)];
    for (int i = 1; i <= j; ++i) {
      // (-1)^i binom(N - i, j - i) times the (j - i)-th derivative of C_i.
      PoleForm der = forms[static_cast<std::size_t>(i - 1)];
      for (int w = i; w < j; ++w) der = derivative(der);
      add_into(acc, der, (i % 2 ? -1.0 : 1.0) * binom(big_n - i, j - i));
    }
    drop_zeros(acc);
  }
  return out;
}

void finish(OperatorDiffOp& op) {
  op.numerators = to_numerators(op.pole_terms, op.poles, op.dim, false);
  op.magnitudes = to_numerators(op.pole_terms, op.poles, op.dim, true);
  prune_noise(op.numerators, op.magnitudes);
  for (auto& n : op.numerators) {
    for (auto& m : n) m.prune(cplx(0.0));
    while (!n.empty() && n.back().nonZeros() == 0) n.pop_back();
  }
}

}  // namespace

OperatorDiffOp build_M(const RepSpace& rep, std::span<const cplx> z) {
  if (static_cast<int>(z.size()) != rep.n()) throw Error(ErrorKind::InvalidSpec, "one point per tensor factor required");
  OperatorDiffOp out;
  out.order = rep.r() + 1;
  out.dim = rep.dim();
  out.common_den = Poly::from_roots(z);
  out.poles.assign(z.begin(), z.end());
  out.pole_terms = expand_m(rep);
  finish(out);
  return out;
}

OperatorDiffOp build_K(const OperatorDiffOp& m) {
  if (m.pole_terms.empty()) throw Error(ErrorKind::Unsupported, "conjugation needs the pole expansion of the operator");
  OperatorDiffOp k = m;
  k.pole_terms = conjugate_forms(m.pole_terms);
  finish(k);
  return k;
}

Subspace full_space(Eigen::Index dim) { return Subspace{Eigen::MatrixXd::Identity(dim, dim)}; }

Eigen::MatrixXcd hamiltonian_matrix(const OperatorDiffOp& op, int i, cplx x, const Subspace& sub) {
  const Eigen::MatrixXcd p = sub.basis.cast<cplx>();
  const Eigen::MatrixXcd y = op.apply_coeff(i, x, p);
  const Eigen::MatrixXcd c = p.adjoint() * y;
  const double defect = (y - p * c).norm() / std::max(1.0, y.norm());
  if (defect > kDefectTol) throw Error(ErrorKind::NotInvariant, "subspace is not invariant under the coefficient");
  return c;
}

double commutation_defect(const OperatorDiffOp& op, cplx u, cplx v, const Subspace& sub) {
  std::vector<Eigen::MatrixXcd> cu, cv;
  for (int i = 1; i <= op.order; ++i) {
    cu.push_back(hamiltonian_matrix(op, i, u, sub));
    cv.push_back(hamiltonian_matrix(op, i, v, sub));
  }
  double worst = 0.0;
  for (const auto& a : cu)
    for (const auto& b : cv) worst = std::max(worst, (a * b - b * a).norm() / (1.0 + a.norm() * b.norm()));
  return worst;
}

double shapovalov_defect(const OperatorDiffOp& op, cplx x, const RepSpace& rep) {
  const Eigen::MatrixXcd g = shapovalov_gram(rep).cast<cplx>();
  double worst = 0.0;
  for (int i = 1; i <= op.order; ++i) {
    const Eigen::MatrixXcd k = op.coeff(i, x);
    const Eigen::MatrixXcd gk = g * k;
    const double den = gk.norm();
    if (den > 0.0) worst = std::max(worst, (gk - k.transpose() * g).norm() / den);
  }
  return worst;
}

bool real_spectrum_check(const OperatorDiffOp& op, const Subspace& sub, std::span<const cplx> xs) {
  if (sub.dim() == 0) return true;
  for (cplx x : xs)
    for (int i = 1; i <= op.order; ++i) {
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(hamiltonian_matrix(op, i, x, sub), false);
      for (const cplx& lam : es.eigenvalues())
        if (std::abs(lam.imag()) > 1e-8 * (1.0 + std::abs(lam))) return false;
    }
  return true;
}

Poly central_psi(const Factor& f) {
  // Roots r + 1 - i + p_i from the gl highest weight p; the Dynkin labels
  // alone would lose the trace part.
  Poly psi = Poly::constant(1.0);
  for (int i = 1; i <= f.r + 1; ++i)
    psi *= Poly::linear(static_cast<double>(f.r + 1 - i + f.gl_highest[static_cast<std::size_t>(i - 1)]));
  return psi;
}

Eigen::MatrixXcd central_element(const Factor& f, cplx x) {
  const int big_n = f.r + 1;
  const int d = f.dim();
  std::vector<int> sigma(static_cast<std::size_t>(big_n));
  std::iota(sigma.begin(), sigma.end(), 1);
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(d, d);
  do {
    int inv = 0;
    for (int a = 0; a < big_n; ++a)
      for (int b = a + 1; b < big_n; ++b) inv += sigma[a] > sigma[b];
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(d, d);
    for (int k = 1; k <= big_n; ++k) {
      const int c = sigma[static_cast<std::size_t>(k - 1)];
      Eigen::MatrixXcd factor = -f.gen(c, k).cast<cplx>();
      if (c == k) factor.diagonal().array() += x - static_cast<double>(f.r + 1 - k);
      prod = prod * factor;
    }
    total += (inv % 2 ? -1.0 : 1.0) * prod;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

double central_element_check(const Factor& f, std::span<const cplx> xs) {
  const Poly psi = central_psi(f);
  double worst = 0.0;
  for (cplx x : xs) {
    const cplx p = psi(x);
    Eigen::MatrixXcd a = central_element(f, x);
    a.diagonal().array() -= p;
    worst = std::max(worst, a.norm() / std::abs(p));
  }
  return worst;
}

int polynomial_solutions_check(const OperatorDiffOp& op, int degree_bound) {
  const int big_n = op.order;
  const Eigen::Index dim = op.dim;
  const Eigen::Index unknowns = dim * (degree_bound + 1);
  if (degree_bound < 0) return 0;

  // T^N K u = sum_k T^{N-k} N_k u^{(N-k)} with N_0 = identity.
  std::vector<Poly> tpow;
  for (int k = 0; k <= big_n; ++k) tpow.push_back(op.common_den.pow(big_n - k));
  int out_deg = 0;
  for (int k = 0; k <= big_n; ++k) {
    const int nk = k == 0 ? 0 : static_cast<int>(op.numerators[static_cast<std::size_t>(k - 1)].size()) - 1;
    out_deg = std::max(out_deg, tpow[static_cast<std::size_t>(k)].degree() + std::max(nk, 0) + degree_bound);
  }
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim * (out_deg + 1), unknowns);
  // Column scales use the largest entry of each coefficient matrix rather
  // than the entry itself: an entry that cancelled to rounding noise while
  // the operator was built must stay small after scaling.
  Eigen::VectorXd scale = Eigen::VectorXd::Zero(unknowns);
  for (int j = 0; j <= degree_bound; ++j)
    for (int k = 0; k <= big_n; ++k) {
      const int q = big_n - k;  // derivative order acting on x^j
      if (q > j) continue;
      double ff = 1.0;
      for (int i = 0; i < q; ++i) ff *= j - i;
      const Poly& tp = tpow[static_cast<std::size_t>(k)];
      const double tsize = tp.max_abs_coeff();
      auto put = [&](int deg, Eigen::Index row, Eigen::Index col, cplx val) {
        for (int m = 0; m <= tp.degree(); ++m) a((deg + m) * dim + row, j * dim + col) += ff * tp[m] * val;
      };
      if (k == 0) {
        for (Eigen::Index b = 0; b < dim; ++b) {
          put(j - q, b, b, 1.0);
          scale(j * dim + b) = std::max(scale(j * dim + b), ff * tsize);
        }
        continue;
      }
      const MatPoly& nk = op.numerators[static_cast<std::size_t>(k - 1)];
      for (std::size_t l = 0; l < nk.size(); ++l) {
        double msize = 0.0;
        for (Eigen::Index col = 0; col < nk[l].outerSize(); ++col)
          for (CSparse::InnerIterator it(nk[l], col); it; ++it) msize = std::max(msize, std::abs(it.value()));
        for (Eigen::Index col = 0; col < nk[l].outerSize(); ++col)
          for (CSparse::InnerIterator it(nk[l], col); it; ++it)
            put(static_cast<int>(l) + j - q, it.row(), it.col(), it.value());
        for (Eigen::Index b = 0; b < dim; ++b) scale(j * dim + b) = std::max(scale(j * dim + b), ff * tsize * msize);
      }
    }
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    if (scale(c) > 0.0) a.col(c) /= scale(c);
  return static_cast<int>(unknowns) - numerical_rank(a, 1e-9);
}

ScalarDiffOp eigenvalue_operator(const MasterSpec& spec, const TuplePoint& t, EigenTarget target) {
  if (target == EigenTarget::K) return fundamental_op_typeA(spec, t);
  return plus_sign_op_typeA(spec, t);
}

double eigenvalue_match(const OperatorDiffOp& op, const Eigen::VectorXcd& w, const TuplePoint& t,
                        const MasterSpec& spec, std::span<const cplx> xs, EigenTarget target) {
  const double wn = w.norm();
  if (!(wn > 0.0)) throw Error(ErrorKind::ZeroVector, "Bethe vector vanishes");
  const ScalarDiffOp d = eigenvalue_operator(spec, t, target);
  if (d.order != op.order) throw Error(ErrorKind::InvalidSpec, "operator orders differ");
  double worst = 0.0;
  for (cplx x : xs) {
    const std::vector<cplx> lam = d.coeff_values(x);
    for (int i = 1; i <= op.order; ++i) {
      const Eigen::VectorXcd kw = op.apply_coeff(i, x, w);
      worst = std::max(worst, (kw - lam[static_cast<std::size_t>(i - 1)] * w).norm() / wn);
    }
  }
  return worst;
}

std::vector<std::vector<cplx>> joint_spectrum(const OperatorDiffOp& op, const Subspace& sub,
                                              std::span<const cplx> xs, std::uint64_t seed) {
  const Eigen::Index m = sub.dim();
  std::vector<Eigen::MatrixXcd> comp;
  for (cplx x : xs)
    for (int i = 1; i <= op.order; ++i) comp.push_back(hamiltonian_matrix(op, i, x, sub));
  if (m == 0) return {};
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> normal;
  for (int attempt = 0; attempt <= 5; ++attempt) {
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(m, m);
    for (const auto& c : comp) b += normal(eng) * c / (1.0 + c.norm());
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(b);
    if (es.info() != Eigen::Success) continue;
    const Eigen::MatrixXcd& v = es.eigenvectors();
    if (!(condition_number(v) <= 1e8)) continue;
    std::vector<std::vector<cplx>> out;
    for (Eigen::Index col = 0; col < m; ++col) {
      const Eigen::VectorXcd vc = v.col(col);
      std::vector<cplx> tuple;
      for (const auto& c : comp) tuple.push_back(vc.dot(c * vc) / vc.squaredNorm());
      out.push_back(std::move(tuple));
    }
    return out;
  }
  throw Error(ErrorKind::NotDiagonalizable, "simultaneous eigenbasis is ill-conditioned");
}

bool simple_spectrum_check(const OperatorDiffOp& op, const Subspace& sub, std::span<const cplx> xs,
                           std::uint64_t seed) {
  if (sub.dim() <= 1) return true;
  const auto tuples = joint_spectrum(op, sub, xs, seed);
  for (std::size_t a = 0; a < tuples.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) {
      double sep = 0.0;
      for (std::size_t k = 0; k < tuples[a].size(); ++k) sep = std::max(sep, std::abs(tuples[a][k] - tuples[b][k]));
      if (sep <= kSeparationTol) return false;
    }
  return true;
}

std::vector<cplx> sample_points(std::span<const cplx> z, int count, std::uint64_t seed, bool real_only) {
  double zmax = 0.0;
  for (cplx v : z) zmax = std::max(zmax, std::abs(v));
  const double radius = 2.0 * (1.0 + zmax);
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<cplx> out;
  while (static_cast<int>(out.size()) < count) {
    const cplx x = real_only ? cplx(u(eng)) : cplx(u(eng), u(eng));
    if (std::abs(x) > radius) continue;
    bool far = true;
    for (cplx v : z) far = far && std::abs(x - v) >= 1e-3;
    if (far) out.push_back(x);
  }
  return out;
}

SpectralReport spectral_report(const MasterSpec& spec, const RepSpace& rep, const OperatorDiffOp& k,
                               const Subspace& sing, std::span<const TuplePoint> orbits,
                               std::span<const Eigen::VectorXcd> bethe, int samples, std::uint64_t seed) {
  SpectralReport out;
  out.real_data = std::all_of(spec.z.begin(), spec.z.end(), [](cplx v) { return v.imag() == 0.0; });
  out.x_samples = sample_points(spec.z, samples, seed, out.real_data);
  const auto& xs = out.x_samples;
  for (std::size_t b = 0; b < bethe.size(); ++b) {
    out.eigen_residuals.push_back(eigenvalue_match(k, bethe[b], orbits[b], spec, xs));
    const ScalarDiffOp d = eigenvalue_operator(spec, orbits[b], EigenTarget::K);
    std::vector<std::vector<cplx>> per_x;
    for (cplx x : xs) per_x.push_back(d.coeff_values(x));
    out.eigenvalues.push_back(std::move(per_x));
  }
  for (std::size_t a = 0; a < xs.size(); ++a) {
    out.commutator_defect = std::max(out.commutator_defect, commutation_defect(k, xs[a], xs[(a + 1) % xs.size()], sing));
    out.symmetry_defect = std::max(out.symmetry_defect, shapovalov_defect(k, xs[a], rep));
  }
  if (out.real_data) out.real_spectrum = real_spectrum_check(k, sing, xs);
  out.simple = simple_spectrum_check(k, sing, xs, seed);
  return out;
}

}  // namespace gw
