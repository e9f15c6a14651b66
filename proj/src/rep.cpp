#include "gw/rep.hpp"

#include <Eigen/LU>

#include "gw/error.hpp"
#include "gw/linalg.hpp"

namespace gw {

std::vector<int> Factor::dynkin() const {
  std::vector<int> a;
  for (int i = 0; i < r; ++i) a.push_back(gl_highest[i] - gl_highest[i + 1]);
  return a;
}

Factor Factor::dual_vector(int r) {
  if (r < 1) throw Error(ErrorKind::InvalidSpec, "rank must be positive");
  Factor f;
  f.r = r;
  const int d = r + 1;
  f.gl_highest.assign(static_cast<std::size_t>(d), 0);
  f.gl_highest.back() = -1;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
      m(j - 1, i - 1) = -1.0;
      f.e.push_back(std::move(m));
    }
  f.highest_index = r;
  return f;
}

Factor Factor::sym_power(int m) {
  if (m < 0) throw Error(ErrorKind::InvalidSpec, "symmetric power must be nonnegative");
  Factor f;
  f.r = 1;
  f.gl_highest = {0, -m};
  const int d = m + 1;
  Eigen::MatrixXd e11 = Eigen::MatrixXd::Zero(d, d), e12 = e11, e21 = e11, e22 = e11;
  for (int q = 0; q <= m; ++q) {
    e11(q, q) = -(m - q);
    e22(q, q) = -q;
    if (q < m) e12(q + 1, q) = -(m - q);
    if (q > 0) e21(q - 1, q) = -q;
  }
  f.e = {e11, e12, e21, e22};
  f.highest_index = m;
  return f;
}

RepSpace::RepSpace(int r, std::vector<Factor> factors) : r_(r), factors_(std::move(factors)) {
  dim_ = 1;
  for (const auto& f : factors_) {
    if (f.r != r) throw Error(ErrorKind::InvalidSpec, "factor rank mismatch");
    dim_ *= f.dim();
    if (dim_ > kMaxDim) throw Error(ErrorKind::DimensionCap, "representation dimension exceeds 4096");
  }
  stride_.assign(factors_.size(), 1);
  for (int s = n() - 2; s >= 0; --s) stride_[s] = stride_[s + 1] * factors_[s + 1].dim();
}

RepSpace RepSpace::dual_tensor(int r, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidSpec, "negative number of factors");
  return RepSpace(r, std::vector<Factor>(static_cast<std::size_t>(n), Factor::dual_vector(r)));
}

RepSpace RepSpace::sym_tensor(const std::vector<int>& ms) {
  std::vector<Factor> fs;
  for (int m : ms) fs.push_back(Factor::sym_power(m));
  return RepSpace(1, std::move(fs));
}

std::vector<int> RepSpace::multi_index(Eigen::Index k) const {
  std::vector<int> a(factors_.size());
  for (int s = 0; s < n(); ++s) a[s] = static_cast<int>((k / stride_[s]) % factors_[s].dim());
  return a;
}

Eigen::Index RepSpace::flat_index(const std::vector<int>& a) const {
  Eigen::Index k = 0;
  for (int s = 0; s < n(); ++s) k += a[s] * stride_[s];
  return k;
}

SparseMat RepSpace::generator_action(int i, int j, int s) const {
  if (i < 1 || j < 1 || i > r_ + 1 || j > r_ + 1 || s < 1 || s > n())
    throw Error(ErrorKind::InvalidSpec, "generator index out of range");
  const Eigen::MatrixXd& m = factors_[s - 1].gen(i, j);
  const Eigen::Index st = stride_[s - 1];
  const int d = factors_[s - 1].dim();
  std::vector<Eigen::Triplet<double>> trip;
  for (Eigen::Index k = 0; k < dim_; ++k) {
    const int a = static_cast<int>((k / st) % d);
    for (int b = 0; b < d; ++b)
      if (m(b, a) != 0.0) trip.emplace_back(k + (b - a) * st, k, m(b, a));
  }
  SparseMat out(dim_, dim_);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

SparseMat RepSpace::total_action(int i, int j) const {
  SparseMat out(dim_, dim_);
  for (int s = 1; s <= n(); ++s) out += generator_action(i, j, s);
  return out;
}

Eigen::VectorXcd RepSpace::apply(int i, int j, int s, const Eigen::VectorXcd& v) const {
  const Eigen::MatrixXd& m = factors_[s - 1].gen(i, j);
  const Eigen::Index st = stride_[s - 1];
  const int d = factors_[s - 1].dim();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim_);
  for (Eigen::Index k = 0; k < dim_; ++k) {
    if (v(k) == cplx(0.0)) continue;
    const int a = static_cast<int>((k / st) % d);
    for (int b = 0; b < d; ++b)
      if (m(b, a) != 0.0) out(k + (b - a) * st) += m(b, a) * v(k);
  }
  return out;
}

std::vector<int> RepSpace::sl_weight(Eigen::Index k) const {
  std::vector<int> w(static_cast<std::size_t>(r_), 0);
  const auto a = multi_index(k);
  for (int s = 0; s < n(); ++s)
    for (int i = 1; i <= r_; ++i) {
      const auto& f = factors_[s];
      w[i - 1] += static_cast<int>(std::lround(f.gen(i, i)(a[s], a[s]) - f.gen(i + 1, i + 1)(a[s], a[s])));
    }
  return w;
}

Eigen::VectorXd RepSpace::highest_weight_vector() const {
  std::vector<int> a;
  for (const auto& f : factors_) a.push_back(f.highest_index);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim_);
  v(flat_index(a)) = 1.0;
  return v;
}

std::vector<std::vector<int>> RepSpace::factor_weights() const {
  std::vector<std::vector<int>> w;
  for (const auto& f : factors_) w.push_back(f.dynkin());
  return w;
}

Subspace weight_space(const RepSpace& rep, const std::vector<int>& mu) {
  std::vector<Eigen::Index> hits;
  for (Eigen::Index k = 0; k < rep.dim(); ++k)
    if (rep.sl_weight(k) == mu) hits.push_back(k);
  Subspace sub;
  sub.basis = Eigen::MatrixXd::Zero(rep.dim(), static_cast<Eigen::Index>(hits.size()));
  for (std::size_t c = 0; c < hits.size(); ++c) sub.basis(hits[c], static_cast<Eigen::Index>(c)) = 1.0;
  return sub;
}

Subspace singular_subspace(const RepSpace& rep, const std::vector<int>& mu) {
  Subspace w = weight_space(rep, mu);
  if (w.dim() == 0) return w;
  std::vector<Eigen::VectorXd> rows;
  for (int i = 1; i <= rep.r(); ++i) {
    const Eigen::MatrixXd img = rep.total_action(i, i + 1) * w.basis;
    for (Eigen::Index k = 0; k < img.rows(); ++k)
      if (img.row(k).cwiseAbs().maxCoeff() > 0.0) rows.emplace_back(img.row(k).transpose());
  }
  if (rows.empty()) return w;
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), w.dim());
  for (std::size_t k = 0; k < rows.size(); ++k) a.row(static_cast<Eigen::Index>(k)) = rows[k].transpose();
  Subspace out;
  out.basis = w.basis * null_space(a);
  return out;
}

int multiplicity_N(const ExponentSpec& d) {
  d.validate();
  const RepSpace rep = RepSpace::dual_tensor(d.r(), d.n());
  return static_cast<int>(singular_subspace(rep, d.lambda()).dim());
}

Eigen::MatrixXd factor_gram(const Factor& f) {
  const int d = f.dim();
  struct Word {
    std::vector<int> ops;  // vector = F_{ops[0]} F_{ops[1]} ... v
    Eigen::VectorXd vec;
  };
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  v(f.highest_index) = 1.0;
  std::vector<Word> basis{{{}, v}};
  std::vector<Word> layer = basis;
  auto independent = [&](const Eigen::VectorXd& cand) {
    Eigen::MatrixXd c(d, static_cast<Eigen::Index>(basis.size()) + 1);
    for (std::size_t k = 0; k < basis.size(); ++k) c.col(static_cast<Eigen::Index>(k)) = basis[k].vec;
    c.col(c.cols() - 1) = cand;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(c);
    lu.setThreshold(1e-10);
    return lu.rank() == c.cols();
  };
  while (!layer.empty() && static_cast<int>(basis.size()) < d) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (int i = 1; i <= f.r; ++i) {
        Eigen::VectorXd u = f.gen(i + 1, i) * w.vec;
        if (u.cwiseAbs().maxCoeff() <= 1e-12 || !independent(u)) continue;
        Word nw{w.ops, u};
        nw.ops.insert(nw.ops.begin(), i);
        basis.push_back(nw);
        next.push_back(nw);
      }
    layer = std::move(next);
  }
  if (static_cast<int>(basis.size()) != d) throw Error(ErrorKind::InvalidSpec, "factor is not generated by its highest weight vector");
  // S(F_{i1} ... F_{ik} v, u) = S(v, E_{ik,ik+1} ... E_{i1,i1+1} u) = coefficient of v.
  Eigen::MatrixXd gb(d, d), c(d, d);
  for (int a = 0; a < d; ++a) {
    c.col(a) = basis[a].vec;
    for (int b = 0; b < d; ++b) {
      Eigen::VectorXd u = basis[b].vec;
      for (int i : basis[a].ops) u = f.gen(i, i + 1) * u;
      gb(a, b) = u(f.highest_index);
    }
  }
  const Eigen::MatrixXd cinv = c.inverse();
  return cinv.transpose() * gb * cinv;
}

Eigen::MatrixXd shapovalov_gram(const RepSpace& rep) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Ones(1, 1);
  for (const auto& f : rep.factors()) {
    const Eigen::MatrixXd gf = factor_gram(f);
    Eigen::MatrixXd next(g.rows() * gf.rows(), g.cols() * gf.cols());
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j)
        next.block(i * gf.rows(), j * gf.cols(), gf.rows(), gf.cols()) = g(i, j) * gf;
    g = std::move(next);
  }
  return g;
}

}  // namespace gw
