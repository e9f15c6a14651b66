#include <map>

#include "doctest.h"
#include "gw/error.hpp"
#include "gw/rep.hpp"
#include "oracles.hpp"
#include "prop.hpp"

using gw::Factor;
using gw::RepSpace;
using gwtest::Gen;

namespace {

Eigen::MatrixXd dense(const gw::SparseMat& m) { return Eigen::MatrixXd(m); }

// Random small representation: either a tensor power of the dual vector
// representation or (for r = 1) a product of symmetric powers.
RepSpace random_rep(Gen& g) {
  if (g.integer(0, 2) == 0) {
    std::vector<int> ms;
    const int n = g.integer(1, 3);
    for (int k = 0; k < n; ++k) ms.push_back(g.integer(0, 4));
    return RepSpace::sym_tensor(ms);
  }
  const int r = g.integer(1, 3);
  const int n = g.integer(1, r == 1 ? 5 : 3);
  return RepSpace::dual_tensor(r, n);
}

Eigen::VectorXd random_vector(Gen& g, Eigen::Index dim) {
  Eigen::VectorXd v(dim);
  for (Eigen::Index k = 0; k < dim; ++k) v(k) = g.real(-1.0, 1.0);
  return v;
}

}  // namespace

TEST_CASE("dual vector action and highest weight vector for r = 1") {
  const Factor f = Factor::dual_vector(1);
  Eigen::VectorXd e1(2), e2(2);
  e1 << 1, 0;
  e2 << 0, 1;
  CHECK((f.gen(1, 1) * e2).norm() == 0.0);
  CHECK((f.gen(1, 1) * e1 + e1).norm() == 0.0);
  CHECK((f.gen(1, 2) * e2).norm() == 0.0);
  CHECK((f.gen(1, 2) * e1 + e2).norm() == 0.0);
  CHECK(f.gl_highest == std::vector<int>{0, -1});
  CHECK(f.highest_index == 1);
  const RepSpace rep = RepSpace::dual_tensor(1, 1);
  CHECK(rep.sl_weight(1) == std::vector<int>{1});
  CHECK(rep.sl_weight(0) == std::vector<int>{-1});
}

TEST_CASE("tensor basis is lexicographic with the first factor most significant") {
  const RepSpace rep = RepSpace::dual_tensor(2, 3);
  CHECK(rep.dim() == 27);
  CHECK(rep.multi_index(0) == std::vector<int>{0, 0, 0});
  CHECK(rep.multi_index(1) == std::vector<int>{0, 0, 1});
  CHECK(rep.multi_index(3) == std::vector<int>{0, 1, 0});
  CHECK(rep.multi_index(26) == std::vector<int>{2, 2, 2});
  for (Eigen::Index k = 0; k < rep.dim(); ++k) CHECK(rep.flat_index(rep.multi_index(k)) == k);
}

TEST_CASE("weight space dimensions") {
  const RepSpace rep = RepSpace::dual_tensor(1, 2);
  CHECK(gw::weight_space(rep, {0}).dim() == 2);
  CHECK(gw::weight_space(rep, {2}).dim() == 1);
  CHECK(gw::weight_space(rep, {5}).dim() == 0);
  const RepSpace rep3 = RepSpace::dual_tensor(2, 3);
  CHECK(gw::weight_space(rep3, {0, 3}).dim() == 1);
}

TEST_CASE("singular subspace dimensions") {
  CHECK(gw::singular_subspace(RepSpace::dual_tensor(1, 2), {0}).dim() == 1);
  CHECK(gw::singular_subspace(RepSpace::dual_tensor(1, 4), {0}).dim() == 2);
  CHECK(gw::singular_subspace(RepSpace::dual_tensor(1, 6), {0}).dim() == 5);
  // r = 2, n = 3 with l = (1, 1): <mu, H> = (-1, 2) is not dominant.
  CHECK(gw::singular_subspace(RepSpace::dual_tensor(2, 3), {-1, 2}).dim() == 0);
  // r = 2, n = 3 with l = (1, 2): mu = 0, the invariant line.
  CHECK(gw::singular_subspace(RepSpace::dual_tensor(2, 3), {0, 0}).dim() == 1);
}

TEST_CASE("multiplicity N(d)") {
  CHECK(gw::multiplicity_N({{1, 2}}) == 1);
  CHECK(gw::multiplicity_N({{2, 3}}) == 2);
  CHECK(gw::multiplicity_N({{0, 1}}) == 1);
  CHECK(gw::multiplicity_N({{0, 1, 2}}) == 1);
  CHECK(gw::multiplicity_N({{0, 1, 2, 3}}) == 1);
  CHECK(gw::multiplicity_N({{1, 2, 3}}) == 1);
  CHECK(gw::multiplicity_N({{2, 3, 4}}) == 5);
  CHECK_THROWS_AS(gw::multiplicity_N({{2, 1}}), gw::Error);
}

TEST_CASE("dimension cap") {
  CHECK_NOTHROW(RepSpace::dual_tensor(1, 12));
  CHECK_THROWS_AS(RepSpace::dual_tensor(1, 13), gw::Error);
  try {
    RepSpace::dual_tensor(3, 7);
  } catch (const gw::Error& e) {
    CHECK(e.kind() == gw::ErrorKind::DimensionCap);
  }
}

TEST_CASE("Shapovalov Gram matrices") {
  for (int r = 1; r <= 3; ++r) {
    const Eigen::MatrixXd g = gw::factor_gram(Factor::dual_vector(r));
    CHECK((g - Eigen::MatrixXd::Identity(r + 1, r + 1)).norm() < 1e-14);
  }
  const Eigen::MatrixXd g = gw::shapovalov_gram(RepSpace::dual_tensor(2, 3));
  CHECK((g - Eigen::MatrixXd::Identity(27, 27)).norm() < 1e-14);
  // Sym^m: S(e_q, e_q) = 1 / binom(m, q) for this basis normalization.
  const Eigen::MatrixXd s = gw::factor_gram(Factor::sym_power(4));
  const double binom[] = {1, 4, 6, 4, 1};
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) CHECK(s(a, b) == doctest::Approx(a == b ? 1.0 / binom[a] : 0.0));
}

TEST_CASE("symmetric power factor") {
  const Factor f = Factor::sym_power(3);
  CHECK(f.dim() == 4);
  CHECK(f.dynkin() == std::vector<int>{3});
  Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
  v(f.highest_index) = 1.0;
  CHECK((f.gen(1, 2) * v).norm() == 0.0);
  CHECK_THROWS_AS(Factor::sym_power(-1), gw::Error);
  const RepSpace rep = RepSpace::sym_tensor({1, 2});
  CHECK(rep.factor_weights() == std::vector<std::vector<int>>{{1}, {2}});
  CHECK(gw::singular_subspace(rep, {1}).dim() == 1);
  CHECK(gw::singular_subspace(rep, {3}).dim() == 1);
  CHECK(gw::singular_subspace(rep, {-1}).dim() == 0);
}

TEST_CASE("property: gl relations on each slot and commutation across slots") {
  gwtest::for_all(31, gwtest::kCases, [](Gen& g, int) {
    const RepSpace rep = random_rep(g);
    const int d = rep.r() + 1;
    const int i = g.integer(1, d), j = g.integer(1, d), k = g.integer(1, d), l = g.integer(1, d);
    const int s = g.integer(1, rep.n());
    const Eigen::MatrixXd a = dense(rep.generator_action(i, j, s));
    const Eigen::MatrixXd b = dense(rep.generator_action(k, l, s));
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(rep.dim(), rep.dim());
    if (j == k) expect += dense(rep.generator_action(i, l, s));
    if (l == i) expect -= dense(rep.generator_action(k, j, s));
    CHECK((a * b - b * a - expect).cwiseAbs().maxCoeff() < 1e-12);
    if (rep.n() > 1) {
      const int t = s % rep.n() + 1;
      const Eigen::MatrixXd c = dense(rep.generator_action(k, l, t));
      CHECK((a * c - c * a).cwiseAbs().maxCoeff() < 1e-12);
    }
  });
}

TEST_CASE("property: apply agrees with the sparse generator matrix") {
  gwtest::for_all(32, gwtest::kCases, [](Gen& g, int) {
    const RepSpace rep = random_rep(g);
    const int i = g.integer(1, rep.r() + 1), j = g.integer(1, rep.r() + 1), s = g.integer(1, rep.n());
    Eigen::VectorXcd v(rep.dim());
    for (Eigen::Index k = 0; k < rep.dim(); ++k) v(k) = g.complex(1.0);
    const Eigen::VectorXcd expect = rep.generator_action(i, j, s).cast<gw::cplx>() * v;
    CHECK((rep.apply(i, j, s, v) - expect).norm() < 1e-12);
  });
}

TEST_CASE("property: tau-adjointness of the Shapovalov form") {
  gwtest::for_all(33, gwtest::kCases, [](Gen& g, int) {
    const RepSpace rep = random_rep(g);
    const Eigen::MatrixXd gram = gw::shapovalov_gram(rep);
    const int i = g.integer(1, rep.r()), j = g.integer(i + 1, rep.r() + 1);
    const Eigen::VectorXd u = random_vector(g, rep.dim()), v = random_vector(g, rep.dim());
    const Eigen::VectorXd eu = dense(rep.total_action(i, j)) * u;
    const Eigen::VectorXd ev = dense(rep.total_action(j, i)) * v;
    const double lhs = eu.dot(gram * v), rhs = u.dot(gram * ev);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    // Positive definite on the real span.
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues().minCoeff() > 0.0);
  });
}

TEST_CASE("property: weight spaces partition the basis") {
  gwtest::for_all(34, gwtest::kCases, [](Gen& g, int) {
    const RepSpace rep = random_rep(g);
    std::map<std::vector<int>, int> seen;
    for (Eigen::Index k = 0; k < rep.dim(); ++k) ++seen[rep.sl_weight(k)];
    Eigen::Index total = 0;
    for (const auto& [mu, count] : seen) {
      const auto w = gw::weight_space(rep, mu);
      CHECK(w.dim() == count);
      total += w.dim();
    }
    CHECK(total == rep.dim());
    Eigen::Index product = 1;
    for (const auto& f : rep.factors()) product *= f.dim();
    CHECK(total == product);
  });
}

TEST_CASE("property: singular vectors lie in the weight space and are killed by raising operators") {
  gwtest::for_all(35, gwtest::kCases, [](Gen& g, int) {
    const RepSpace rep = random_rep(g);
    const auto mu = rep.sl_weight(g.integer(0, static_cast<int>(rep.dim()) - 1));
    const gw::Subspace sing = gw::singular_subspace(rep, mu);
    const gw::Subspace wt = gw::weight_space(rep, mu);
    if (sing.dim() == 0) return;
    CHECK((sing.basis.transpose() * sing.basis - Eigen::MatrixXd::Identity(sing.dim(), sing.dim())).norm() < 1e-12);
    const Eigen::MatrixXd proj = wt.basis * wt.basis.transpose();
    CHECK((proj * sing.basis - sing.basis).norm() < 1e-12);
    for (int i = 1; i <= rep.r(); ++i)
      CHECK((dense(rep.total_action(i, i + 1)) * sing.basis).cwiseAbs().maxCoeff() < 1e-12);
  });
}

TEST_CASE("property: N(d) matches the dominant-walk oracle") {
  gwtest::for_all(36, gwtest::kCases, [](Gen& g, int) {
    const gw::ExponentSpec e = g.exponents(3, 6);
    CHECK(gw::multiplicity_N(e) == gwtest::dominant_walks(e.r(), e.n(), e.lambda()));
  });
}

TEST_CASE("property: singular dimensions match the oracle for every weight") {
  gwtest::for_all(37, gwtest::kCases, [](Gen& g, int) {
    const int r = g.integer(1, 3);
    const int n = g.integer(0, r == 1 ? 8 : 4);
    const RepSpace rep = RepSpace::dual_tensor(r, n);
    const auto mu = n == 0 ? std::vector<int>(r, 0) : rep.sl_weight(g.integer(0, static_cast<int>(rep.dim()) - 1));
    CHECK(gw::singular_subspace(rep, mu).dim() == gwtest::dominant_walks(r, n, mu));
  });
}
