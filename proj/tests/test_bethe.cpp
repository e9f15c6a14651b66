#include <algorithm>
#include <set>

#include "doctest.h"
#include "gw/bethe.hpp"
#include "gw/error.hpp"
#include "oracles.hpp"
#include "prop.hpp"

using gw::cplx;
using gw::MasterSpec;
using gw::RepSpace;
using gw::TuplePoint;
using gwtest::Gen;

namespace {

MasterSpec type_a(int r, std::vector<std::vector<int>> weights, std::vector<cplx> z, std::vector<int> l) {
  MasterSpec s;
  s.r = r;
  s.gram.assign(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
  for (int i = 0; i < r; ++i) {
    s.gram[i][i] = 2;
    if (i + 1 < r) s.gram[i][i + 1] = s.gram[i + 1][i] = -1;
  }
  s.weights = std::move(weights);
  s.z = std::move(z);
  s.l = std::move(l);
  return s;
}

double rel(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

// Factors for rank r drawn from the dual vector, the defining vector and
// (rank one) symmetric powers.
struct RandomRep {
  RepSpace rep;
  std::vector<std::vector<int>> weights;
};

RandomRep random_rep(Gen& g, int r, int n) {
  std::vector<gw::Factor> fs;
  std::vector<std::vector<int>> w;
  for (int s = 0; s < n; ++s) {
    const int kind = g.integer(0, r == 1 ? 2 : 1);
    gw::Factor f = kind == 0 ? gw::Factor::dual_vector(r) : kind == 1 ? gwtest::vector_factor(r)
                                                                     : gw::Factor::sym_power(g.integer(2, 3));
    w.push_back(f.dynkin());
    fs.push_back(std::move(f));
  }
  return {RepSpace(r, std::move(fs)), w};
}

TuplePoint random_t(Gen& g, const std::vector<int>& l) {
  TuplePoint t;
  for (int c : l) {
    t.groups.emplace_back();
    for (int k = 0; k < c; ++k) t.groups.back().push_back(g.complex(2.0));
  }
  return t;
}

long long binom(int n, int k) {
  long long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

TEST_CASE("enumerate_P examples") {
  using Seq = gw::IndexSequence;
  const auto a = gw::enumerate_P({1}, 2);
  CHECK(a.size() == 2);
  CHECK(std::count(a.begin(), a.end(), Seq{{{1}, {}}}) == 1);
  CHECK(std::count(a.begin(), a.end(), Seq{{{}, {1}}}) == 1);

  const auto b = gw::enumerate_P({1, 1}, 1);
  CHECK(b.size() == 2);
  CHECK(std::count(b.begin(), b.end(), Seq{{{1, 2}}}) == 1);
  CHECK(std::count(b.begin(), b.end(), Seq{{{2, 1}}}) == 1);

  // Three distinct index sequences, one per term of the l = (2) example.
  const auto c = gw::enumerate_P({2}, 2);
  CHECK(c.size() == 3);
  CHECK(std::count(c.begin(), c.end(), Seq{{{1, 1}, {}}}) == 1);
  CHECK(std::count(c.begin(), c.end(), Seq{{{1}, {1}}}) == 1);
  CHECK(std::count(c.begin(), c.end(), Seq{{{}, {1, 1}}}) == 1);

  CHECK(gw::enumerate_P({0, 0}, 3).size() == 1);
}

TEST_CASE("property: P(l, n) has the multinomial-times-compositions count and exact color counts") {
  gwtest::for_all(61, gwtest::kCases, [](Gen& g, int) {
    const int r = g.integer(1, 3);
    std::vector<int> l;
    int total = 0;
    for (int i = 0; i < r; ++i) total += l.emplace_back(g.integer(0, 2));
    const int n = g.integer(1, 4);
    const auto all = gw::enumerate_P(l, n);
    long long expect = binom(total + n - 1, n - 1);
    int placed = 0;
    for (int c : l) {
      placed += c;
      expect *= binom(placed, c);
    }
    CHECK(static_cast<long long>(all.size()) == expect);
    std::set<std::vector<std::vector<int>>> distinct;
    for (const auto& s : all) {
      distinct.insert(s.blocks);
      CHECK(static_cast<int>(s.blocks.size()) == n);
      std::vector<int> count(static_cast<std::size_t>(r), 0);
      for (const auto& b : s.blocks)
        for (int c : b) ++count[static_cast<std::size_t>(c - 1)];
      CHECK(count == l);
    }
    CHECK(distinct.size() == all.size());
  });
}

TEST_CASE("weight_function matches the transcribed two-point examples") {
  Gen g(5);
  const std::vector<std::vector<gw::Factor>> pairs = {
      {gwtest::vector_factor(2), gwtest::vector_factor(2)},
      {gw::Factor::dual_vector(2), gw::Factor::dual_vector(2)},
      {gwtest::vector_factor(2), gw::Factor::dual_vector(2)},
      {gwtest::vector_factor(3), gwtest::vector_factor(3)},
  };
  for (const auto& fs : pairs) {
    const int r = fs[0].r;
    const RepSpace rep(r, fs);
    std::vector<int> l(static_cast<std::size_t>(r), 0);
    l[0] = l[1] = 1;
    for (int k = 0; k < 20; ++k) {
      const std::vector<cplx> z{g.complex(2.0), g.complex(2.0)};
      const cplx t1 = g.complex(2.0), t2 = g.complex(2.0);
      MasterSpec s = type_a(r, {fs[0].dynkin(), fs[1].dynkin()}, z, l);
      TuplePoint t;
      t.groups.assign(static_cast<std::size_t>(r), {});
      t.groups[0] = {t1};
      t.groups[1] = {t2};
      const auto w = gw::weight_function(rep, s, t);
      CHECK(rel(w.coords, gwtest::paper_weight_l11(rep, t1, t2, z[0], z[1])) <= 1e-12);
    }
  }
  for (const auto& rep : {RepSpace::sym_tensor({2, 3}), RepSpace::sym_tensor({1, 1}),
                          RepSpace(2, {gwtest::vector_factor(2), gw::Factor::dual_vector(2)})}) {
    const int r = rep.r();
    std::vector<int> l(static_cast<std::size_t>(r), 0);
    l[0] = 2;
    std::vector<std::vector<int>> weights;
    for (const auto& f : rep.factors()) weights.push_back(f.dynkin());
    for (int k = 0; k < 20; ++k) {
      const std::vector<cplx> z{g.complex(2.0), g.complex(2.0)};
      const cplx t1 = g.complex(2.0), t2 = g.complex(2.0);
      MasterSpec s = type_a(r, weights, z, l);
      TuplePoint t;
      t.groups.assign(static_cast<std::size_t>(r), {});
      t.groups[0] = {t1, t2};
      const auto w = gw::weight_function(rep, s, t);
      CHECK(rel(w.coords, gwtest::paper_weight_l2(rep, t1, t2, z[0], z[1])) <= 1e-12);
    }
  }
}

TEST_CASE("weight_function: trivial l, collisions, caps") {
  MasterSpec z3 = type_a(2, {{0, 1}, {0, 1}, {0, 1}}, {0.0, 1.0, 2.0}, {0, 0});
  const RepSpace rep = RepSpace::dual_tensor(2, 3);
  const auto v = gw::weight_function(rep, z3, TuplePoint{{{}, {}}});
  CHECK(rel(v.coords, rep.highest_weight_vector().cast<cplx>()) == 0.0);
  CHECK(gw::is_singular(v, rep) == 0.0);

  MasterSpec worked = gw::spec_from_exponents({{1, 2}}, {0.0, 1.0});
  try {
    gw::weight_function(worked, TuplePoint{{{cplx(1.0)}}});
    FAIL("expected Collision");
  } catch (const gw::Error& e) {
    CHECK(e.kind() == gw::ErrorKind::Collision);
  }
  MasterSpec big = type_a(1, std::vector<std::vector<int>>(7, {1}), {0., 1., 2., 3., 4., 5., 6.}, {3});
  try {
    gw::weight_function(big, TuplePoint{{{cplx(0.5), cplx(1.5), cplx(2.5)}}});
    FAIL("expected DimensionCap");
  } catch (const gw::Error& e) {
    CHECK(e.kind() == gw::ErrorKind::DimensionCap);
  }
}

TEST_CASE("is_singular examples") {
  const MasterSpec worked = gw::spec_from_exponents({{1, 2}}, {0.0, 1.0});
  const RepSpace rep = gw::rep_for_spec(worked);
  const auto w = gw::weight_function(worked, TuplePoint{{{cplx(0.5)}}});
  CHECK(gw::is_singular(w, rep) <= 1e-10);
  // Away from the critical point the vector is not singular.
  Gen g(8);
  int large = 0;
  for (int k = 0; k < 20; ++k) large += gw::is_singular(gw::weight_function(worked, TuplePoint{{{g.complex(2.0)}}}), rep) > 1e-3;
  CHECK(large == 20);
  gw::BetheVector zero{Eigen::VectorXcd::Zero(4), {0}};
  CHECK_THROWS_AS(gw::is_singular(zero, rep), gw::Error);
}

TEST_CASE("bethe_basis_check examples") {
  const MasterSpec s = gw::spec_from_exponents({{2, 3}}, {-3.0, -1.0, 1.0, 3.0});
  const RepSpace rep = gw::rep_for_spec(s);
  gw::SolveStrategy st;
  st.n_seeds = 600;
  const auto sol = gw::solve_all(s, st);
  REQUIRE(sol.orbits.size() == 2);
  auto rep2 = gw::bethe_basis_check(rep, s, sol.orbits);
  CHECK(rep2.rank == 2);
  CHECK(rep2.sing_dim == 2);
  CHECK(rep2.columns == 2);
  CHECK(rep2.pass);
  std::vector<gw::CriticalOrbit> dup = sol.orbits;
  dup.push_back(sol.orbits[0]);
  const auto rep3 = gw::bethe_basis_check(rep, s, dup);
  CHECK(rep3.rank == 2);
  CHECK(rep3.pass);
  const std::vector<gw::CriticalOrbit> one(sol.orbits.begin(), sol.orbits.begin() + 1);
  const auto rep1 = gw::bethe_basis_check(rep, s, one);
  CHECK(rep1.rank == 1);
  CHECK(!rep1.pass);

  const MasterSpec worked = gw::spec_from_exponents({{1, 2}}, {0.0, 1.0});
  const auto w = gw::bethe_basis_check(gw::rep_for_spec(worked), worked, gw::solve_all(worked, st).orbits);
  CHECK(w.rank == 1);
  CHECK(w.pass);
}

TEST_CASE("property: weight_function agrees with the naive double sum (total l <= 3, n <= 3)") {
  gwtest::for_all(62, gwtest::kCases, [](Gen& g, int) {
    const int r = g.integer(1, 3);
    const int n = g.integer(1, 3);
    std::vector<int> l(static_cast<std::size_t>(r), 0);
    const int total = g.integer(0, 3);
    for (int k = 0; k < total; ++k) ++l[static_cast<std::size_t>(g.integer(0, r - 1))];
    const RandomRep rr = random_rep(g, r, n);
    std::vector<cplx> z;
    for (int s = 0; s < n; ++s) z.push_back(g.complex(2.0));
    const MasterSpec s = type_a(r, rr.weights, z, l);
    const TuplePoint t = random_t(g, l);
    const auto w = gw::weight_function(rr.rep, s, t);
    CHECK(rel(w.coords, gwtest::naive_weight_function(rr.rep, s, t)) <= 1e-12);
  });
}

TEST_CASE("property: weight_function is symmetric within colors and supported on its weight") {
  gwtest::for_all(63, gwtest::kCases, [](Gen& g, int) {
    const int r = g.integer(1, 2);
    const int n = g.integer(1, 4);
    std::vector<int> l(static_cast<std::size_t>(r), 0);
    const int total = g.integer(1, 4);
    for (int k = 0; k < total; ++k) ++l[static_cast<std::size_t>(g.integer(0, r - 1))];
    const RandomRep rr = random_rep(g, r, n);
    std::vector<cplx> z;
    for (int s = 0; s < n; ++s) z.push_back(g.complex(2.0));
    const MasterSpec s = type_a(r, rr.weights, z, l);
    TuplePoint t = random_t(g, l);
    const auto w = gw::weight_function(rr.rep, s, t);
    for (auto& grp : t.groups) std::shuffle(grp.begin(), grp.end(), g.engine());
    const auto p = gw::weight_function(rr.rep, s, t);
    CHECK((p.coords - w.coords).norm() <= 1e-10 * std::max(1.0, w.coords.norm()));
    for (Eigen::Index k = 0; k < rr.rep.dim(); ++k)
      if (rr.rep.sl_weight(k) != w.weight) CHECK(w.coords(k) == cplx(0.0));
  });
}

TEST_CASE("property: for real z, conjugating t conjugates the weight function") {
  gwtest::for_all(64, gwtest::kCases, [](Gen& g, int) {
    const int r = g.integer(1, 2);
    const int n = g.integer(1, 4);
    std::vector<int> l(static_cast<std::size_t>(r), 0);
    const int total = g.integer(1, 4);
    for (int k = 0; k < total; ++k) ++l[static_cast<std::size_t>(g.integer(0, r - 1))];
    const RandomRep rr = random_rep(g, r, n);
    std::vector<cplx> z;
    for (double v : g.spread_reals(n, 3.0, 0.2)) z.emplace_back(v);
    const MasterSpec s = type_a(r, rr.weights, z, l);
    const TuplePoint t = random_t(g, l);
    const auto w = gw::weight_function(rr.rep, s, t);
    const auto c = gw::weight_function(rr.rep, s, t.conj());
    CHECK((c.coords - w.coords.conjugate()).norm() <= 1e-12 * std::max(1.0, w.coords.norm()));
  });
}

TEST_CASE("property: Bethe vectors of critical points are singular") {
  gwtest::for_all(65, gwtest::kCases, [](Gen& g, int i) {
    const gw::ExponentSpec e = g.exponents(2, 4);
    std::vector<cplx> z;
    for (double v : g.spread_reals(e.n(), 3.0, 0.3)) z.emplace_back(v);
    const MasterSpec s = gw::spec_from_exponents(e, z);
    gw::SolveStrategy st;
    st.n_seeds = 300;
    st.rng_seed = static_cast<std::uint64_t>(i) + 3;
    const RepSpace rep = gw::rep_for_spec(s);
    for (const auto& o : gw::solve_all(s, st).orbits) CHECK(gw::is_singular(gw::weight_function(rep, s, o.rep), rep) <= 1e-9);
  });
}
