#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <vector>

#include "gw/master.hpp"
#include "gw/rep.hpp"

namespace gwtest {

// Multiplicity of the irreducible with sl-weight `mu` (values <mu, H_i>) in
// the n-th tensor power of the dual vector representation of gl_{r+1},
// computed as the number of length-n walks that start at 0, move by weights
// of the representation and never leave the dominant chamber. The dual
// vector representation is minuscule, so this count is the multiplicity.
inline long long dominant_walks(int r, int n, const std::vector<int>& mu) {
  // Weight of e*_k: <-eps_k, H_i> = delta_{i+1,k} - delta_{i,k}.
  std::vector<std::vector<int>> steps;
  for (int k = 1; k <= r + 1; ++k) {
    std::vector<int> w(static_cast<std::size_t>(r), 0);
    for (int i = 1; i <= r; ++i) w[i - 1] = (i + 1 == k) - (i == k);
    steps.push_back(w);
  }
  std::map<std::vector<int>, long long> layer{{std::vector<int>(static_cast<std::size_t>(r), 0), 1}};
  for (int step = 0; step < n; ++step) {
    std::map<std::vector<int>, long long> next;
    for (const auto& [w, count] : layer)
      for (const auto& s : steps) {
        std::vector<int> v = w;
        bool dominant = true;
        for (int i = 0; i < r; ++i) dominant = dominant && (v[i] += s[i]) >= 0;
        if (dominant) next[v] += count;
      }
    layer = std::move(next);
  }
  const auto it = layer.find(mu);
  return it == layer.end() ? 0 : it->second;
}

// The defining representation C^{r+1}: E_{i,j} e_k = delta_{jk} e_i,
// highest weight vector e_1.
inline gw::Factor vector_factor(int r) {
  gw::Factor f;
  f.r = r;
  const int d = r + 1;
  f.gl_highest.assign(static_cast<std::size_t>(d), 0);
  f.gl_highest[0] = 1;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
      m(i - 1, j - 1) = 1.0;
      f.e.push_back(m);
    }
  f.highest_index = 0;
  return f;
}

// Sum over s of E^{(s)}_{i,j} / (x - z_s) as a dense matrix.
inline Eigen::MatrixXcd gaudin_a(const gw::RepSpace& rep, const std::vector<std::complex<double>>& z, int i, int j,
                                 std::complex<double> x, int power = 1) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
  for (int s = 1; s <= rep.n(); ++s)
    a += Eigen::MatrixXcd(rep.generator_action(i, j, s).cast<std::complex<double>>()) /
         std::pow(x - z[static_cast<std::size_t>(s - 1)], power);
  return a;
}

// Coefficients of the rank-one determinant operator, expanded by hand:
// (d - A11)(d - A22) - A21 A12 = d^2 - (A11 + A22) d - A22' + A11 A22 - A21 A12,
// where Aij = sum_s E^{(s)}_{ij} / (x - z_s) and A22' = -sum_s E^{(s)}_{22} / (x - z_s)^2.
inline std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> rank_one_m(const gw::RepSpace& rep,
                                                                const std::vector<std::complex<double>>& z,
                                                                std::complex<double> x) {
  const auto a11 = gaudin_a(rep, z, 1, 1, x), a22 = gaudin_a(rep, z, 2, 2, x);
  const auto a12 = gaudin_a(rep, z, 1, 2, x), a21 = gaudin_a(rep, z, 2, 1, x);
  const auto a22p = -gaudin_a(rep, z, 2, 2, x, 2);
  return {-(a11 + a22), Eigen::MatrixXcd(-a22p + a11 * a22 - a21 * a12)};
}

// Applies E^{(s)}_{i+1,i} for each (i, s) in ops, rightmost first.
inline Eigen::VectorXcd lower(const gw::RepSpace& rep, const std::vector<std::pair<int, int>>& ops, Eigen::VectorXcd v) {
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) v = rep.apply(it->first + 1, it->first, it->second, v);
  return v;
}

// Transcription of the two-point example with one variable of each of the
// colors 1 and 2 (t1 of color 1, t2 of color 2). Each op is (color, slot).
inline Eigen::VectorXcd paper_weight_l11(const gw::RepSpace& rep, std::complex<double> t1, std::complex<double> t2,
                                         std::complex<double> z1, std::complex<double> z2) {
  const Eigen::VectorXcd v = rep.highest_weight_vector().cast<std::complex<double>>();
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(rep.dim());
  w += 1.0 / ((t1 - t2) * (t2 - z1)) * lower(rep, {{1, 1}, {2, 1}}, v);
  w += 1.0 / ((t2 - t1) * (t1 - z1)) * lower(rep, {{2, 1}, {1, 1}}, v);
  w += 1.0 / ((t1 - z1) * (t2 - z2)) * lower(rep, {{1, 1}, {2, 2}}, v);
  w += 1.0 / ((t2 - z1) * (t1 - z2)) * lower(rep, {{2, 1}, {1, 2}}, v);
  w += 1.0 / ((t1 - t2) * (t2 - z2)) * lower(rep, {{1, 2}, {2, 2}}, v);
  w += 1.0 / ((t2 - t1) * (t1 - z2)) * lower(rep, {{2, 2}, {1, 2}}, v);
  return w;
}

// Transcription of the two-point example with two variables of color 1.
inline Eigen::VectorXcd paper_weight_l2(const gw::RepSpace& rep, std::complex<double> t1, std::complex<double> t2,
                                        std::complex<double> z1, std::complex<double> z2) {
  const Eigen::VectorXcd v = rep.highest_weight_vector().cast<std::complex<double>>();
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(rep.dim());
  w += (1.0 / ((t1 - t2) * (t2 - z1)) + 1.0 / ((t2 - t1) * (t1 - z1))) * lower(rep, {{1, 1}, {1, 1}}, v);
  w += (1.0 / ((t1 - z1) * (t2 - z2)) + 1.0 / ((t2 - z1) * (t1 - z2))) * lower(rep, {{1, 1}, {1, 2}}, v);
  w += (1.0 / ((t1 - t2) * (t2 - z2)) + 1.0 / ((t2 - t1) * (t1 - z2))) * lower(rep, {{1, 2}, {1, 2}}, v);
  return w;
}

// Direct transcription of the double sum. Index sequences come from brute
// force over color words and block lengths; the symmetric-group sum runs over
// all bijections from positions to variables that respect colors.
inline Eigen::VectorXcd naive_weight_function(const gw::RepSpace& rep, const gw::MasterSpec& spec,
                                              const gw::TuplePoint& t) {
  using cplx = std::complex<double>;
  const int n = spec.n();
  const int total = spec.total_l();
  std::vector<cplx> vars;
  std::vector<int> var_color;
  for (int i = 0; i < spec.r; ++i)
    for (cplx v : t.groups[static_cast<std::size_t>(i)]) {
      vars.push_back(v);
      var_color.push_back(i + 1);
    }
  const Eigen::VectorXcd top = rep.highest_weight_vector().cast<cplx>();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rep.dim());

  std::vector<int> lens(static_cast<std::size_t>(n), 0);
  auto for_lengths = [&](auto&& self, int s, int left, const std::vector<int>& w) -> void {
    if (s == n - 1) {
      lens[static_cast<std::size_t>(s)] = left;
      // Cut w into blocks.
      std::vector<int> slot_of(static_cast<std::size_t>(total));
      int p = 0;
      for (int b = 0; b < n; ++b)
        for (int k = 0; k < lens[static_cast<std::size_t>(b)]; ++k) slot_of[static_cast<std::size_t>(p++)] = b;
      std::vector<std::pair<int, int>> ops;
      for (int q = 0; q < total; ++q) ops.emplace_back(w[static_cast<std::size_t>(q)], slot_of[static_cast<std::size_t>(q)] + 1);
      // Operators of one slot commute with other slots; within a slot the
      // listed order is kept by lower().
      const Eigen::VectorXcd ev = lower(rep, ops, top);
      if (ev.norm() == 0.0) return;
      std::vector<int> perm(vars.size());
      std::iota(perm.begin(), perm.end(), 0);
      cplx scalar = 0.0;
      do {
        bool ok = true;
        for (int q = 0; q < total; ++q) ok = ok && var_color[static_cast<std::size_t>(perm[static_cast<std::size_t>(q)])] == w[static_cast<std::size_t>(q)];
        if (!ok) continue;
        cplx term = 1.0;
        int q = 0;
        for (int b = 0; b < n; ++b) {
          const int k = lens[static_cast<std::size_t>(b)];
          for (int a = 0; a + 1 < k; ++a)
            term /= vars[static_cast<std::size_t>(perm[static_cast<std::size_t>(q + a)])] -
                    vars[static_cast<std::size_t>(perm[static_cast<std::size_t>(q + a + 1)])];
          if (k > 0) term /= vars[static_cast<std::size_t>(perm[static_cast<std::size_t>(q + k - 1)])] - spec.z[static_cast<std::size_t>(b)];
          q += k;
        }
        scalar += term;
      } while (std::next_permutation(perm.begin(), perm.end()));
      out += scalar * ev;
      return;
    }
    for (int k = 0; k <= left; ++k) {
      lens[static_cast<std::size_t>(s)] = k;
      self(self, s + 1, left - k, w);
    }
  };
  // All color words with the right multiplicities.
  std::vector<int> w(static_cast<std::size_t>(total));
  auto for_words = [&](auto&& self, int q) -> void {
    if (q == total) {
      std::vector<int> count(static_cast<std::size_t>(spec.r), 0);
      for (int c : w) ++count[static_cast<std::size_t>(c - 1)];
      if (count != spec.l) return;
      if (n == 0) {
        if (total == 0) out += top;
        return;
      }
      for_lengths(for_lengths, 0, total, w);
      return;
    }
    for (int c = 1; c <= spec.r; ++c) {
      w[static_cast<std::size_t>(q)] = c;
      self(self, q + 1);
    }
  };
  for_words(for_words, 0);
  return out;
}

}  // namespace gwtest
