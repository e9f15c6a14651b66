#include "gw/bethe.hpp"

#include <algorithm>
#include <numeric>

#include "gw/error.hpp"
#include "gw/linalg.hpp"

namespace gw {

namespace {

// Pairwise summation keeps the result independent of accumulation chunking.
cplx pairwise_sum(std::span<const cplx> v) {
  if (v.size() <= 8) {
    cplx s = 0.0;
    for (cplx x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

void check_distinct(const MasterSpec& spec, const TuplePoint& t) {
  const double tol = collision_tol(spec, t);
  const std::vector<cplx> flat = t.flat();
  for (std::size_t a = 0; a < flat.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b)
      if (std::abs(flat[a] - flat[b]) < tol) throw Error(ErrorKind::Collision, "coinciding weight-function variables");
    for (cplx z : spec.z)
      if (std::abs(flat[a] - z) < tol) throw Error(ErrorKind::Collision, "weight-function variable at a point z");
  }
}

}  // namespace

void visit_index_sequences(const std::vector<int>& l, int n, const std::function<void(const IndexSequence&)>& visit) {
  std::vector<int> word;
  for (std::size_t i = 0; i < l.size(); ++i) word.insert(word.end(), static_cast<std::size_t>(std::max(l[i], 0)), static_cast<int>(i) + 1);
  if (n <= 0) {
    if (word.empty() && n == 0) visit(IndexSequence{});
    return;
  }
  const int len = static_cast<int>(word.size());
  // Block lengths k_1..k_n summing to len, enumerated as cut positions.
  std::vector<int> cuts(static_cast<std::size_t>(n - 1), 0);
  IndexSequence seq;
  seq.blocks.resize(static_cast<std::size_t>(n));
  do {
    for (;;) {
      int start = 0;
      for (int s = 0; s < n; ++s) {
        const int end = s + 1 < n ? cuts[static_cast<std::size_t>(s)] : len;
        seq.blocks[static_cast<std::size_t>(s)].assign(word.begin() + start, word.begin() + end);
        start = end;
      }
      visit(seq);
      // Next nondecreasing cut vector with entries in [0, len].
      int k = n - 2;
      while (k >= 0 && cuts[static_cast<std::size_t>(k)] == len) --k;
      if (k < 0) break;
      const int v = cuts[static_cast<std::size_t>(k)] + 1;
      for (int j = k; j < n - 1; ++j) cuts[static_cast<std::size_t>(j)] = v;
    }
    std::fill(cuts.begin(), cuts.end(), 0);
  } while (std::next_permutation(word.begin(), word.end()));
}

std::vector<IndexSequence> enumerate_P(const std::vector<int>& l, int n) {
  std::vector<IndexSequence> out;
  visit_index_sequences(l, n, [&](const IndexSequence& s) { out.push_back(s); });
  return out;
}

RepSpace rep_for_spec(const MasterSpec& spec) {
  spec.validate();
  if (!spec.is_type_a()) throw Error(ErrorKind::Unsupported, "Bethe vectors are implemented for type A only");
  if (spec.all_last_fundamental()) return RepSpace::dual_tensor(spec.r, spec.n());
  if (spec.r == 1) {
    std::vector<int> ms;
    for (const auto& row : spec.weights) ms.push_back(row[0]);
    return RepSpace::sym_tensor(ms);
  }
  throw Error(ErrorKind::Unsupported, "no representation available for these weights");
}

std::vector<int> bethe_weight(const RepSpace& rep, const MasterSpec& spec) {
  std::vector<int> top;
  for (const auto& f : rep.factors()) top.push_back(f.highest_index);
  std::vector<int> mu = rep.sl_weight(rep.flat_index(top));
  for (int i = 0; i < spec.r; ++i) {
    const int prev = i > 0 ? spec.l[static_cast<std::size_t>(i - 1)] : 0;
    const int next = i + 1 < spec.r ? spec.l[static_cast<std::size_t>(i + 1)] : 0;
    mu[static_cast<std::size_t>(i)] -= 2 * spec.l[static_cast<std::size_t>(i)] - prev - next;
  }
  return mu;
}

BetheVector weight_function(const RepSpace& rep, const MasterSpec& spec, const TuplePoint& t) {
  spec.validate();
  check_shape(spec, t);
  if (rep.r() != spec.r || rep.n() != spec.n()) throw Error(ErrorKind::InvalidSpec, "representation does not match the spec");
  if (spec.total_l() > kMaxBetheVariables || spec.n() > kMaxBetheSlots)
    throw Error(ErrorKind::DimensionCap, "weight function is capped at 8 variables and 6 points");
  check_distinct(spec, t);

  const int n = spec.n();
  BetheVector out;
  out.coords = Eigen::VectorXcd::Zero(rep.dim());
  out.weight = bethe_weight(rep, spec);

  // sigma[i] permutes the labels of color i + 1.
  std::vector<std::vector<int>> sigma(static_cast<std::size_t>(spec.r));
  for (int i = 0; i < spec.r; ++i) {
    sigma[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(spec.l[static_cast<std::size_t>(i)]));
    std::iota(sigma[static_cast<std::size_t>(i)].begin(), sigma[static_cast<std::size_t>(i)].end(), 0);
  }
  std::vector<cplx> terms;

  visit_index_sequences(spec.l, n, [&](const IndexSequence& seq) {
    // E_I v, factor by factor; the rightmost generator acts first.
    std::vector<Eigen::VectorXd> parts;
    for (int s = 0; s < n; ++s) {
      const Factor& f = rep.factors()[static_cast<std::size_t>(s)];
      Eigen::VectorXd u = Eigen::VectorXd::Zero(f.dim());
      u(f.highest_index) = 1.0;
      const auto& blk = seq.blocks[static_cast<std::size_t>(s)];
      for (auto it = blk.rbegin(); it != blk.rend(); ++it) u = f.gen(*it + 1, *it) * u;
      if (u.cwiseAbs().maxCoeff() == 0.0) return;
      parts.push_back(std::move(u));
    }

    // Labels in block-major reading order.
    std::vector<std::vector<std::pair<int, int>>> pos(static_cast<std::size_t>(n));
    std::vector<int> seen(static_cast<std::size_t>(spec.r), 0);
    for (int s = 0; s < n; ++s)
      for (int c : seq.blocks[static_cast<std::size_t>(s)])
        pos[static_cast<std::size_t>(s)].emplace_back(c - 1, seen[static_cast<std::size_t>(c - 1)]++);

    terms.clear();
    for (auto& p : sigma) std::sort(p.begin(), p.end());
    for (;;) {
      cplx w = 1.0;
      for (int s = 0; s < n; ++s) {
        const auto& ps = pos[static_cast<std::size_t>(s)];
        auto var = [&](std::size_t a) {
          const auto [color, label] = ps[a];
          return t.groups[static_cast<std::size_t>(color)]
                         [static_cast<std::size_t>(sigma[static_cast<std::size_t>(color)][static_cast<std::size_t>(label)])];
        };
        for (std::size_t a = 0; a + 1 < ps.size(); ++a) w /= var(a) - var(a + 1);
        if (!ps.empty()) w /= var(ps.size() - 1) - spec.z[static_cast<std::size_t>(s)];
      }
      terms.push_back(w);
      // Odometer over the product of symmetric groups.
      int i = 0;
      while (i < spec.r && !std::next_permutation(sigma[static_cast<std::size_t>(i)].begin(),
                                                   sigma[static_cast<std::size_t>(i)].end()))
        ++i;
      if (i == spec.r) break;
    }
    const cplx scalar = pairwise_sum(terms);

    // Kronecker product of the factor vectors, first factor most significant.
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> support(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s)
      for (Eigen::Index k = 0; k < parts[static_cast<std::size_t>(s)].size(); ++k)
        if (parts[static_cast<std::size_t>(s)](k) != 0.0) support[static_cast<std::size_t>(s)].push_back(static_cast<int>(k));
    std::vector<std::size_t> at(static_cast<std::size_t>(n), 0);
    for (;;) {
      cplx c = scalar;
      for (int s = 0; s < n; ++s) {
        idx[static_cast<std::size_t>(s)] = support[static_cast<std::size_t>(s)][at[static_cast<std::size_t>(s)]];
        c *= parts[static_cast<std::size_t>(s)](idx[static_cast<std::size_t>(s)]);
      }
      out.coords(rep.flat_index(idx)) += c;
      int s = n - 1;
      while (s >= 0 && ++at[static_cast<std::size_t>(s)] == support[static_cast<std::size_t>(s)].size()) {
        at[static_cast<std::size_t>(s)] = 0;
        --s;
      }
      if (s < 0) break;
    }
  });
  return out;
}

BetheVector weight_function(const MasterSpec& spec, const TuplePoint& t) {
  return weight_function(rep_for_spec(spec), spec, t);
}

double is_singular(const BetheVector& v, const RepSpace& rep) {
  const double nv = v.coords.norm();
  if (!(nv > 0.0)) throw Error(ErrorKind::ZeroVector, "vector vanishes");
  double worst = 0.0;
  for (int i = 1; i <= rep.r(); ++i)
    worst = std::max(worst, (rep.total_action(i, i + 1).cast<cplx>() * v.coords).norm() / nv);
  return worst;
}

BasisReport bethe_basis_check(const RepSpace& rep, const MasterSpec& spec, std::span<const CriticalOrbit> orbits) {
  BasisReport out;
  const Subspace sing = singular_subspace(rep, bethe_weight(rep, spec));
  out.sing_dim = static_cast<int>(sing.dim());
  out.columns = static_cast<int>(orbits.size());
  if (!orbits.empty() && sing.dim() > 0) {
    Eigen::MatrixXcd cols(sing.dim(), static_cast<Eigen::Index>(orbits.size()));
    for (std::size_t k = 0; k < orbits.size(); ++k)
      cols.col(static_cast<Eigen::Index>(k)) = sing.basis.transpose().cast<cplx>() * weight_function(rep, spec, orbits[k].rep).coords;
    out.rank = numerical_rank(cols, 1e-8);
  }
  out.pass = out.rank == out.sing_dim;
  return out;
}

}  // namespace gw
