#include "gw/solver.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <thread>

#include "gw/error.hpp"
#include "gw/rep.hpp"

namespace gw {

namespace {

constexpr int kMaxIters = 100;
constexpr int kMaxHalvings = 30;
constexpr std::size_t kBatch = 64;

double sup_norm(const Eigen::VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

double data_scale(const MasterSpec& spec) {
  double m = 0.0;
  for (auto v : spec.z) m = std::max(m, std::abs(v));
  return 1.0 + m;
}

bool less_point(cplx a, cplx b) {
  const double tol = 1e-9 * (1.0 + std::max(std::abs(a), std::abs(b)));
  if (std::abs(a.real() - b.real()) > tol) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Smallest t such that the bipartite graph {(i, j) : |a_i - b_j| <= t} has a
// perfect matching.
double bottleneck_match(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const std::size_t m = a.size();
  if (m == 0) return 0.0;
  std::vector<double> cand;
  for (auto x : a)
    for (auto y : b) cand.push_back(std::abs(x - y));
  std::sort(cand.begin(), cand.end());
  auto feasible = [&](double thr) {
    std::vector<int> match(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<char> seen(m, 0);
      // Kuhn's augmenting path search, recursive on a tiny graph.
      auto augment = [&](auto&& self, std::size_t u) -> bool {
        for (std::size_t v = 0; v < m; ++v) {
          if (seen[v] || std::abs(a[u] - b[v]) > thr) continue;
          seen[v] = 1;
          if (match[v] < 0 || self(self, static_cast<std::size_t>(match[v]))) {
            match[v] = static_cast<int>(u);
            return true;
          }
        }
        return false;
      };
      if (!augment(augment, i)) return false;
    }
    return true;
  };
  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(cand[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return cand[lo];
}

// mt19937_64 with a portable mapping to [0, 1).
class SeedRng {
 public:
  explicit SeedRng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * uniform() - 1.0; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

 private:
  std::mt19937_64 eng_;
};

std::vector<TuplePoint> make_seeds(const MasterSpec& spec, const SolveStrategy& strategy) {
  SeedRng rng(strategy.rng_seed);
  cplx centroid = 0.0;
  for (auto v : spec.z) centroid += v;
  if (spec.n() > 0) centroid /= static_cast<double>(spec.n());
  const double radius = strategy.box_scale * data_scale(spec);

  // Candidate real positions interlacing the sorted real parts of z.
  std::vector<double> xs;
  for (auto v : spec.z) xs.push_back(v.real());
  std::sort(xs.begin(), xs.end());
  std::vector<std::pair<double, double>> slots;  // (center, half width)
  if (xs.empty()) {
    slots.emplace_back(centroid.real(), 0.5 * radius);
  } else {
    const double outer = std::max(0.5, (xs.back() - xs.front()) / std::max<double>(1.0, static_cast<double>(xs.size())));
    slots.emplace_back(xs.front() - outer, 0.5 * outer);
    for (std::size_t k = 1; k < xs.size(); ++k) {
      const double gap = xs[k] - xs[k - 1];
      if (gap > 1e-9) slots.emplace_back(0.5 * (xs[k] + xs[k - 1]), 0.25 * gap);
    }
    slots.emplace_back(xs.back() + outer, 0.5 * outer);
  }

  // Seeds cycle through three families: uniform in the box, near-real points
  // spread over the interlacing slots, and conjugate-symmetric tuples in which
  // coordinates are paired as c +- i h with h spread over several scales.
  std::vector<TuplePoint> seeds(static_cast<std::size_t>(std::max(0, strategy.n_seeds)));
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    TuplePoint& t = seeds[k];
    const int family = static_cast<int>(k % 3);
    for (int i = 0; i < spec.r; ++i) {
      std::vector<cplx> g;
      const int li = spec.l[i];
      if (family == 0) {
        for (int j = 0; j < li; ++j)
          g.emplace_back(centroid.real() + radius * rng.symmetric(), centroid.imag() + 0.5 * radius * rng.symmetric());
      } else {
        int j = 0;
        while (j < li) {
          const auto [c, w] = slots[rng.index(slots.size())];
          const double x = c + w * rng.symmetric();
          if (family == 2 && j + 1 < li && rng.uniform() < 0.5) {
            const double h = w * std::pow(10.0, -2.0 + 2.0 * rng.uniform());
            g.emplace_back(x, h);
            g.emplace_back(x, -h);
            j += 2;
          } else {
            g.emplace_back(x, 1e-3 * w * rng.symmetric());
            ++j;
          }
        }
      }
      t.groups.push_back(std::move(g));
    }
  }
  return seeds;
}

// Each equation is multiplied by its t - z denominators and by its
// differences with other colors. The zero set off the collision locus is
// unchanged, while far from the data the scaled system grows like a
// polynomial instead of decaying, so Newton no longer drifts to infinity.
// Same-color differences are left out: clearing them creates spurious zeros
// where several coordinates of one color merge.
struct Scaling {
  Eigen::VectorXcd factor;    // S_j
  Eigen::MatrixXcd log_grad;  // d log S_j / d t_m
};

Scaling row_scaling(const MasterSpec& spec, const TuplePoint& t) {
  const int total = spec.total_l();
  Scaling sc{Eigen::VectorXcd::Ones(total), Eigen::MatrixXcd::Zero(total, total)};
  std::vector<int> offset(static_cast<std::size_t>(spec.r) + 1, 0);
  for (int i = 0; i < spec.r; ++i) offset[i + 1] = offset[i] + spec.l[i];
  for (int i = 0; i < spec.r; ++i)
    for (int j = 0; j < spec.l[i]; ++j) {
      const int row = offset[i] + j;
      const cplx tj = t.groups[i][j];
      for (int s = 0; s < spec.n(); ++s)
        if (spec.weights[s][i] != 0) {
          sc.factor(row) *= tj - spec.z[s];
          sc.log_grad(row, row) += 1.0 / (tj - spec.z[s]);
        }
      for (int k = 0; k < spec.r; ++k) {
        if (k == i || spec.gram[i][k] == 0) continue;
        for (int s = 0; s < spec.l[k]; ++s) {
          const cplx inv = 1.0 / (tj - t.groups[k][s]);
          sc.factor(row) *= tj - t.groups[k][s];
          sc.log_grad(row, row) += inv;
          sc.log_grad(row, offset[k] + s) -= inv;
        }
      }
    }
  return sc;
}

Eigen::VectorXcd scaled_residual(const MasterSpec& spec, const TuplePoint& t, const Eigen::VectorXcd& f) {
  return row_scaling(spec, t).factor.cwiseProduct(f);
}

Eigen::MatrixXcd scaled_jacobian(const MasterSpec& spec, const TuplePoint& t, const Eigen::VectorXcd& f) {
  const Scaling sc = row_scaling(spec, t);
  Eigen::MatrixXcd j = bae_jacobian(spec, t);
  for (Eigen::Index r = 0; r < j.rows(); ++r) j.row(r) = sc.factor(r) * (j.row(r) + f(r) * sc.log_grad.row(r));
  return j;
}

std::optional<CriticalOrbit> try_seed(const MasterSpec& spec, const TuplePoint& seed) {
  try {
    return newton_polish(spec, seed);
  } catch (const Error&) {
    return std::nullopt;
  }
}

bool lex_less(const TuplePoint& a, const TuplePoint& b) {
  const auto fa = a.flat(), fb = b.flat();
  for (std::size_t k = 0; k < fa.size(); ++k) {
    if (fa[k].real() != fb[k].real()) return fa[k].real() < fb[k].real();
    if (fa[k].imag() != fb[k].imag()) return fa[k].imag() < fb[k].imag();
  }
  return false;
}

}  // namespace

TuplePoint canonical_form(const TuplePoint& t) {
  TuplePoint c = t;
  for (auto& g : c.groups) std::stable_sort(g.begin(), g.end(), less_point);
  return c;
}

double orbit_distance(const TuplePoint& a, const TuplePoint& b) {
  if (a.groups.size() != b.groups.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.groups.size(); ++i) {
    if (a.groups[i].size() != b.groups[i].size()) return std::numeric_limits<double>::infinity();
    d = std::max(d, bottleneck_match(a.groups[i], b.groups[i]));
  }
  return d;
}

CriticalOrbit newton_polish(const MasterSpec& spec, const TuplePoint& t0) {
  check_collision_free(spec, t0);
  const double bound = 1e4 * data_scale(spec);
  auto admissible = [&](const TuplePoint& t) {
    for (const auto& g : t.groups)
      for (auto v : g)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > bound) return false;
    return min_pole_distance(spec, t) >= collision_tol(spec, t);
  };
  TuplePoint t = t0;
  Eigen::VectorXcd f = bae_residual(spec, t);
  Eigen::VectorXcd g = scaled_residual(spec, t, f);
  for (int it = 0; it <= kMaxIters; ++it) {
    const double fn = sup_norm(f);
    if (fn <= kSolveTol) return CriticalOrbit{canonical_form(t), fn, it};
    if (it == kMaxIters) break;
    const Eigen::VectorXcd delta = scaled_jacobian(spec, t, f).partialPivLu().solve(-g);
    if (!delta.allFinite()) throw Error(ErrorKind::NoConvergence, "singular Jacobian");
    const auto x = t.flat();
    double alpha = 1.0;
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings && !accepted; ++h, alpha *= 0.5) {
      std::vector<cplx> y(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] + alpha * delta(static_cast<Eigen::Index>(k));
      TuplePoint cand = TuplePoint::from_flat(y, spec.l);
      if (!admissible(cand)) continue;
      Eigen::VectorXcd fc = bae_residual(spec, cand);
      Eigen::VectorXcd gc = scaled_residual(spec, cand, fc);
      if (gc.norm() < g.norm() || fc.norm() < f.norm()) {
        t = std::move(cand);
        f = std::move(fc);
        g = std::move(gc);
        accepted = true;
      }
    }
    if (!accepted) throw Error(ErrorKind::NoConvergence, "line search failed");
  }
  throw Error(ErrorKind::NoConvergence, "iteration limit reached");
}

SolveReport solve_all(const MasterSpec& spec, const SolveStrategy& strategy, int target) {
  spec.validate();
  SolveReport report;
  if (target == -2) target = spec.d.empty() ? -1 : multiplicity_N(ExponentSpec{spec.d});
  report.target_count = target;
  if (spec.total_l() == 0) {
    CriticalOrbit empty;
    empty.rep.groups.assign(static_cast<std::size_t>(spec.r), {});
    report.orbits.push_back(empty);
    return report;
  }
  const std::vector<TuplePoint> seeds = make_seeds(spec, strategy);
  int jobs = strategy.jobs > 0 ? strategy.jobs : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, jobs);

  int since_new = 0;
  bool done = false;
  for (std::size_t start = 0; start < seeds.size() && !done; start += kBatch) {
    const std::size_t end = std::min(seeds.size(), start + kBatch);
    std::vector<std::optional<CriticalOrbit>> results(end - start);
    std::atomic<std::size_t> next{start};
    auto work = [&] {
      for (std::size_t k = next++; k < end; k = next++) results[k - start] = try_seed(spec, seeds[k]);
    };
    std::vector<std::thread> pool;
    const int workers = std::min<int>(jobs, static_cast<int>(end - start));
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    // Merge strictly in seed order so the report does not depend on jobs.
    for (std::size_t k = start; k < end; ++k) {
      report.seeds_tried = static_cast<int>(k) + 1;
      const auto& res = results[k - start];
      bool fresh = false;
      if (!res) {
        ++report.failures;
      } else {
        fresh = std::none_of(report.orbits.begin(), report.orbits.end(),
                             [&](const CriticalOrbit& o) { return orbit_distance(o.rep, res->rep) <= kDedupeTol; });
        if (fresh) report.orbits.push_back(*res);
      }
      since_new = fresh ? 0 : since_new + 1;
      const bool settled = target >= 0 ? static_cast<int>(report.orbits.size()) >= target && since_new >= strategy.settle_seeds
                                       : since_new >= strategy.futile_seeds;
      if (settled) {
        done = true;
        break;
      }
    }
  }
  std::sort(report.orbits.begin(), report.orbits.end(),
            [](const CriticalOrbit& a, const CriticalOrbit& b) { return lex_less(a.rep, b.rep); });
  return report;
}

std::vector<bool> conjugation_check(const SolveReport& report, const MasterSpec& spec) {
  for (auto v : spec.z)
    if (v.imag() != 0.0) throw Error(ErrorKind::NotRealData, "conjugation check needs real z");
  std::vector<bool> out;
  for (const auto& o : report.orbits) out.push_back(orbit_distance(o.rep.conj(), o.rep) <= kDedupeTol);
  return out;
}

std::vector<bool> reality_check(const SolveReport& report, const MasterSpec& spec) {
  std::vector<bool> out;
  for (const auto& o : report.orbits) out.push_back(is_real_space(fundamental_op_typeA(spec, o.rep), 1e-8));
  return out;
}

double wronskian_roundtrip_error(const MasterSpec& spec, const TuplePoint& t) {
  if (!spec.is_type_a() || !spec.all_last_fundamental())
    throw Error(ErrorKind::Unsupported, "the Wronskian round trip needs a tensor power of the last fundamental weight");
  // Largest exponent d_{r+1} = n - l_r + r, which bounds the kernel degrees.
  const int top = spec.d.empty() ? spec.n() - spec.l.back() + spec.r : spec.d.back();
  const std::vector<Poly> kernel = polynomial_kernel(fundamental_op_typeA(spec, t), top);
  if (static_cast<int>(kernel.size()) != spec.r + 1) return std::numeric_limits<double>::infinity();
  const Poly target = Poly::from_roots(spec.z);
  return coeff_distance(monic_wronskian(kernel), target) / target.max_abs_coeff();
}

}  // namespace gw
