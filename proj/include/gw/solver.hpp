#pragma once

#include <cstdint>
#include <vector>

#include "gw/master.hpp"

namespace gw {

inline constexpr double kSolveTol = 1e-11;
inline constexpr double kDedupeTol = 1e-7;

struct CriticalOrbit {
  TuplePoint rep;
  double residual_norm = 0.0;
  int newton_iters = 0;
};

struct SolveReport {
  std::vector<CriticalOrbit> orbits;
  int target_count = -1;
  int seeds_tried = 0;
  int failures = 0;
};

struct SolveStrategy {
  int n_seeds = 2000;
  std::uint64_t rng_seed = 1;
  double box_scale = 1.0;
  /// Worker threads; 0 means hardware concurrency.
  int jobs = 0;
  /// Seeds without a new orbit required after reaching the target.
  int settle_seeds = 200;
  /// Seeds without a new orbit after which an untargeted run stops.
  int futile_seeds = 400;
};

/// Damped Newton on the Bethe ansatz residual. Throws NoConvergence or Collision.
CriticalOrbit newton_polish(const MasterSpec& spec, const TuplePoint& t0);

/// Sorts each group by real part, breaking near-ties by imaginary part.
TuplePoint canonical_form(const TuplePoint& t);
/// Sup-norm distance between two tuples, minimized over within-group
/// permutations.
double orbit_distance(const TuplePoint& a, const TuplePoint& b);

/// Multi-start search for all orbits. target < 0 means: use N(d) when the
/// spec carries exponents, otherwise unknown.
SolveReport solve_all(const MasterSpec& spec, const SolveStrategy& strategy, int target = -2);

/// Per orbit: the conjugate tuple lies in the same orbit. Throws NotRealData.
std::vector<bool> conjugation_check(const SolveReport& report, const MasterSpec& spec);
/// Per orbit: the fundamental operator has real coefficients at tol 1e-8.
std::vector<bool> reality_check(const SolveReport& report, const MasterSpec& spec);

/// sup |W - T| / sup |T| where W is the monic Wronskian of the polynomial
/// kernel of D_t and T = prod (x - z_s). Tensor powers of the last
/// fundamental weight only; throws Unsupported otherwise.
double wronskian_roundtrip_error(const MasterSpec& spec, const TuplePoint& t);

}  // namespace gw
