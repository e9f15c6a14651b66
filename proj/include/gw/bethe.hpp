#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "gw/master.hpp"
#include "gw/rep.hpp"
#include "gw/solver.hpp"

namespace gw {

/// blocks[s] lists the colors (1..r) attached to tensor slot s, in order.
struct IndexSequence {
  std::vector<std::vector<int>> blocks;

  bool operator==(const IndexSequence&) const = default;
};

struct BetheVector {
  Eigen::VectorXcd coords;
  /// <weight, H_i>, i = 1..r.
  std::vector<int> weight;
};

inline constexpr int kMaxBetheVariables = 8;
inline constexpr int kMaxBetheSlots = 6;

/// Calls visit once per sequence in P(l, n): every word in the colors with
/// multiplicities l, cut into n consecutive (possibly empty) blocks.
void visit_index_sequences(const std::vector<int>& l, int n, const std::function<void(const IndexSequence&)>& visit);
std::vector<IndexSequence> enumerate_P(const std::vector<int>& l, int n);

/// The representation a type-A spec lives on: tensor power of the last
/// fundamental weight, or Sym^m factors for r = 1. Throws Unsupported.
RepSpace rep_for_spec(const MasterSpec& spec);

/// Weight of the Bethe vectors: the highest weight minus sum_i l_i alpha_i.
std::vector<int> bethe_weight(const RepSpace& rep, const MasterSpec& spec);

/// Universal weight function at (t, spec.z). Throws Collision, DimensionCap.
BetheVector weight_function(const RepSpace& rep, const MasterSpec& spec, const TuplePoint& t);
BetheVector weight_function(const MasterSpec& spec, const TuplePoint& t);

/// max_i |sum_s E^{(s)}_{i,i+1} v| / |v|. Throws ZeroVector.
double is_singular(const BetheVector& v, const RepSpace& rep);

struct BasisReport {
  int columns = 0;
  int rank = 0;
  int sing_dim = 0;
  bool pass = false;
};

/// Projects the Bethe vectors of the orbits onto the singular subspace of
/// their weight and reports the numerical rank (threshold 1e-8 sigma_max).
BasisReport bethe_basis_check(const RepSpace& rep, const MasterSpec& spec, std::span<const CriticalOrbit> orbits);

}  // namespace gw
