#ifndef STABLECUT_STABLE_SOLVER_HPP
#define STABLECUT_STABLE_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stablecut/instance.hpp"
#include "stablecut/rng.hpp"

namespace stablecut {

enum class WitnessKind {
  HeavyEdgePair,    // warm-up: two cut edges sharing an endpoint
  T1IncidentPair,   // two heavy (T1) edges share a vertex
  T2Pair,           // a T2 edge next to a T1 edge
  CommonNeighborPair,
};

std::string_view to_string(WitnessKind kind);

/// A pair of current vertices claimed to lie on the same side of the maximum cut.
struct MergeWitness {
  WitnessKind kind = WitnessKind::HeavyEdgePair;
  std::pair<Vertex, Vertex> pair;
  /// The edges that triggered the claim: for HeavyEdgePair / T1 the two cut
  /// edges, for T2 the T2 edge followed by its T1 edge. Empty for
  /// CommonNeighborPair.
  std::vector<std::pair<Vertex, Vertex>> edges;
  /// CommonNeighborPair: n(u, v) and the threshold 2/(g+1)^2 w^(u) w^(v).
  double value = 0.0;
  double threshold = 0.0;
};

/// sqrt(8n + 4) + 1.
double sqrt_stability_threshold(std::size_t n);

/// Warm-up pair finder, correct on 2n-stable instances.
MergeWitness find_same_side_pair_2n(const Instance& inst);

/// Pair finder for gamma > sqrt(8n + 4) + 1 (gamma may be +inf). Throws
/// Precondition below the threshold and InvariantViolation when no pair
/// qualifies, which cannot happen on a gamma-stable input.
MergeWitness find_same_side_pair_sqrt(const Instance& inst, double gamma);

struct MergeSolveResult {
  Cut cut;
  double weight = 0.0;
  std::vector<MergeWitness> witnesses;  // one per merge round, in order
};

/// Repeated pair finding and merging down to two vertices. With no gamma the
/// threshold for the current size (plus 1e-6) is used in every round.
MergeSolveResult sqrt_stable_solve(const Instance& inst, std::optional<double> gamma = std::nullopt);

MergeSolveResult warmup_2n_solve(const Instance& inst);

/// One run of the randomized spanning-tree process: grow a tree from vertex 0
/// by weight-proportional boundary edges, then 2-color it.
Cut spanning_tree_sample(const Instance& inst, Rng& rng);

struct SpanningTreeResult {
  Cut cut;
  double weight = 0.0;
  std::size_t repetitions = 0;
};

/// Heaviest of `repetitions` independent runs; run k uses Rng::stream(seed, k).
SpanningTreeResult spanning_tree_solve(const Instance& inst, std::uint64_t seed,
                                       std::size_t repetitions);

/// (gamma / (gamma + 1))^(n - 1); 1 for gamma = +inf.
double spanning_tree_success_bound(double gamma, std::size_t n);

/// ceil(3 / spanning_tree_success_bound(gamma, n)).
std::size_t default_spanning_tree_repetitions(double gamma, std::size_t n);

}  // namespace stablecut

#endif  // STABLECUT_STABLE_SOLVER_HPP
