#ifndef STABLECUT_METRIC_SOLVER_HPP
#define STABLECUT_METRIC_SOLVER_HPP

#include <optional>
#include <vector>

#include "stablecut/dense_solver.hpp"
#include "stablecut/instance.hpp"

namespace stablecut {

struct NormalizedInstance {
  Instance instance;
  double scale = 1.0;  // new weights = scale * old weights
};

/// Rescales so that w(V,V) (ordered pairs) equals 2 n^2.
NormalizedInstance normalize_total_weight(const Instance& inst);

/// Vertex splitting: x is replaced by floor(tau(x)) copies and each pair of
/// copies of distinct x, y gets w(x,y) / (|fiber(x)| |fiber(y)|). Copies of
/// one vertex are contiguous in the split instance.
struct SplitMap {
  Instance original;
  Instance split;
  std::vector<Vertex> pi;            // split vertex -> original vertex
  std::vector<std::size_t> multiplicity;
  std::vector<std::size_t> fiber_start;
};

SplitMap split_instance(const Instance& normalized);

Cut lift_cut(const SplitMap& map, const Cut& cut);

/// Inverse of lift_cut; nullopt if some fiber has copies on both sides.
std::optional<Cut> project_cut(const SplitMap& map, const Cut& split_cut);

/// Majority side per fiber (ties to S-bar), then projected. nullopt if the
/// result is degenerate.
std::optional<Cut> repair_and_project(const SplitMap& map, const Cut& split_cut);

struct MetricDenseResult {
  Cut cut;
  double weight = 0.0;  // on the original instance
  std::size_t split_size = 0;
  std::size_t candidates = 0;
  std::size_t repaired = 0;  // candidates that were not fiber-constant
};

/// Normalize, split, run the dense sampler on the split instance and return
/// the heaviest projected candidate. In Seeded mode the reference cut refers
/// to the original instance and is lifted.
MetricDenseResult metric_dense_solve(const Instance& inst, const DenseSolverConfig& cfg);

/// Closed ball {y : w(c, y) <= r}.
std::vector<bool> closed_ball(const Instance& inst, Vertex center, double radius);

struct Ball {
  Vertex center = 0;
  double radius = 0.0;
};

/// A ball equal to `members`, if there is one.
std::optional<Ball> find_ball(const Instance& inst, const std::vector<bool>& members);

struct BallSolveResult {
  Cut cut;  // S is the ball
  double weight = 0.0;
  Ball ball;
  std::size_t balls_considered = 0;
};

/// Heaviest cut (B(c, r), complement) over all centers and all radii drawn
/// from the distances out of c. Needs a metric instance.
BallSolveResult ball_enumeration_solve(const Instance& inst);

struct CutEdgeBoundCheck {
  bool holds = true;
  /// Pair with the smallest w(x,z) - bound, x on the L side.
  Vertex x = 0;
  Vertex z = 0;
  double weight = 0.0;
  double bound = 0.0;
};

/// Checks w(x,z) >= ((g^2 - 1)/g) w(x,R) / (g|R| + |L|) for every x in L,
/// z in R, with both orientations of the cut taken as (L, R).
CutEdgeBoundCheck cut_edge_lower_bound_check(const Instance& inst, const Cut& cut, double gamma);

}  // namespace stablecut

#endif  // STABLECUT_METRIC_SOLVER_HPP
