#ifndef STABLECUT_DENSE_SOLVER_HPP
#define STABLECUT_DENSE_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "stablecut/instance.hpp"

namespace stablecut {

enum class DenseMode {
  Enumerate,         // every bipartition of the sample
  Seeded,            // only the partition given by a known reference cut
  RandomPartitions,  // `random_partitions` uniformly random bipartitions
};

struct DenseSolverConfig {
  double eps = 1.0;
  double density = 1.0;  // C
  std::size_t sample_size = 8;  // m
  DenseMode mode = DenseMode::Enumerate;
  std::size_t random_partitions = 64;
  /// Required in Seeded mode: the sample's true sides come from this cut.
  std::optional<Cut> reference;
  std::size_t enumerate_cap = 22;
  std::uint64_t seed = 0;
};

/// ceil(2 (C (2 + eps) / eps)^2 ln(2n)).
std::size_t sample_size(double density, double eps, std::size_t n);

/// n exp(-1/2 ((gamma - 1) / (C (gamma + 1)))^2 m), clamped to [0, 1].
/// Vacuous (1) for gamma <= 1.
double failure_bound(double density, double gamma, std::size_t m, std::size_t n);

/// m vertices drawn i.i.d. uniformly with replacement.
std::vector<Vertex> draw_sample(std::size_t n, std::size_t m, std::uint64_t seed);

/// S = {x : w(x, R) > w(x, L)} for a partition of the sample multiset;
/// in_l[i] says whether sample entry i is in L. Ties go to S-bar. Returns
/// nullopt when one side would be empty.
std::optional<Cut> induced_cut(const Instance& inst, std::span<const Vertex> sample,
                               const std::vector<bool>& in_l);

/// Per-vertex sampling failure: some vertex whose sampled weight to its own
/// side of `cut` is at least its sampled weight to the other side.
bool sample_misleads_some_vertex(const Instance& inst, const Cut& cut,
                                 std::span<const Vertex> sample);

struct DenseSolveResult {
  Cut cut;
  double weight = 0.0;
  std::vector<Vertex> sample;
  std::size_t partitions_tried = 0;
  std::size_t candidates = 0;  // non-degenerate induced cuts
};

/// Calls `visit` with every non-degenerate cut the configured partitions
/// induce, in a deterministic order. Returns the sample used.
std::vector<Vertex> for_each_dense_candidate(const Instance& inst, const DenseSolverConfig& cfg,
                                             const std::function<void(const Cut&)>& visit);

/// Heaviest induced cut. Throws SolverFailed when every partition is degenerate.
DenseSolveResult dense_solve(const Instance& inst, const DenseSolverConfig& cfg);

}  // namespace stablecut

#endif  // STABLECUT_DENSE_SOLVER_HPP
