#ifndef STABLECUT_ORACLE_HPP
#define STABLECUT_ORACLE_HPP

#include <cstddef>
#include <vector>

#include "stablecut/instance.hpp"

// Exact, exponential-time ground truth for desk-scale instances.
//
// All subset quantities range over nonempty proper subsets A. Every such
// ratio is invariant under A -> complement(A), so the scans only visit the
// 2^(n-1) - 1 subsets that exclude vertex 0, in Gray-code order with O(n)
// incremental updates per step.

namespace stablecut {

inline constexpr std::size_t kMaxCutCap = 28;
inline constexpr std::size_t kSubsetCap = 24;

struct MaxCutResult {
  Cut cut;  // lexicographically smallest optimum with vertex 0 in S
  double weight = 0.0;
  /// Optimal partitions, a cut and its complement counted once.
  std::size_t optimal_count = 0;
};

MaxCutResult brute_force_maxcut(const Instance& inst, std::size_t cap = kMaxCutCap);

/// min over A of xi(A)/iota(A); terms with iota(A) = 0 count as +inf.
double cut_stability_gamma(const Instance& inst, const Cut& cut, std::size_t cap = kSubsetCap);

/// min over vertices of xi(x)/iota(x), +inf where iota(x) = 0.
double local_stability_gamma(const Instance& inst, const Cut& cut);

/// min over A of (xi(A) - iota(A)) / min(mu(A), mu(A-bar)).
double distinction_alpha(const Instance& inst, const Cut& cut, std::size_t cap = kSubsetCap);

double cheeger_constant(const Instance& inst, std::size_t cap = kSubsetCap);

/// Cheeger constant of an arbitrary symmetric nonnegative matrix whose support
/// may be disconnected (e.g. the cut-edge part of an instance). Subsets with
/// min(mu(A), mu(A-bar)) = 0 are skipped, so isolated vertices are ignored;
/// two components with positive weight give 0.
double cheeger_constant(const Eigen::MatrixXd& weights, std::size_t cap = kSubsetCap);

/// All cuts (canonical orientation, Gray-code discovery order) on which every
/// vertex satisfies xi(x) >= gamma * iota(x).
std::vector<Cut> enumerate_locally_stable_cuts(const Instance& inst, double gamma,
                                               std::size_t cap = kSubsetCap);

struct StabilityReport {
  Cut cut;
  double cut_weight = 0.0;
  double maxcut_weight = 0.0;
  std::size_t optimal_count = 0;
  bool is_maxcut = false;
  bool is_unique_maxcut = false;
  double gamma = 1.0;
  double gamma_local = 1.0;
  double alpha = 0.0;
  double cheeger = 0.0;
};

/// Stability of the instance at its (oracle) maximum cut. For a non-unique
/// optimum gamma is clamped to 1 and alpha to 0.
StabilityReport instance_stability(const Instance& inst, std::size_t cap = kSubsetCap);

/// The same quantities evaluated at a caller-supplied cut.
StabilityReport cut_stability_report(const Instance& inst, const Cut& cut,
                                     std::size_t cap = kSubsetCap);

}  // namespace stablecut

#endif  // STABLECUT_ORACLE_HPP
