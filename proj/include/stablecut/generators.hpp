#ifndef STABLECUT_GENERATORS_HPP
#define STABLECUT_GENERATORS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "stablecut/instance.hpp"

namespace stablecut {

/// Properties a generator claims for its output. Unset fields make no claim.
struct ClaimedProperties {
  std::optional<double> gamma;        // subset-level stability of the planted cut
  std::optional<double> gamma_local;  // per-vertex stability of the planted cut
  std::optional<double> alpha;
  bool oracle_verified = false;
  /// Generator draws that were rejected before this output.
  std::size_t rejected = 0;
};

struct PlantedInstance {
  Instance instance;
  Cut planted_cut;
  std::string family;
  ClaimedProperties claimed;
  std::uint64_t seed = 0;
};

/// Largest n for which gen_stable_bipartite_noise verifies subset stability.
inline constexpr std::size_t kNoiseVerifyCap = 20;

/// Balanced random split; cross pairs get weight 1 with probability p,
/// same-side pairs with probability q. Disconnected draws are redrawn.
PlantedInstance gen_planted_partition(std::size_t n, double p, double q, std::uint64_t seed);

/// Balanced split with cross weights in [1, 2] and small same-side noise.
/// Every vertex satisfies xi(x) >= gamma_target * iota(x) by construction; for
/// n <= kNoiseVerifyCap the draw is repeated until the oracle confirms
/// cut_stability_gamma >= gamma_target. gamma_target may be +inf.
PlantedInstance gen_stable_bipartite_noise(std::size_t n, double gamma_target,
                                           std::uint64_t seed);

/// Two clusters of n/2 points in [-1/2, 1/2]^dim, centers `separation` apart
/// along the first axis; weights are Euclidean distances.
PlantedInstance gen_euclidean_metric(std::size_t n, std::size_t dim, double separation,
                                     std::uint64_t seed);

/// Metric on L = {l_1..l_2k}, R = {r_1..r_2k} (k = n_pairs): distance 1 within
/// a side except w(l_{2i-1}, l_{2i}) = w(r_{2i-1}, r_{2i}) = 2, distance 3
/// across except w(l_i, r_i) = 2. Vertices 0..2k-1 are L.
PlantedInstance gen_tightness_example(std::size_t n_pairs);

/// Weight 1 on the perfect matching {2i, 2i+1}, eps on every other pair.
Instance gen_matching_epsilon(std::size_t n_pairs, double eps);

/// Bipartite on {a_i} and {b_j}: w(a_i, b_j) = 1 if i = j, eps otherwise.
/// Vertices 0..n_pairs-1 are the a side.
PlantedInstance gen_infinite_stable_not_distinguished(std::size_t n_pairs, double eps);

}  // namespace stablecut

#endif  // STABLECUT_GENERATORS_HPP
