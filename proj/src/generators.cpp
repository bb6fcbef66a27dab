#include "stablecut/generators.hpp"

#include <cmath>
#include <numeric>

#include "stablecut/oracle.hpp"
#include "stablecut/rng.hpp"

namespace stablecut {
namespace {

constexpr std::size_t kMaxRedraws = 10000;

/// Random balanced split: a uniformly random floor(n/2)-subset forms S.
std::vector<bool> balanced_split(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  std::vector<bool> side(n, false);
  for (std::size_t i = 0; i < n / 2; ++i) side[order[i]] = true;
  return side;
}

Eigen::MatrixXd zeros(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  return Eigen::MatrixXd::Zero(m, m);
}

}  // namespace

PlantedInstance gen_planted_partition(std::size_t n, double p, double q, std::uint64_t seed) {
  if (n < 4) throw Error(ErrorKind::InvalidParameter, "planted partition needs n >= 4");
  if (!(0.0 <= q && q < p && p <= 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "planted partition needs 0 <= q < p <= 1");
  }
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
    auto side = balanced_split(n, rng);
    auto w = zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double prob = side[i] != side[j] ? p : q;
        if (rng.bernoulli(prob)) w(i, j) = w(j, i) = 1.0;
      }
    }
    if (!support_connected(w)) continue;
    ClaimedProperties claimed;
    claimed.rejected = attempt;
    if (q == 0.0) claimed.gamma = kInf;
    return PlantedInstance{Instance(std::move(w)), Cut(std::move(side)), "planted-partition",
                           claimed, seed};
  }
  throw Error(ErrorKind::InvalidParameter, "could not draw a connected planted partition");
}

PlantedInstance gen_stable_bipartite_noise(std::size_t n, double gamma_target,
                                           std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::InvalidParameter, "noise family needs n >= 2");
  if (!(gamma_target >= 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "gamma_target must be >= 1");
  }
  Rng rng(seed);
  // Every vertex has at least floor(n/2) cross neighbours of weight >= 1 and
  // at most ceil(n/2)-1 same-side neighbours, so this noise ceiling makes
  // each vertex gamma_target-locally stable.
  const double cross_min = static_cast<double>(n / 2);
  const double same_max = static_cast<double>((n + 1) / 2 - 1);
  double ceiling = (same_max == 0.0 || std::isinf(gamma_target))
                       ? 0.0
                       : cross_min / (gamma_target * same_max);

  for (std::size_t attempt = 0;; ++attempt) {
    auto side = balanced_split(n, rng);
    auto w = zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        w(i, j) = w(j, i) = side[i] != side[j] ? rng.uniform(1.0, 2.0)
                                               : rng.uniform(0.0, ceiling);
      }
    }
    Instance inst(std::move(w));
    Cut cut(std::move(side));
    ClaimedProperties claimed;
    claimed.gamma_local = gamma_target;
    claimed.rejected = attempt;
    if (n > kNoiseVerifyCap) {
      return PlantedInstance{std::move(inst), std::move(cut), "stable-bipartite-noise", claimed,
                             seed};
    }
    const double measured = cut_stability_gamma(inst, cut);
    if (approx_geq(measured, gamma_target)) {
      claimed.gamma = gamma_target;
      claimed.oracle_verified = true;
      return PlantedInstance{std::move(inst), std::move(cut), "stable-bipartite-noise", claimed,
                             seed};
    }
    // Shrink the noise geometrically; at zero noise the draw is bipartite and
    // always accepted, so the loop terminates.
    ceiling = attempt >= 200 ? 0.0 : ceiling * 0.8;
  }
}

PlantedInstance gen_euclidean_metric(std::size_t n, std::size_t dim, double separation,
                                     std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorKind::InvalidParameter, "n must be even and >= 2");
  if (dim < 1) throw Error(ErrorKind::InvalidParameter, "dim must be >= 1");
  if (!(separation > 0.0)) throw Error(ErrorKind::InvalidParameter, "separation must be > 0");
  Rng rng(seed);
  const auto half = n / 2;
  Eigen::MatrixXd points(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      points(i, k) = rng.uniform(-0.5, 0.5);
    }
    if (i >= half) points(i, 0) += separation;
  }
  auto w = zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      w(i, j) = w(j, i) = (points.row(i) - points.row(j)).norm();
    }
  }
  std::vector<bool> side(n, false);
  for (std::size_t i = 0; i < half; ++i) side[i] = true;
  return PlantedInstance{Instance(std::move(w)), Cut(std::move(side)), "euclidean-metric", {},
                         seed};
}

PlantedInstance gen_tightness_example(std::size_t n_pairs) {
  if (n_pairs < 2) throw Error(ErrorKind::InvalidParameter, "tightness example needs n_pairs >= 2");
  const auto side_size = 2 * n_pairs;
  const auto n = 2 * side_size;
  auto w = zeros(n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < side_size; ++i) {
    labels[i] = "l" + std::to_string(i + 1);
    labels[side_size + i] = "r" + std::to_string(i + 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same_side = (i < side_size) == (j < side_size);
      w(i, j) = w(j, i) = same_side ? 1.0 : 3.0;
    }
  }
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const auto a = 2 * i;
    const auto b = 2 * i + 1;
    w(a, b) = w(b, a) = 2.0;
    w(side_size + a, side_size + b) = w(side_size + b, side_size + a) = 2.0;
  }
  for (std::size_t i = 0; i < side_size; ++i) {
    w(i, side_size + i) = w(side_size + i, i) = 2.0;
  }
  std::vector<bool> side(n, false);
  for (std::size_t i = 0; i < side_size; ++i) side[i] = true;
  return PlantedInstance{Instance(std::move(w), std::move(labels)), Cut(std::move(side)),
                         "tightness", {}, 0};
}

Instance gen_matching_epsilon(std::size_t n_pairs, double eps) {
  if (n_pairs < 1) throw Error(ErrorKind::InvalidParameter, "n_pairs must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::InvalidParameter, "eps must be in (0,1)");
  const auto n = 2 * n_pairs;
  auto w = zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      w(i, j) = w(j, i) = (j == i + 1 && i % 2 == 0) ? 1.0 : eps;
    }
  }
  return Instance(std::move(w));
}

PlantedInstance gen_infinite_stable_not_distinguished(std::size_t n_pairs, double eps) {
  if (n_pairs < 1) throw Error(ErrorKind::InvalidParameter, "n_pairs must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::InvalidParameter, "eps must be in (0,1)");
  const auto n = 2 * n_pairs;
  auto w = zeros(n);
  for (std::size_t i = 0; i < n_pairs; ++i) {
    for (std::size_t j = 0; j < n_pairs; ++j) {
      w(i, n_pairs + j) = w(n_pairs + j, i) = i == j ? 1.0 : eps;
    }
  }
  std::vector<bool> side(n, false);
  for (std::size_t i = 0; i < n_pairs; ++i) side[i] = true;
  ClaimedProperties claimed;
  claimed.gamma = kInf;
  return PlantedInstance{Instance(std::move(w)), Cut(std::move(side)),
                         "infinite-stable-not-distinguished", claimed, 0};
}

}  // namespace stablecut
