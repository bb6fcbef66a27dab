#ifndef STABLECUT_TESTS_FIXTURES_HPP
#define STABLECUT_TESTS_FIXTURES_HPP

#include <cstdint>
#include <vector>

#include "stablecut/instance.hpp"
#include "stablecut/rng.hpp"

namespace fx {

using stablecut::Instance;

// Cycle 0-1-2-3-0 with unit weights; max cut {0,2} | {1,3}.
inline Instance c4() {
  return Instance::from_edges(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
}

inline Instance k3() { return Instance::from_edges(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }

inline Instance k4() {
  return Instance::from_edges(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
}

// K4 where the pairs crossing {0,2} | {1,3} weigh `heavy` and the two others `light`.
inline Instance k4_weighted(double heavy, double light) {
  return Instance::from_edges(4, {{0, 1, heavy}, {1, 2, heavy}, {2, 3, heavy}, {3, 0, heavy},
                                  {0, 2, light}, {1, 3, light}});
}

// Two pairs {0,1} and {2,3} at distance 1, everything across at distance 2.
inline Instance four_point_metric() {
  return Instance::from_edges(4, {{0, 1, 1}, {2, 3, 1}, {0, 2, 2}, {0, 3, 2}, {1, 2, 2}, {1, 3, 2}});
}

inline Instance star3() { return Instance::from_edges(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}); }

// Complete graph with weights uniform in [lo, hi].
inline Instance random_complete(std::size_t n, std::uint64_t seed, double lo = 0.1,
                                double hi = 1.0) {
  stablecut::Rng rng(seed);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) w(i, j) = w(j, i) = rng.uniform(lo, hi);
  }
  return Instance(w);
}

// Random sparse weights on top of a spanning path so the support stays connected.
inline Instance random_sparse(std::size_t n, std::uint64_t seed, double p = 0.4) {
  stablecut::Rng rng(seed);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) w(i, i + 1) = w(i + 1, i) = rng.uniform(0.5, 2.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (rng.bernoulli(p)) w(i, j) = w(j, i) = rng.uniform(0.1, 3.0);
    }
  }
  return Instance(w);
}

}  // namespace fx

#endif  // STABLECUT_TESTS_FIXTURES_HPP
