#include "stablecut/dense_solver.hpp"

#include <algorithm>
#include <cmath>

#include "stablecut/rng.hpp"

namespace stablecut {

std::size_t sample_size(double density, double eps, std::size_t n) {
  if (!(density >= 1.0)) throw Error(ErrorKind::InvalidParameter, "density C must be >= 1");
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidParameter, "eps must be > 0");
  if (n < 2) throw Error(ErrorKind::InvalidParameter, "n must be >= 2");
  const double ratio = density * (2.0 + eps) / eps;
  const double d = 2.0 * ratio * ratio;
  return static_cast<std::size_t>(std::ceil(d * std::log(2.0 * static_cast<double>(n))));
}

double failure_bound(double density, double gamma, std::size_t m, std::size_t n) {
  if (!(gamma > 1.0)) return 1.0;
  if (!(density > 0.0)) throw Error(ErrorKind::InvalidParameter, "density C must be > 0");
  const double margin = std::isinf(gamma) ? 1.0 : (gamma - 1.0) / (gamma + 1.0);
  const double t = margin / density;
  const double bound =
      static_cast<double>(n) * std::exp(-0.5 * t * t * static_cast<double>(m));
  return std::clamp(bound, 0.0, 1.0);
}

std::vector<Vertex> draw_sample(std::size_t n, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vertex> sample(m);
  for (auto& x : sample) x = static_cast<Vertex>(rng.below(n));
  return sample;
}

std::optional<Cut> induced_cut(const Instance& inst, std::span<const Vertex> sample,
                               const std::vector<bool>& in_l) {
  const auto n = inst.size();
  std::vector<bool> side(n, false);
  std::size_t in_s = 0;
  for (std::size_t x = 0; x < n; ++x) {
    double to_l = 0.0, to_r = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      (in_l[i] ? to_l : to_r) += inst.weight(x, sample[i]);
    }
    if (to_r > to_l) {
      side[x] = true;
      ++in_s;
    }
  }
  if (in_s == 0 || in_s == n) return std::nullopt;
  return Cut(std::move(side));
}

bool sample_misleads_some_vertex(const Instance& inst, const Cut& cut,
                                 std::span<const Vertex> sample) {
  for (std::size_t x = 0; x < inst.size(); ++x) {
    double same = 0.0, other = 0.0;
    for (auto y : sample) {
      (cut.separates(x, y) ? other : same) += inst.weight(x, y);
    }
    if (same >= other) return true;
  }
  return false;
}

std::vector<Vertex> for_each_dense_candidate(const Instance& inst, const DenseSolverConfig& cfg,
                                             const std::function<void(const Cut&)>& visit) {
  if (cfg.sample_size < 1) throw Error(ErrorKind::InvalidParameter, "sample size must be >= 1");
  auto sample = draw_sample(inst.size(), cfg.sample_size, cfg.seed);
  // Canonical order: the induced cuts do not depend on how the multiset was drawn.
  std::sort(sample.begin(), sample.end());
  const auto m = sample.size();
  std::vector<bool> in_l(m);

  auto try_partition = [&] {
    if (auto cut = induced_cut(inst, sample, in_l)) visit(*cut);
  };

  switch (cfg.mode) {
    case DenseMode::Enumerate: {
      if (m > cfg.enumerate_cap) {
        throw Error(ErrorKind::InvalidParameter,
                    "sample size " + std::to_string(m) + " exceeds enumeration cap");
      }
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        for (std::size_t i = 0; i < m; ++i) in_l[i] = ((mask >> i) & 1u) == 0;
        try_partition();
      }
      break;
    }
    case DenseMode::Seeded: {
      if (!cfg.reference) {
        throw Error(ErrorKind::InvalidParameter, "seeded mode needs a reference cut");
      }
      if (cfg.reference->size() != inst.size()) {
        throw Error(ErrorKind::InvalidCut, "reference cut size does not match instance");
      }
      for (std::size_t i = 0; i < m; ++i) in_l[i] = cfg.reference->in_s(sample[i]);
      try_partition();
      break;
    }
    case DenseMode::RandomPartitions: {
      if (cfg.random_partitions < 1) {
        throw Error(ErrorKind::InvalidParameter, "need at least one random partition");
      }
      auto rng = Rng::stream(cfg.seed, 1);
      for (std::size_t k = 0; k < cfg.random_partitions; ++k) {
        for (std::size_t i = 0; i < m; ++i) in_l[i] = rng.bernoulli(0.5);
        try_partition();
      }
      break;
    }
  }
  return sample;
}

DenseSolveResult dense_solve(const Instance& inst, const DenseSolverConfig& cfg) {
  std::optional<Cut> best;
  double best_weight = -1.0;
  std::size_t candidates = 0;
  auto sample = for_each_dense_candidate(inst, cfg, [&](const Cut& cut) {
    ++candidates;
    const double w = cut_weight(inst, cut);
    if (w > best_weight) {
      best_weight = w;
      best = cut;
    }
  });
  if (!best) {
    throw Error(ErrorKind::SolverFailed, "every sampled partition induced a degenerate cut");
  }
  std::size_t tried = 1;
  if (cfg.mode == DenseMode::Enumerate) tried = std::size_t{1} << sample.size();
  if (cfg.mode == DenseMode::RandomPartitions) tried = cfg.random_partitions;
  return DenseSolveResult{std::move(*best), best_weight, std::move(sample), tried, candidates};
}

}  // namespace stablecut
