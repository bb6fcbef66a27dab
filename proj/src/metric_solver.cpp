#include "stablecut/metric_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stablecut {

NormalizedInstance normalize_total_weight(const Instance& inst) {
  const double ordered_total = 2.0 * inst.total_weight();
  if (!(ordered_total > 0.0)) {
    throw Error(ErrorKind::DegenerateInstance, "total weight must be positive");
  }
  const double n = static_cast<double>(inst.size());
  const double scale = 2.0 * n * n / ordered_total;
  if (scale == 1.0) return NormalizedInstance{inst, 1.0};
  return NormalizedInstance{Instance(inst.matrix() * scale, inst.labels()), scale};
}

SplitMap split_instance(const Instance& normalized) {
  const auto n = normalized.size();
  const double target = 2.0 * static_cast<double>(n) * static_cast<double>(n);
  if (!approx_eq(2.0 * normalized.total_weight(), target)) {
    throw Error(ErrorKind::Precondition, "split_instance needs w(V,V) = 2 n^2");
  }
  std::vector<std::size_t> mult(n), start(n);
  std::size_t total = 0;
  for (std::size_t x = 0; x < n; ++x) {
    const double copies = std::floor(normalized.degree(x) + 1e-9);
    if (copies < 1.0) {
      throw Error(ErrorKind::DegenerateInstance,
                  "vertex " + std::to_string(x) + " would get no copies");
    }
    mult[x] = static_cast<std::size_t>(copies);
    start[x] = total;
    total += mult[x];
  }
  std::vector<Vertex> pi(total);
  for (std::size_t x = 0; x < n; ++x) {
    std::fill_n(pi.begin() + static_cast<std::ptrdiff_t>(start[x]), mult[x], x);
  }
  const auto m = static_cast<Eigen::Index>(total);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const double piece = normalized.weight(x, y) /
                           (static_cast<double>(mult[x]) * static_cast<double>(mult[y]));
      w.block(static_cast<Eigen::Index>(start[x]), static_cast<Eigen::Index>(start[y]),
              static_cast<Eigen::Index>(mult[x]), static_cast<Eigen::Index>(mult[y]))
          .setConstant(piece);
    }
  }
  return SplitMap{normalized, Instance(std::move(w)), std::move(pi), std::move(mult),
                  std::move(start)};
}

Cut lift_cut(const SplitMap& map, const Cut& cut) {
  if (cut.size() != map.original.size()) {
    throw Error(ErrorKind::InvalidCut, "cut size does not match original instance");
  }
  std::vector<bool> side(map.pi.size());
  for (std::size_t i = 0; i < side.size(); ++i) side[i] = cut.in_s(map.pi[i]);
  return Cut(std::move(side));
}

std::optional<Cut> project_cut(const SplitMap& map, const Cut& split_cut) {
  if (split_cut.size() != map.pi.size()) {
    throw Error(ErrorKind::InvalidCut, "cut size does not match split instance");
  }
  const auto n = map.original.size();
  std::vector<bool> side(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto first = map.fiber_start[x];
    side[x] = split_cut.in_s(first);
    for (std::size_t k = 1; k < map.multiplicity[x]; ++k) {
      if (split_cut.in_s(first + k) != side[x]) return std::nullopt;
    }
  }
  return Cut(std::move(side));
}

std::optional<Cut> repair_and_project(const SplitMap& map, const Cut& split_cut) {
  const auto n = map.original.size();
  std::vector<bool> side(n);
  std::size_t in_s = 0;
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t votes = 0;
    for (std::size_t k = 0; k < map.multiplicity[x]; ++k) {
      if (split_cut.in_s(map.fiber_start[x] + k)) ++votes;
    }
    side[x] = 2 * votes > map.multiplicity[x];
    if (side[x]) ++in_s;
  }
  if (in_s == 0 || in_s == n) return std::nullopt;
  return Cut(std::move(side));
}

MetricDenseResult metric_dense_solve(const Instance& inst, const DenseSolverConfig& cfg) {
  if (!is_metric(inst).is_metric) {
    throw Error(ErrorKind::Precondition, "metric_dense_solve needs a metric instance");
  }
  const auto map = split_instance(normalize_total_weight(inst).instance);
  DenseSolverConfig split_cfg = cfg;
  if (cfg.reference) split_cfg.reference = lift_cut(map, *cfg.reference);

  std::optional<Cut> best;
  double best_weight = -1.0;
  std::size_t candidates = 0, repaired = 0;
  for_each_dense_candidate(map.split, split_cfg, [&](const Cut& split_cut) {
    ++candidates;
    auto cut = project_cut(map, split_cut);
    if (!cut) {
      ++repaired;
      cut = repair_and_project(map, split_cut);
      if (!cut) return;
    }
    const double w = cut_weight(inst, *cut);
    if (w > best_weight) {
      best_weight = w;
      best = std::move(cut);
    }
  });
  if (!best) {
    throw Error(ErrorKind::SolverFailed, "no sampled partition produced a usable cut");
  }
  return MetricDenseResult{std::move(*best), best_weight, map.pi.size(), candidates, repaired};
}

std::vector<bool> closed_ball(const Instance& inst, Vertex center, double radius) {
  std::vector<bool> ball(inst.size());
  for (std::size_t y = 0; y < inst.size(); ++y) ball[y] = inst.weight(center, y) <= radius;
  return ball;
}

std::optional<Ball> find_ball(const Instance& inst, const std::vector<bool>& members) {
  for (std::size_t c = 0; c < inst.size(); ++c) {
    if (!members[c]) continue;
    double radius = 0.0;
    for (std::size_t y = 0; y < inst.size(); ++y) {
      if (members[y]) radius = std::max(radius, inst.weight(c, y));
    }
    if (closed_ball(inst, c, radius) == members) return Ball{c, radius};
  }
  return std::nullopt;
}

BallSolveResult ball_enumeration_solve(const Instance& inst) {
  if (!is_metric(inst).is_metric) {
    throw Error(ErrorKind::Precondition, "ball enumeration needs a metric instance");
  }
  const auto n = inst.size();
  std::optional<BallSolveResult> best;
  std::size_t considered = 0;
  std::vector<Vertex> order(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return inst.weight(c, a) < inst.weight(c, b);
    });
    // Growing the ball one distinct radius at a time; ties enter together.
    std::vector<bool> ball(n, false);
    for (std::size_t k = 0; k < n;) {
      const double radius = inst.weight(c, order[k]);
      while (k < n && inst.weight(c, order[k]) == radius) ball[order[k++]] = true;
      if (k == n) break;
      ++considered;
      Cut cut(ball);
      const double w = cut_weight(inst, cut);
      if (!best || w > best->weight) {
        best = BallSolveResult{std::move(cut), w, Ball{c, radius}, 0};
      }
    }
  }
  if (!best) throw Error(ErrorKind::SolverFailed, "no non-degenerate ball cut");
  best->balls_considered = considered;
  return std::move(*best);
}

CutEdgeBoundCheck cut_edge_lower_bound_check(const Instance& inst, const Cut& cut, double gamma) {
  if (cut.size() != inst.size()) throw Error(ErrorKind::InvalidCut, "cut size mismatch");
  const auto n = inst.size();
  CutEdgeBoundCheck out;
  double worst_slack = kInf;
  for (int orientation = 0; orientation < 2; ++orientation) {
    const bool l_is_s = orientation == 0;
    std::size_t l_size = 0;
    for (std::size_t v = 0; v < n; ++v) l_size += cut.in_s(v) == l_is_s;
    const double l = static_cast<double>(l_size);
    const double r = static_cast<double>(n - l_size);
    for (std::size_t x = 0; x < n; ++x) {
      if (cut.in_s(x) != l_is_s) continue;
      double to_r = 0.0;
      for (std::size_t z = 0; z < n; ++z) {
        if (cut.in_s(z) != l_is_s) to_r += inst.weight(x, z);
      }
      const double bound = std::isinf(gamma)
                               ? to_r / r
                               : (gamma * gamma - 1.0) / gamma * to_r / (gamma * r + l);
      for (std::size_t z = 0; z < n; ++z) {
        if (cut.in_s(z) == l_is_s) continue;
        const double wt = inst.weight(x, z);
        const double slack = wt - bound;
        if (slack < worst_slack) {
          worst_slack = slack;
          out.x = x;
          out.z = z;
          out.weight = wt;
          out.bound = bound;
        }
        if (!approx_geq(wt, bound)) out.holds = false;
      }
    }
  }
  return out;
}

}  // namespace stablecut
