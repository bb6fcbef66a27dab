#include "stablecut/stable_solver.hpp"

#include <algorithm>
#include <cmath>

namespace stablecut {

std::string_view to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::HeavyEdgePair: return "heavy-edge-pair";
    case WitnessKind::T1IncidentPair: return "t1-incident-pair";
    case WitnessKind::T2Pair: return "t2-pair";
    case WitnessKind::CommonNeighborPair: return "common-neighbor-pair";
  }
  return "unknown";
}

double sqrt_stability_threshold(std::size_t n) {
  return std::sqrt(8.0 * static_cast<double>(n) + 4.0) + 1.0;
}

namespace {

std::pair<Vertex, Vertex> ordered(Vertex a, Vertex b) { return {std::min(a, b), std::max(a, b)}; }

/// tau({u, v}) = mu(u) + mu(v) - 2 w(u, v).
double pair_boundary(const Instance& inst, Vertex u, Vertex v) {
  return inst.degree(u) + inst.degree(v) - 2.0 * inst.weight(u, v);
}

}  // namespace

MergeWitness find_same_side_pair_2n(const Instance& inst) {
  const auto n = inst.size();
  if (n < 3) throw Error(ErrorKind::SizeLimit, "pair finding needs at least 3 vertices");
  const Vertex v = 0;
  Vertex u = 1;
  for (Vertex y = 2; y < n; ++y) {
    if (inst.weight(v, y) > inst.weight(v, u)) u = y;
  }
  // Heaviest edge leaving {u, v}; ties go to the lexicographically smallest
  // (min, max) pair.
  std::optional<std::pair<Vertex, Vertex>> heavy;
  double heavy_w = -1.0;
  for (Vertex end : {v, u}) {
    for (Vertex z = 0; z < n; ++z) {
      if (z == u || z == v) continue;
      const double wt = inst.weight(end, z);
      const auto e = std::make_pair(end, z);
      if (wt > heavy_w || (wt == heavy_w && ordered(end, z) < ordered(heavy->first, heavy->second))) {
        heavy_w = wt;
        heavy = e;
      }
    }
  }
  const auto [end, z] = *heavy;
  // Both heavy edges are cut edges; their far endpoints share a side.
  const Vertex other = end == v ? u : v;
  MergeWitness w;
  w.kind = WitnessKind::HeavyEdgePair;
  w.pair = ordered(other, z);
  w.edges = {ordered(v, u), ordered(end, z)};
  return w;
}

MergeWitness find_same_side_pair_sqrt(const Instance& inst, double gamma) {
  const auto n = inst.size();
  if (n < 3) throw Error(ErrorKind::SizeLimit, "pair finding needs at least 3 vertices");
  const double threshold = sqrt_stability_threshold(n);
  if (!(gamma > threshold)) {
    throw Error(ErrorKind::Precondition, "gamma must exceed sqrt(8n+4)+1 = " +
                                             std::to_string(threshold));
  }
  const double share = std::isinf(gamma) ? 0.0 : 1.0 / (gamma + 1.0);

  // T1 as ordered pairs (v, u); incidence is on the underlying undirected edges.
  std::vector<std::vector<Vertex>> heavy(n);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u = 0; u < n; ++u) {
      if (u != v && inst.weight(v, u) > share * inst.degree(v)) {
        heavy[v].push_back(u);
        heavy[u].push_back(v);
      }
    }
  }
  for (auto& adj : heavy) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  for (Vertex b = 0; b < n; ++b) {
    if (heavy[b].size() >= 2) {
      MergeWitness w;
      w.kind = WitnessKind::T1IncidentPair;
      w.pair = ordered(heavy[b][0], heavy[b][1]);
      w.edges = {ordered(b, heavy[b][0]), ordered(b, heavy[b][1])};
      return w;
    }
  }

  // T1 is a matching.
  std::vector<std::optional<Vertex>> partner(n);
  for (Vertex v = 0; v < n; ++v) {
    if (!heavy[v].empty()) partner[v] = heavy[v][0];
  }
  for (Vertex u = 0; u < n; ++u) {
    if (!partner[u]) continue;
    const Vertex z = *partner[u];
    const double limit = share * pair_boundary(inst, u, z);
    for (Vertex v = 0; v < n; ++v) {
      if (v == u || v == z) continue;
      if (inst.weight(u, v) > limit) {
        MergeWitness w;
        w.kind = WitnessKind::T2Pair;
        w.pair = ordered(v, z);
        w.edges = {ordered(u, v), ordered(u, z)};
        return w;
      }
    }
  }

  // T2 is empty: look for a pair with many common neighbours.
  Eigen::MatrixXd trimmed = inst.matrix();
  std::vector<double> hat(n);
  for (Vertex v = 0; v < n; ++v) {
    if (partner[v]) {
      trimmed(v, *partner[v]) = 0.0;
      hat[v] = pair_boundary(inst, v, *partner[v]);
    } else {
      hat[v] = inst.degree(v);
    }
  }
  const Eigen::MatrixXd common = trimmed * trimmed;
  const double factor = 2.0 * share * share;
  std::optional<MergeWitness> best;
  double best_ratio = -1.0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const double limit = factor * hat[u] * hat[v];
      const double value = common(u, v);
      if (!(value > limit)) continue;
      const double ratio = value / (hat[u] * hat[v]);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = MergeWitness{WitnessKind::CommonNeighborPair, {u, v}, {}, value, limit};
      }
    }
  }
  if (!best) {
    throw Error(ErrorKind::InvariantViolation,
                "no same-side pair found; the instance is not gamma-stable for gamma = " +
                    std::to_string(gamma));
  }
  return *best;
}

namespace {

template <typename FindPair>
MergeSolveResult merge_down(const Instance& inst, FindPair&& find_pair) {
  const auto n = inst.size();
  if (n < 2) throw Error(ErrorKind::InvalidParameter, "need at least 2 vertices");
  std::vector<Vertex> where(n);
  for (Vertex x = 0; x < n; ++x) where[x] = x;
  Instance current = inst;
  std::vector<MergeWitness> witnesses;
  while (current.size() > 2) {
    auto witness = find_pair(current);
    auto merged = merge_vertices(current, witness.pair.first, witness.pair.second);
    for (auto& w : where) w = merged.mapping[w];
    current = std::move(merged.instance);
    witnesses.push_back(std::move(witness));
  }
  std::vector<bool> side(n);
  for (Vertex x = 0; x < n; ++x) side[x] = where[x] == 0;
  Cut cut(std::move(side));
  const double weight = cut_weight(inst, cut);
  return MergeSolveResult{std::move(cut), weight, std::move(witnesses)};
}

}  // namespace

MergeSolveResult sqrt_stable_solve(const Instance& inst, std::optional<double> gamma) {
  return merge_down(inst, [&](const Instance& current) {
    const double g = gamma ? *gamma : sqrt_stability_threshold(current.size()) + 1e-6;
    return find_same_side_pair_sqrt(current, g);
  });
}

MergeSolveResult warmup_2n_solve(const Instance& inst) {
  return merge_down(inst, [](const Instance& current) { return find_same_side_pair_2n(current); });
}

Cut spanning_tree_sample(const Instance& inst, Rng& rng) {
  const auto n = inst.size();
  if (n < 2) throw Error(ErrorKind::InvalidParameter, "need at least 2 vertices");
  std::vector<bool> in_tree(n, false), color(n, false);
  in_tree[0] = true;
  color[0] = true;
  for (std::size_t t = 1; t < n; ++t) {
    double total = 0.0;
    for (Vertex a = 0; a < n; ++a) {
      if (!in_tree[a]) continue;
      for (Vertex b = 0; b < n; ++b) {
        if (!in_tree[b]) total += inst.weight(a, b);
      }
    }
    const double target = rng.uniform01() * total;
    double acc = 0.0;
    Vertex from = 0, to = 0;
    bool found = false;
    for (Vertex a = 0; a < n && !found; ++a) {
      if (!in_tree[a]) continue;
      for (Vertex b = 0; b < n; ++b) {
        const double wt = inst.weight(a, b);
        if (in_tree[b] || wt <= 0.0) continue;
        from = a;
        to = b;
        acc += wt;
        if (acc > target) {
          found = true;
          break;
        }
      }
    }
    // Rounding can leave the scan just short; the last positive edge is used then.
    in_tree[to] = true;
    color[to] = !color[from];
  }
  return Cut(std::move(color));
}

SpanningTreeResult spanning_tree_solve(const Instance& inst, std::uint64_t seed,
                                       std::size_t repetitions) {
  if (repetitions < 1) throw Error(ErrorKind::InvalidParameter, "repetitions must be >= 1");
  std::optional<Cut> best;
  double best_weight = -1.0;
  for (std::size_t k = 0; k < repetitions; ++k) {
    auto rng = Rng::stream(seed, k);
    auto cut = spanning_tree_sample(inst, rng);
    const double w = cut_weight(inst, cut);
    if (w > best_weight) {
      best_weight = w;
      best = std::move(cut);
    }
  }
  return SpanningTreeResult{std::move(*best), best_weight, repetitions};
}

double spanning_tree_success_bound(double gamma, std::size_t n) {
  if (!(gamma >= 1.0)) throw Error(ErrorKind::InvalidParameter, "gamma must be >= 1");
  if (std::isinf(gamma) || n <= 1) return 1.0;
  return std::pow(gamma / (gamma + 1.0), static_cast<double>(n - 1));
}

std::size_t default_spanning_tree_repetitions(double gamma, std::size_t n) {
  return static_cast<std::size_t>(std::ceil(3.0 / spanning_tree_success_bound(gamma, n)));
}

}  // namespace stablecut
