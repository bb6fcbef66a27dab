#include "stablecut/instance.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace stablecut {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInstance: return "invalid-instance";
    case ErrorKind::InvalidCut: return "invalid-cut";
    case ErrorKind::InvalidSubset: return "invalid-subset";
    case ErrorKind::InvalidMerge: return "invalid-merge";
    case ErrorKind::InvalidPerturbation: return "invalid-perturbation";
    case ErrorKind::DegenerateInstance: return "degenerate-instance";
    case ErrorKind::SizeLimit: return "size-limit";
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::InvariantViolation: return "invariant-violation";
    case ErrorKind::SolverFailed: return "solver-failed";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

bool approx_geq(double a, double b, double rel) {
  if (a >= b) return true;
  if (std::isinf(a) || std::isinf(b)) return false;
  const double scale = std::max(std::abs(a), std::abs(b));
  return b - a <= rel * scale;
}

bool approx_eq(double a, double b, double rel) {
  return approx_geq(a, b, rel) && approx_geq(b, a, rel);
}

bool support_connected(const Eigen::MatrixXd& weights) {
  const auto n = static_cast<std::size_t>(weights.rows());
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const auto u = frontier.front();
    frontier.pop();
    for (std::size_t v = 0; v < n; ++v) {
      if (!seen[v] && weights(u, v) > 0.0) {
        seen[v] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

Instance::Instance(Eigen::MatrixXd weights, std::vector<std::string> labels)
    : weights_(std::move(weights)), labels_(std::move(labels)) {
  const auto n = static_cast<std::size_t>(weights_.rows());
  if (weights_.rows() != weights_.cols()) {
    throw Error(ErrorKind::InvalidInstance, "weight matrix is not square");
  }
  if (n == 0) throw Error(ErrorKind::InvalidInstance, "instance has no vertices");
  if (!labels_.empty() && labels_.size() != n) {
    throw Error(ErrorKind::InvalidInstance, "label count does not match vertex count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (weights_(i, i) != 0.0) {
      throw Error(ErrorKind::InvalidInstance, "nonzero diagonal at vertex " + std::to_string(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double w = weights_(i, j);
      if (!std::isfinite(w) || w < 0.0) {
        throw Error(ErrorKind::InvalidInstance, "weights must be finite and nonnegative");
      }
      if (w != weights_(j, i)) {
        throw Error(ErrorKind::InvalidInstance, "weight matrix is not symmetric");
      }
    }
  }
  if (!support_connected(weights_)) {
    throw Error(ErrorKind::InvalidInstance, "support graph is disconnected");
  }
  degrees_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    degrees_[i] = weights_.row(static_cast<Eigen::Index>(i)).sum();
    total_ += degrees_[i];
  }
  total_ /= 2.0;
}

Instance Instance::from_edges(std::size_t n, std::span<const WeightedEdge> edges,
                              std::vector<std::string> labels) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorKind::InvalidInstance, "edge endpoint out of range");
    }
    if (e.u == e.v) throw Error(ErrorKind::InvalidInstance, "self-loop edge");
    if (w(e.u, e.v) != 0.0) {
      throw Error(ErrorKind::InvalidInstance, "pair listed more than once");
    }
    w(e.u, e.v) = e.weight;
    w(e.v, e.u) = e.weight;
  }
  return Instance(std::move(w), std::move(labels));
}

Instance Instance::from_edges(std::size_t n, std::initializer_list<WeightedEdge> edges) {
  return from_edges(n, std::span<const WeightedEdge>(edges.begin(), edges.size()));
}

Cut::Cut(std::vector<bool> side) : side_(std::move(side)) {
  const auto in_s = std::count(side_.begin(), side_.end(), true);
  if (in_s == 0 || in_s == static_cast<std::ptrdiff_t>(side_.size())) {
    throw Error(ErrorKind::InvalidCut, "a cut needs both sides nonempty");
  }
}

Cut Cut::from_members(std::size_t n, std::span<const Vertex> members) {
  std::vector<bool> side(n, false);
  for (auto v : members) {
    if (v >= n) throw Error(ErrorKind::InvalidCut, "cut member out of range");
    side[v] = true;
  }
  return Cut(std::move(side));
}

Cut Cut::from_members(std::size_t n, std::initializer_list<Vertex> members) {
  return from_members(n, std::span<const Vertex>(members.begin(), members.size()));
}

Eigen::VectorXd Cut::delta() const {
  Eigen::VectorXd d(static_cast<Eigen::Index>(side_.size()));
  for (std::size_t i = 0; i < side_.size(); ++i) d[static_cast<Eigen::Index>(i)] = sign(i);
  return d;
}

Cut Cut::complement() const {
  auto flipped = side_;
  flipped.flip();
  return Cut(std::move(flipped));
}

Cut Cut::canonical() const { return side_[0] ? *this : complement(); }

bool Cut::same_partition(const Cut& other) const {
  return size() == other.size() && canonical() == other.canonical();
}

namespace {

std::vector<bool> membership(std::size_t n, std::span<const Vertex> subset) {
  std::vector<bool> in(n, false);
  std::size_t count = 0;
  for (auto v : subset) {
    if (v >= n) throw Error(ErrorKind::InvalidSubset, "subset vertex out of range");
    if (!in[v]) ++count;
    in[v] = true;
  }
  if (count == 0 || count == n) {
    throw Error(ErrorKind::InvalidSubset, "subset must be nonempty and proper");
  }
  return in;
}

}  // namespace

SubsetStats subset_stats(const Instance& inst, const Cut& cut, std::span<const Vertex> subset) {
  const auto n = inst.size();
  if (cut.size() != n) throw Error(ErrorKind::InvalidCut, "cut size does not match instance");
  const auto in = membership(n, subset);
  SubsetStats s;
  for (std::size_t a = 0; a < n; ++a) {
    if (!in[a]) continue;
    s.mu += inst.degree(a);
    for (std::size_t b = 0; b < n; ++b) {
      if (in[b]) continue;
      const double w = inst.weight(a, b);
      if (cut.separates(a, b)) {
        s.xi += w;
      } else {
        s.iota += w;
      }
    }
  }
  s.tau = s.xi + s.iota;
  return s;
}

SubsetStats subset_stats(const Instance& inst, const Cut& cut, Vertex v) {
  const std::array<Vertex, 1> a{v};
  return subset_stats(inst, cut, a);
}

SubsetStats subset_stats(const Instance& inst, const Cut& cut, Vertex u, Vertex v) {
  const std::array<Vertex, 2> a{u, v};
  return subset_stats(inst, cut, a);
}

double cut_weight(const Instance& inst, const Cut& cut) {
  const auto n = inst.size();
  if (cut.size() != n) throw Error(ErrorKind::InvalidCut, "cut size does not match instance");
  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    if (!cut.in_s(a)) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (!cut.in_s(b)) total += inst.weight(a, b);
    }
  }
  return total;
}

MergeResult merge_vertices(const Instance& inst, Vertex u, Vertex v) {
  const auto n = inst.size();
  if (u >= n || v >= n) throw Error(ErrorKind::InvalidMerge, "merge vertex out of range");
  if (u == v) throw Error(ErrorKind::InvalidMerge, "cannot merge a vertex with itself");
  const Vertex keep = std::min(u, v);
  const Vertex drop = std::max(u, v);

  std::vector<Vertex> mapping(n);
  for (std::size_t x = 0, next = 0; x < n; ++x) {
    if (x == drop) continue;
    mapping[x] = next++;
  }
  mapping[drop] = mapping[keep];

  const auto m = static_cast<Eigen::Index>(n - 1);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto nx = mapping[x];
      const auto ny = mapping[y];
      if (nx != ny) w(nx, ny) += inst.weight(x, y);
    }
  }
  std::vector<std::string> labels;
  if (!inst.labels().empty()) {
    labels.resize(n - 1);
    for (std::size_t x = 0; x < n; ++x) {
      if (x == drop) continue;
      labels[mapping[x]] = inst.labels()[x];
    }
    labels[mapping[keep]] = inst.labels()[keep] + "+" + inst.labels()[drop];
  }
  return MergeResult{Instance(std::move(w), std::move(labels)), std::move(mapping)};
}

PerturbationResult apply_perturbation(const Instance& inst, const Eigen::MatrixXd& factors) {
  const auto n = static_cast<Eigen::Index>(inst.size());
  if (factors.rows() != n || factors.cols() != n) {
    throw Error(ErrorKind::InvalidPerturbation, "factor matrix has the wrong shape");
  }
  double gamma = 1.0;
  Eigen::MatrixXd w = inst.matrix();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double f = factors(i, j);
      if (!(f >= 1.0) || !std::isfinite(f)) {
        throw Error(ErrorKind::InvalidPerturbation, "perturbation factors must be >= 1");
      }
      if (f != factors(j, i)) {
        throw Error(ErrorKind::InvalidPerturbation, "factor matrix is not symmetric");
      }
      if (i == j) continue;
      w(i, j) *= f;
      if (inst.weight(i, j) > 0.0) gamma = std::max(gamma, f);
    }
  }
  return PerturbationResult{Instance(std::move(w), inst.labels()), gamma};
}

double density_coefficient(const Instance& inst) {
  const auto n = inst.size();
  double c = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    const double tau = inst.degree(x);
    if (tau <= 0.0) {
      throw Error(ErrorKind::DegenerateInstance, "isolated vertex " + std::to_string(x));
    }
    for (std::size_t y = 0; y < n; ++y) {
      c = std::max(c, static_cast<double>(n) * inst.weight(x, y) / tau);
    }
  }
  return c;
}

MetricCheck is_metric(const Instance& inst) {
  const auto n = inst.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && inst.weight(x, y) <= 0.0) {
        return MetricCheck{false, std::array<Vertex, 3>{x, y, y}};
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      for (std::size_t z = x + 1; z < n; ++z) {
        if (z == y) continue;
        const double detour = inst.weight(x, y) + inst.weight(y, z);
        if (!approx_geq(detour, inst.weight(x, z))) {
          return MetricCheck{false, std::array<Vertex, 3>{x, y, z}};
        }
      }
    }
  }
  return MetricCheck{};
}

}  // namespace stablecut
