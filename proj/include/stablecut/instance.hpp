#ifndef STABLECUT_INSTANCE_HPP
#define STABLECUT_INSTANCE_HPP

#include <array>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "stablecut/error.hpp"

namespace stablecut {

using Vertex = std::size_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Relative tolerance used by every stability comparison.
inline constexpr double kRelTol = 1e-9;

/// a >= b up to kRelTol relative to the larger magnitude.
bool approx_geq(double a, double b, double rel = kRelTol);
bool approx_eq(double a, double b, double rel = kRelTol);

struct WeightedEdge {
  Vertex u;
  Vertex v;
  double weight;
};

/// Weighted MAXCUT instance on the complete graph over n vertices.
///
/// The weight matrix is symmetric, nonnegative, has zero diagonal and its
/// support graph is connected. All of this is checked on construction; an
/// Instance that exists is valid and immutable.
class Instance {
 public:
  explicit Instance(Eigen::MatrixXd weights, std::vector<std::string> labels = {});

  /// Each unordered pair at most once; omitted pairs have weight 0.
  static Instance from_edges(std::size_t n, std::span<const WeightedEdge> edges,
                             std::vector<std::string> labels = {});
  static Instance from_edges(std::size_t n, std::initializer_list<WeightedEdge> edges);

  std::size_t size() const { return static_cast<std::size_t>(weights_.rows()); }
  double weight(Vertex u, Vertex v) const { return weights_(u, v); }
  const Eigen::MatrixXd& matrix() const { return weights_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// mu(v) = w(v, V).
  double degree(Vertex v) const { return degrees_[v]; }
  /// Sum over unordered pairs. w(V,V) in ordered-pair convention is twice this.
  double total_weight() const { return total_; }
  double max_weight() const { return weights_.maxCoeff(); }

 private:
  Eigen::MatrixXd weights_;
  std::vector<std::string> labels_;
  std::vector<double> degrees_;
  double total_ = 0.0;
};

/// True iff the support graph {ij : w_ij > 0} of the square matrix is connected.
bool support_connected(const Eigen::MatrixXd& weights);

/// A bipartition (S, S-bar). side[i] is true iff vertex i is in S.
class Cut {
 public:
  explicit Cut(std::vector<bool> side);

  static Cut from_members(std::size_t n, std::initializer_list<Vertex> members);
  static Cut from_members(std::size_t n, std::span<const Vertex> members);

  std::size_t size() const { return side_.size(); }
  bool in_s(Vertex v) const { return side_[v]; }
  bool separates(Vertex u, Vertex v) const { return side_[u] != side_[v]; }
  /// +1 on S, -1 on S-bar.
  int sign(Vertex v) const { return side_[v] ? 1 : -1; }
  const std::vector<bool>& sides() const { return side_; }

  /// delta_S = chi_S - chi_{S-bar}.
  Eigen::VectorXd delta() const;

  Cut complement() const;
  /// Same partition oriented so vertex 0 lies in S.
  Cut canonical() const;
  /// Equality as unordered partitions.
  bool same_partition(const Cut& other) const;

  friend bool operator==(const Cut&, const Cut&) = default;

 private:
  std::vector<bool> side_;
};

struct SubsetStats {
  double xi = 0.0;    // cut edges leaving A
  double iota = 0.0;  // non-cut edges leaving A
  double tau = 0.0;   // w(A, A-bar)
  double mu = 0.0;    // w(A, V)
};

SubsetStats subset_stats(const Instance& inst, const Cut& cut, std::span<const Vertex> subset);
SubsetStats subset_stats(const Instance& inst, const Cut& cut, Vertex v);
SubsetStats subset_stats(const Instance& inst, const Cut& cut, Vertex u, Vertex v);

double cut_weight(const Instance& inst, const Cut& cut);

struct MergeResult {
  Instance instance;
  /// mapping[old] = new index. u and v map to the same vertex.
  std::vector<Vertex> mapping;
};

/// Contracts u and v into one vertex placed at index min(u, v); the remaining
/// vertices keep their relative order. w(u, v) is discarded.
MergeResult merge_vertices(const Instance& inst, Vertex u, Vertex v);

struct PerturbationResult {
  Instance instance;
  /// Largest factor applied to a positive-weight pair (1 if none).
  double gamma = 1.0;
};

PerturbationResult apply_perturbation(const Instance& inst, const Eigen::MatrixXd& factors);

/// Smallest C with w(x,y) <= C * tau(x) / n for all ordered pairs.
double density_coefficient(const Instance& inst);

struct MetricCheck {
  bool is_metric = true;
  /// For a zero off-diagonal distance the triple is (x, y, y).
  std::optional<std::array<Vertex, 3>> violation;
};

/// Positive off-diagonal weights and w(x,z) <= w(x,y) + w(y,z) for all triples.
MetricCheck is_metric(const Instance& inst);

}  // namespace stablecut

#endif  // STABLECUT_INSTANCE_HPP
