#include "stablecut/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace stablecut {
namespace {

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw Error(ErrorKind::SizeLimit, "instance has " + std::to_string(n) +
                                          " vertices, oracle cap is " + std::to_string(cap));
  }
  if (n > 62) throw Error(ErrorKind::SizeLimit, "oracle scans need n <= 62");
}

void check_cut(const Instance& inst, const Cut& cut) {
  if (cut.size() != inst.size()) {
    throw Error(ErrorKind::InvalidCut, "cut size does not match instance");
  }
}

struct ScanMinima {
  double gamma = kInf;   // min xi/iota
  double alpha = kInf;   // min (xi - iota) / min mu
  double cheeger = kInf; // min tau / min mu
};

// One Gray-code pass over all A that exclude vertex 0. `side` may be empty,
// in which case every edge counts as a cut edge (tau-only scan).
ScanMinima scan_subsets(const Eigen::MatrixXd& w, const std::vector<bool>& side,
                        std::size_t cap) {
  const auto n = static_cast<std::size_t>(w.rows());
  check_cap(n, cap);
  ScanMinima out;
  if (n < 2) return out;

  std::vector<double> mu(n);
  double mu_total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    mu[v] = w.row(static_cast<Eigen::Index>(v)).sum();
    mu_total += mu[v];
  }
  auto separated = [&](std::size_t a, std::size_t b) {
    return side.empty() || side[a] != side[b];
  };

  std::vector<bool> in_a(n, false);
  double xi = 0.0, iota = 0.0, mu_a = 0.0;
  // Exact counts of positive-weight boundary edges decide the zero cases.
  std::int64_t xi_edges = 0, iota_edges = 0;

  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < steps; ++i) {
    const auto v = static_cast<std::size_t>(std::countr_zero(i)) + 1;
    const bool entering = !in_a[v];
    const double sgn = entering ? 1.0 : -1.0;
    for (std::size_t u = 0; u < n; ++u) {
      const double wt = w(v, u);
      if (u == v || wt == 0.0) continue;
      // Entering: edge vu joins the boundary iff u is outside A, and leaves
      // it iff u is inside. Leaving is the mirror image.
      const bool becomes_boundary = entering != in_a[u];
      const double d = becomes_boundary ? wt : -wt;
      const std::int64_t dc = becomes_boundary ? 1 : -1;
      if (separated(u, v)) {
        xi += d;
        xi_edges += dc;
      } else {
        iota += d;
        iota_edges += dc;
      }
    }
    in_a[v] = entering;
    mu_a += sgn * mu[v];
    if (xi_edges == 0) xi = 0.0;
    if (iota_edges == 0) iota = 0.0;

    if (iota_edges > 0) out.gamma = std::min(out.gamma, xi / iota);
    const double min_mu = std::min(mu_a, mu_total - mu_a);
    if (min_mu > 0.0) {
      out.alpha = std::min(out.alpha, (xi - iota) / min_mu);
      out.cheeger = std::min(out.cheeger, (xi + iota) / min_mu);
    }
  }
  return out;
}

}  // namespace

MaxCutResult brute_force_maxcut(const Instance& inst, std::size_t cap) {
  const auto n = inst.size();
  check_cap(n, cap);
  if (n < 2) throw Error(ErrorKind::InvalidParameter, "max cut needs at least 2 vertices");
  const auto& w = inst.matrix();

  // side[v] true = S. Start from the (invalid) all-S state and walk the
  // Gray code over vertices 1..n-1, so vertex 0 stays in S.
  std::vector<bool> side(n, true);
  std::vector<bool> best_side;
  double weight = 0.0;
  double best = -1.0;
  std::size_t count = 0;

  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < steps; ++i) {
    const auto v = static_cast<std::size_t>(std::countr_zero(i)) + 1;
    double gain = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v) continue;
      gain += side[u] == side[v] ? w(v, u) : -w(v, u);
    }
    side[v] = !side[v];
    weight += gain;

    if (best < 0.0 || (weight > best && !approx_eq(weight, best))) {
      best = weight;
      best_side = side;
      count = 1;
    } else if (approx_eq(weight, best)) {
      ++count;
      if (side < best_side) best_side = side;
    }
  }
  Cut cut(std::move(best_side));
  const double exact = cut_weight(inst, cut);
  return MaxCutResult{std::move(cut), exact, count};
}

double cut_stability_gamma(const Instance& inst, const Cut& cut, std::size_t cap) {
  check_cut(inst, cut);
  return scan_subsets(inst.matrix(), cut.sides(), cap).gamma;
}

double local_stability_gamma(const Instance& inst, const Cut& cut) {
  check_cut(inst, cut);
  double gamma = kInf;
  for (std::size_t x = 0; x < inst.size(); ++x) {
    double xi = 0.0, iota = 0.0;
    for (std::size_t y = 0; y < inst.size(); ++y) {
      if (y == x) continue;
      (cut.separates(x, y) ? xi : iota) += inst.weight(x, y);
    }
    if (iota > 0.0) gamma = std::min(gamma, xi / iota);
  }
  return gamma;
}

double distinction_alpha(const Instance& inst, const Cut& cut, std::size_t cap) {
  check_cut(inst, cut);
  return scan_subsets(inst.matrix(), cut.sides(), cap).alpha;
}

double cheeger_constant(const Instance& inst, std::size_t cap) {
  return cheeger_constant(inst.matrix(), cap);
}

double cheeger_constant(const Eigen::MatrixXd& weights, std::size_t cap) {
  return scan_subsets(weights, {}, cap).cheeger;
}

std::vector<Cut> enumerate_locally_stable_cuts(const Instance& inst, double gamma,
                                               std::size_t cap) {
  const auto n = inst.size();
  check_cap(n, cap);
  if (!(gamma >= 1.0)) throw Error(ErrorKind::InvalidParameter, "gamma must be >= 1");
  const auto& w = inst.matrix();

  // Start from all-S: every edge is non-cut.
  std::vector<bool> side(n, true);
  std::vector<double> xi(n, 0.0), iota(n);
  std::vector<std::int64_t> iota_edges(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    iota[x] = inst.degree(x);
    for (std::size_t y = 0; y < n; ++y) {
      if (y != x && w(x, y) > 0.0) ++iota_edges[x];
    }
  }

  std::vector<Cut> out;
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < steps; ++i) {
    const auto v = static_cast<std::size_t>(std::countr_zero(i)) + 1;
    std::int64_t v_iota_edges = 0;
    for (std::size_t u = 0; u < n; ++u) {
      const double wt = w(v, u);
      if (u == v || wt == 0.0) continue;
      if (side[u] == side[v]) {
        // becomes a cut edge
        xi[u] += wt;
        iota[u] -= wt;
        --iota_edges[u];
      } else {
        xi[u] -= wt;
        iota[u] += wt;
        ++iota_edges[u];
        ++v_iota_edges;
      }
      if (iota_edges[u] == 0) iota[u] = 0.0;
    }
    side[v] = !side[v];
    std::swap(xi[v], iota[v]);
    iota_edges[v] = v_iota_edges;
    if (v_iota_edges == 0) iota[v] = 0.0;

    bool stable = true;
    for (std::size_t x = 0; x < n && stable; ++x) {
      if (iota_edges[x] > 0 && !approx_geq(xi[x], gamma * iota[x])) stable = false;
    }
    if (stable) out.emplace_back(side);
  }
  return out;
}

StabilityReport cut_stability_report(const Instance& inst, const Cut& cut, std::size_t cap) {
  check_cut(inst, cut);
  const auto opt = brute_force_maxcut(inst, std::max(cap, inst.size()));
  const auto scan = scan_subsets(inst.matrix(), cut.sides(), cap);
  StabilityReport r{cut};
  r.cut_weight = cut_weight(inst, cut);
  r.maxcut_weight = opt.weight;
  r.optimal_count = opt.optimal_count;
  r.is_maxcut = approx_eq(r.cut_weight, opt.weight);
  r.is_unique_maxcut = r.is_maxcut && opt.optimal_count == 1;
  r.gamma = scan.gamma;
  r.gamma_local = local_stability_gamma(inst, cut);
  r.alpha = scan.alpha;
  r.cheeger = scan.cheeger;
  return r;
}

StabilityReport instance_stability(const Instance& inst, std::size_t cap) {
  check_cap(inst.size(), cap);
  const auto opt = brute_force_maxcut(inst, std::max(cap, inst.size()));
  auto r = cut_stability_report(inst, opt.cut, cap);
  if (!r.is_unique_maxcut) {
    r.gamma = 1.0;
    r.alpha = 0.0;
  }
  return r;
}

}  // namespace stablecut
