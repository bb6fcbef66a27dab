#include "stablecut/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>

#include "stablecut/dense_solver.hpp"
#include "stablecut/generators.hpp"
#include "stablecut/metric_solver.hpp"
#include "stablecut/oracle.hpp"
#include "stablecut/rng.hpp"
#include "stablecut/spectral_gw.hpp"
#include "stablecut/stable_solver.hpp"

namespace stablecut {
namespace {

std::uint64_t sub_seed(std::uint64_t base, std::uint64_t tag, std::uint64_t i) {
  return Rng::stream(base, (tag << 32) | i).next_u64();
}

double binomial_sigma(double p, std::size_t trials) {
  const double q = std::clamp(p, 0.0, 1.0);
  return std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
}

/// Relabels vertices by a seeded random permutation.
Instance permuted(const Instance& inst, std::uint64_t seed) {
  const auto n = inst.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(perm);
  Eigen::MatrixXd w(inst.matrix().rows(), inst.matrix().cols());
  std::vector<std::string> labels(inst.labels().empty() ? 0 : n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(perm[i], perm[j]) = inst.weight(i, j);
    if (!labels.empty()) labels[perm[i]] = inst.labels()[i];
  }
  return Instance(std::move(w), std::move(labels));
}

Instance cycle4() { return Instance::from_edges(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}}); }
Instance triangle() { return Instance::from_edges(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }

struct Labelled {
  std::string family;
  Instance instance;
};

/// The five cross-validation families at index i (n <= 14).
Labelled family_instance(int family, std::size_t i, std::uint64_t seed) {
  Rng rng(seed);
  switch (family) {
    case 0: {
      const std::size_t n = 8 + 2 * (i % 4);
      const double p = rng.uniform(0.6, 1.0);
      const double q = rng.uniform(0.0, 0.5);
      return {"planted-partition", gen_planted_partition(n, p, q, rng.next_u64()).instance};
    }
    case 1: {
      constexpr std::array<double, 5> gammas = {1.0, 2.0, 4.0, 8.0, kInf};
      const std::size_t n = 8 + 2 * (i % 4);
      return {"stable-bipartite-noise",
              gen_stable_bipartite_noise(n, gammas[i % gammas.size()], rng.next_u64()).instance};
    }
    case 2: {
      const std::size_t pairs = 2 + i % 6;
      return {"matching-epsilon", gen_matching_epsilon(pairs, rng.uniform(0.001, 0.999))};
    }
    case 3: {
      const std::size_t pairs = 2 + i % 2;
      return {"tightness", permuted(gen_tightness_example(pairs).instance, rng.next_u64())};
    }
    default: {
      const std::size_t n = 6 + 2 * (i % 5);
      const std::size_t dim = 1 + i % 3;
      return {"euclidean-metric",
              gen_euclidean_metric(n, dim, rng.uniform(0.2, 4.0), rng.next_u64()).instance};
    }
  }
}

constexpr int kFamilies = 5;

// ---------------------------------------------------------------- criterion 1

CriterionResult oracle_cross_validation(std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r{1, "oracle-cross-validation", false, {}, Json::object()};
  std::size_t total = 0, violations = 0;
  for (int f = 0; f < kFamilies; ++f) {
    std::size_t unique = 0, v_local = 0, v_cheeger = 0, v_distinction = 0, v_unique = 0;
    std::string name;
    for (std::size_t i = 0; i < 200; ++i) {
      auto [family, inst] = family_instance(f, i, sub_seed(seed, 1, f * 1000 + i));
      name = family;
      const auto opt = brute_force_maxcut(inst);
      const double gamma = cut_stability_gamma(inst, opt.cut);
      const double gamma_local = local_stability_gamma(inst, opt.cut);
      const double alpha = distinction_alpha(inst, opt.cut);
      const double h = cheeger_constant(inst);
      const bool is_unique = opt.optimal_count == 1;
      unique += is_unique;
      v_local += !approx_geq(gamma_local, gamma);
      v_cheeger += !approx_geq(h, alpha);
      if (is_unique) {
        const double bound = alpha >= 1.0 ? kInf : (1.0 + alpha) / (1.0 - alpha);
        v_distinction += !approx_geq(gamma, bound);
      }
      const bool stable = !approx_geq(1.0, gamma);
      v_unique += stable != is_unique;
    }
    total += 200;
    const auto family_violations = v_local + v_cheeger + v_distinction + v_unique;
    violations += family_violations;
    r.detail["families"][name] = {{"instances", 200},
                                  {"unique_optima", unique},
                                  {"gamma_exceeds_gamma_local", v_local},
                                  {"alpha_exceeds_cheeger", v_cheeger},
                                  {"distinction_bound_violated", v_distinction},
                                  {"stability_uniqueness_mismatch", v_unique}};
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool fast = seconds < 300.0;
  r.detail["instances"] = total;
  r.detail["violations"] = violations;
  r.detail["runtime_under_5_minutes"] = fast;
  r.passed = violations == 0 && fast;
  r.summary = std::to_string(total) + " instances, " + std::to_string(violations) +
              " invariant violations" + (fast ? "" : ", runtime over 5 minutes");
  return r;
}

// ---------------------------------------------------------------- criterion 2

CriterionResult dense_solver_bounds(std::uint64_t seed) {
  CriterionResult r{2, "dense-solver-failure-bound", true, {}, Json::object()};
  constexpr std::size_t n = 14;
  constexpr std::size_t kSeeds = 1000;
  std::vector<Labelled> pool;
  pool.push_back({"K7,7", gen_planted_partition(n, 1.0, 0.0, sub_seed(seed, 2, 0)).instance});
  for (double g : {4.0, 16.0, kInf}) {
    pool.push_back({"noise-gamma-" + std::string(std::isinf(g) ? "inf" : std::to_string(int(g))),
                    gen_stable_bipartite_noise(n, g, sub_seed(seed, 2, 1 + pool.size())).instance});
  }
  std::size_t checks = 0, failed = 0;
  Json rows = Json::array();
  for (std::size_t k = 0; k < pool.size(); ++k) {
    const auto& inst = pool[k].instance;
    const auto opt = brute_force_maxcut(inst);
    const double density = density_coefficient(inst);
    const double gamma_local = local_stability_gamma(inst, opt.cut);
    for (std::size_t m : {8, 16, 32}) {
      std::size_t misled = 0, wrong = 0;
      for (std::size_t s = 0; s < kSeeds; ++s) {
        const auto sample_seed = sub_seed(seed, 20 + k, m * kSeeds + s);
        const auto sample = draw_sample(n, m, sample_seed);
        misled += sample_misleads_some_vertex(inst, opt.cut, sample);
        DenseSolverConfig cfg;
        cfg.mode = DenseMode::Seeded;
        cfg.reference = opt.cut;
        cfg.sample_size = m;
        cfg.seed = sample_seed;
        try {
          wrong += !dense_solve(inst, cfg).cut.same_partition(opt.cut);
        } catch (const Error&) {
          ++wrong;
        }
      }
      const double bound = failure_bound(density, gamma_local, m, n);
      const double freq = static_cast<double>(misled) / kSeeds;
      const double limit = bound + 3.0 * binomial_sigma(bound, kSeeds);
      const bool ok = freq <= limit;
      ++checks;
      failed += !ok;
      rows.push_back({{"instance", pool[k].family},
                      {"density", density},
                      {"gamma_local", number_to_json(gamma_local)},
                      {"m", m},
                      {"failure_bound", bound},
                      {"misled_frequency", freq},
                      {"solve_failure_frequency", static_cast<double>(wrong) / kSeeds},
                      {"within_bound", ok}});
    }
  }
  r.detail["seeded"] = std::move(rows);

  // Enumerate mode, m = 10, on the gamma = 8 noise family.
  std::size_t matched = 0;
  double predicted = 0.0;
  constexpr std::size_t kRuns = 50;
  for (std::size_t s = 0; s < kRuns; ++s) {
    const auto inst = gen_stable_bipartite_noise(n, 8.0, sub_seed(seed, 3, s)).instance;
    const auto opt = brute_force_maxcut(inst);
    const double bound =
        failure_bound(density_coefficient(inst), local_stability_gamma(inst, opt.cut), 10, n);
    predicted += 1.0 - bound;
    DenseSolverConfig cfg;
    cfg.mode = DenseMode::Enumerate;
    cfg.sample_size = 10;
    cfg.seed = sub_seed(seed, 4, s);
    try {
      matched += dense_solve(inst, cfg).cut.same_partition(opt.cut);
    } catch (const Error&) {
    }
  }
  predicted /= kRuns;
  const double rate = static_cast<double>(matched) / kRuns;
  const bool applies = predicted >= 0.5;
  const bool enumerate_ok = !applies || rate > 0.5;
  r.detail["enumerate"] = {{"runs", kRuns},
                           {"match_rate", rate},
                           {"predicted_success_rate", predicted},
                           {"bound_predicts_majority", applies},
                           {"passed", enumerate_ok}};
  r.passed = failed == 0 && enumerate_ok;
  r.summary = std::to_string(checks - failed) + "/" + std::to_string(checks) +
              " seeded frequencies within bound+3sigma; enumerate m=10 match rate " +
              std::to_string(rate) +
              (applies ? "" : " (bound predicts < 50%, requirement not triggered)");
  return r;
}

// ---------------------------------------------------------------- criterion 3

CriterionResult metric_reduction(std::uint64_t seed) {
  CriterionResult r{3, "metric-reduction", false, {}, Json::object()};
  std::size_t weight_bad = 0, density_bad = 0, local_bad = 0, tau_bad = 0, cuts = 0;
  double worst_density_ratio = 0.0;
  constexpr std::size_t kInstances = 100;
  for (std::size_t i = 0; i < kInstances; ++i) {
    Rng rng(sub_seed(seed, 5, i));
    const std::size_t n = 4 + 2 * (i % 5);
    const auto inst =
        gen_euclidean_metric(n, 1 + i % 3, rng.uniform(0.2, 4.0), rng.next_u64()).instance;
    const auto normalized = normalize_total_weight(inst).instance;
    const auto map = split_instance(normalized);
    // Every cut with vertex 0 in S.
    for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << (n - 1)); ++mask) {
      std::vector<bool> side(n);
      side[0] = true;
      for (std::size_t v = 1; v < n; ++v) side[v] = (mask >> (v - 1)) & 1U;
      const Cut cut(std::move(side));
      const Cut lifted = lift_cut(map, cut);
      ++cuts;
      weight_bad += !approx_eq(cut_weight(map.split, lifted), cut_weight(normalized, cut));
      local_bad += !approx_eq(local_stability_gamma(map.split, lifted),
                              local_stability_gamma(normalized, cut));
    }
    const double nn = static_cast<double>(n);
    const double limit = 4.0 / ((1.0 - 1.0 / nn) * (1.0 - 1.0 / nn));
    const double density = density_coefficient(map.split);
    worst_density_ratio = std::max(worst_density_ratio, density / limit);
    density_bad += !approx_geq(limit, density);
    for (std::size_t v = 0; v < map.split.size(); ++v) {
      tau_bad += !approx_geq(map.split.degree(v), 1.0);
    }
  }
  r.detail = {{"instances", kInstances},
              {"cuts_checked", cuts},
              {"weight_mismatches", weight_bad},
              {"local_stability_mismatches", local_bad},
              {"density_bound_violations", density_bad},
              {"worst_density_over_bound", worst_density_ratio},
              {"split_degree_below_one", tau_bad}};
  const auto bad = weight_bad + local_bad + density_bad + tau_bad;
  r.passed = bad == 0;
  r.summary = std::to_string(kInstances) + " instances, " + std::to_string(cuts) +
              " cuts lifted, " + std::to_string(bad) + " violations";
  return r;
}

// ------------------------------------------------------------ criteria 4 and 5

struct MetricCase {
  Instance instance;
  MaxCutResult opt;
  double gamma_local;
};

/// Euclidean instances (n <= 12) with unique optimum and oracle gamma_loc > 3.
std::vector<MetricCase> stable_metric_pool(std::uint64_t seed, std::size_t count) {
  std::vector<MetricCase> pool;
  for (std::size_t i = 0; pool.size() < count && i < 100 * count; ++i) {
    Rng rng(sub_seed(seed, 6, i));
    const std::size_t n = 4 + 2 * (i % 5);
    auto inst = gen_euclidean_metric(n, 1 + i % 3, rng.uniform(1.5, 5.0), rng.next_u64()).instance;
    auto opt = brute_force_maxcut(inst);
    if (opt.optimal_count != 1) continue;
    const double gl = local_stability_gamma(inst, opt.cut);
    if (!(gl > 3.0)) continue;
    pool.push_back({std::move(inst), std::move(opt), gl});
  }
  return pool;
}

/// Exhaustive: is `members` equal to some closed ball B(c, r), r a distance from c?
bool is_any_ball(const Instance& inst, const std::vector<bool>& members) {
  for (std::size_t c = 0; c < inst.size(); ++c) {
    for (std::size_t y = 0; y < inst.size(); ++y) {
      if (closed_ball(inst, c, inst.weight(c, y)) == members) return true;
    }
  }
  return false;
}

CriterionResult ball_theorem(std::uint64_t seed) {
  CriterionResult r{4, "ball-theorem", false, {}, Json::object()};
  const auto pool = stable_metric_pool(seed, 100);
  std::size_t not_ball = 0, solver_wrong = 0;
  for (const auto& c : pool) {
    const auto& side = c.opt.cut.sides();
    if (!is_any_ball(c.instance, side) && !is_any_ball(c.instance, c.opt.cut.complement().sides())) {
      ++not_ball;
    }
    solver_wrong += !approx_eq(ball_enumeration_solve(c.instance).weight, c.opt.weight);
  }
  const bool pool_ok = pool.size() == 100 && not_ball == 0 && solver_wrong == 0;

  const auto tight = gen_tightness_example(2);
  const auto opt = brute_force_maxcut(tight.instance);
  const double gamma = cut_stability_gamma(tight.instance, opt.cut);
  const bool gamma_in_range = gamma > 2.0 && gamma < 3.0;
  const bool no_ball = !is_any_ball(tight.instance, opt.cut.sides()) &&
                       !is_any_ball(tight.instance, opt.cut.complement().sides());
  const double ball_weight = ball_enumeration_solve(tight.instance).weight;
  const bool suboptimal = ball_weight < opt.weight && !approx_eq(ball_weight, opt.weight);
  Json sizes = Json::array();
  for (std::size_t k = 2; k <= 4; ++k) {
    const auto t = gen_tightness_example(k);
    sizes.push_back({{"n_pairs", k}, {"gamma", cut_stability_gamma(t.instance, t.planted_cut)}});
  }
  r.detail = {{"stable_instances", pool.size()},
              {"optimum_not_a_ball", not_ball},
              {"ball_solver_suboptimal", solver_wrong},
              {"tightness",
               {{"unique_optimum", opt.optimal_count == 1},
                {"planted_is_optimum", opt.cut.same_partition(tight.planted_cut)},
                {"gamma", gamma},
                {"gamma_local", local_stability_gamma(tight.instance, opt.cut)},
                {"gamma_in_2_3", gamma_in_range},
                {"neither_side_a_ball", no_ball},
                {"oracle_weight", opt.weight},
                {"ball_weight", ball_weight},
                {"ball_strictly_suboptimal", suboptimal},
                {"gamma_by_size", std::move(sizes)}}}};
  r.passed = pool_ok && gamma_in_range && no_ball && suboptimal && opt.optimal_count == 1;
  r.summary = std::to_string(pool.size() - not_ball) + "/" + std::to_string(pool.size()) +
              " optima are balls, ball solver optimal on " +
              std::to_string(pool.size() - solver_wrong) + "; tightness(2): gamma=" +
              std::to_string(gamma) + (gamma_in_range ? " in (2,3)" : " NOT in (2,3)") +
              (no_ball ? ", no side is a ball" : ", a side is a ball") +
              (suboptimal ? ", ball solver suboptimal" : ", ball solver optimal");
  return r;
}

CriterionResult cut_edge_bound(std::uint64_t seed) {
  CriterionResult r{5, "cut-edges-are-large", false, {}, Json::object()};
  const auto pool = stable_metric_pool(seed, 100);
  std::size_t violated = 0;
  double worst = kInf;
  for (const auto& c : pool) {
    const auto check = cut_edge_lower_bound_check(c.instance, c.opt.cut, c.gamma_local);
    violated += !check.holds;
    worst = std::min(worst, check.weight / check.bound);
  }
  r.detail = {{"instances", pool.size()},
              {"violations", violated},
              {"min_weight_over_bound", number_to_json(worst)}};
  r.passed = pool.size() == 100 && violated == 0;
  r.summary = std::to_string(pool.size() - violated) + "/" + std::to_string(pool.size()) +
              " instances satisfy the bound at gamma = oracle gamma_loc";
  return r;
}

// ---------------------------------------------------------------- criterion 6

CriterionResult merge_solvers(std::uint64_t seed) {
  CriterionResult r{6, "sqrt-n-solver", false, {}, Json::object()};
  constexpr std::array<std::size_t, 3> sizes = {8, 10, 12};
  std::size_t sqrt_total = 0, sqrt_ok = 0, no_pair = 0, warm_total = 0, warm_ok = 0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const auto n = sizes[k];
    const std::size_t quota = k == 0 ? 34 : 33;
    const double threshold = sqrt_stability_threshold(n);
    for (std::size_t i = 0, got = 0; got < quota; ++i) {
      const auto inst =
          gen_stable_bipartite_noise(n, threshold * 1.1, sub_seed(seed, 7, k * 10000 + i)).instance;
      const auto opt = brute_force_maxcut(inst);
      const double gamma = cut_stability_gamma(inst, opt.cut);
      if (opt.optimal_count != 1 || !(gamma > threshold)) continue;
      ++got;
      ++sqrt_total;
      try {
        sqrt_ok += sqrt_stable_solve(inst, gamma).cut.same_partition(opt.cut);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvariantViolation) ++no_pair;
      }
    }
    for (std::size_t i = 0, got = 0; got < quota; ++i) {
      const double target = 2.0 * static_cast<double>(n);
      const auto inst =
          gen_stable_bipartite_noise(n, target * 1.1, sub_seed(seed, 8, k * 10000 + i)).instance;
      const auto opt = brute_force_maxcut(inst);
      if (opt.optimal_count != 1 || !approx_geq(cut_stability_gamma(inst, opt.cut), target)) continue;
      ++got;
      ++warm_total;
      try {
        warm_ok += warmup_2n_solve(inst).cut.same_partition(opt.cut);
      } catch (const Error&) {
      }
    }
  }
  r.detail = {{"sqrt_instances", sqrt_total},
              {"sqrt_matched", sqrt_ok},
              {"no_pair_signals", no_pair},
              {"warmup_instances", warm_total},
              {"warmup_matched", warm_ok}};
  r.passed = sqrt_ok == sqrt_total && no_pair == 0 && warm_ok == warm_total;
  r.summary = "sqrt-n solver " + std::to_string(sqrt_ok) + "/" + std::to_string(sqrt_total) +
              ", no-pair signals " + std::to_string(no_pair) + ", warm-up " +
              std::to_string(warm_ok) + "/" + std::to_string(warm_total);
  return r;
}

// ---------------------------------------------------------------- criterion 7

CriterionResult spanning_tree_rate(std::uint64_t seed) {
  CriterionResult r{7, "spanning-tree-success-rate", true, {}, Json::object()};
  constexpr std::size_t n = 12;
  constexpr std::size_t kSeeds = 2000;
  constexpr std::size_t kInstancesPerGamma = 3;
  Json rows = Json::array();
  std::size_t checks = 0, failed = 0;
  for (double target : {10.0, 20.0, kInf}) {
    for (std::size_t i = 0, got = 0; got < kInstancesPerGamma; ++i) {
      const auto inst = gen_stable_bipartite_noise(n, target, sub_seed(seed, 9, i)).instance;
      const auto opt = brute_force_maxcut(inst);
      const double gamma = cut_stability_gamma(inst, opt.cut);
      if (opt.optimal_count != 1 || !approx_geq(gamma, target)) continue;
      ++got;
      std::size_t hits = 0;
      for (std::size_t s = 0; s < kSeeds; ++s) {
        auto rng = Rng::stream(sub_seed(seed, 10, i), s);
        hits += spanning_tree_sample(inst, rng).same_partition(opt.cut);
      }
      const double rate = static_cast<double>(hits) / kSeeds;
      const double bound = spanning_tree_success_bound(gamma, n);
      const bool ok = std::isinf(target) ? hits == kSeeds
                                         : rate >= bound - 3.0 * binomial_sigma(bound, kSeeds);
      ++checks;
      failed += !ok;
      rows.push_back({{"gamma_target", number_to_json(target)},
                      {"gamma", number_to_json(gamma)},
                      {"success_rate", rate},
                      {"bound", bound},
                      {"passed", ok}});
    }
  }
  r.detail["runs"] = std::move(rows);
  r.passed = failed == 0;
  r.summary = std::to_string(checks - failed) + "/" + std::to_string(checks) +
              " instances at or above (g/(g+1))^(n-1) - 3 sigma over " + std::to_string(kSeeds) +
              " seeds";
  return r;
}

// ---------------------------------------------------------------- criterion 8

CriterionResult spectral_certificate(std::uint64_t seed) {
  CriterionResult r{8, "spectral-certificate", false, {}, Json::object()};
  std::size_t considered = 0, qualifying = 0, certified = 0;
  auto check = [&](const Instance& inst) {
    ++considered;
    const auto opt = brute_force_maxcut(inst);
    const auto cond = distinguished_condition(inst, opt.cut);
    if (!cond.exceeds_h_threshold) return;
    ++qualifying;
    const auto cert = psd_rank_certificate(build_spectral_bundle(inst, opt.cut), opt.cut);
    certified += cert.verdict == CertificateVerdict::Certified && cert.kernel_matches_cut;
  };
  check(cycle4());
  for (std::size_t i = 0; i < 120; ++i) {
    Rng rng(sub_seed(seed, 11, i));
    const std::size_t n = 8 + 2 * (i % 5);
    switch (i % 4) {
      case 0: {
        constexpr std::array<double, 4> gammas = {10.0, 20.0, 50.0, kInf};
        check(gen_stable_bipartite_noise(n, gammas[(i / 4) % 4], rng.next_u64()).instance);
        break;
      }
      case 1: check(gen_euclidean_metric(std::min<std::size_t>(n, 14), 1 + i % 3,
                                         rng.uniform(2.0, 6.0), rng.next_u64()).instance);
        break;
      case 2: check(gen_planted_partition(n, rng.uniform(0.7, 1.0), rng.uniform(0.0, 0.2),
                                          rng.next_u64()).instance);
        break;
      default: check(gen_stable_bipartite_noise(n, rng.uniform(2.0, 8.0), rng.next_u64()).instance);
    }
  }

  // C4 concrete numbers.
  const auto c4 = cycle4();
  const auto cut = Cut::from_members(4, {0, 2});
  const auto bundle = build_spectral_bundle(c4, cut);
  const Eigen::Vector4d expected(0.0, 2.0, 2.0, 4.0);
  const double spectrum_err = (bundle.eigenvalues - expected).cwiseAbs().maxCoeff();
  const auto c4_cond = distinguished_condition(c4, cut);
  const double threshold_err = std::abs(c4_cond.h_threshold - (8.0 + 4.0 * std::sqrt(3.0)));
  const bool c4_ok = spectrum_err <= 1e-8 && threshold_err <= 1e-8;
  r.detail = {{"instances", considered},
              {"satisfying_hypothesis", qualifying},
              {"certified_with_matching_kernel", certified},
              {"c4_spectrum_error", spectrum_err},
              {"c4_threshold", c4_cond.h_threshold},
              {"c4_threshold_error", threshold_err}};
  r.passed = qualifying > 0 && certified == qualifying && c4_ok;
  r.summary = std::to_string(certified) + "/" + std::to_string(qualifying) +
              " hypothesis instances certified; C4 spectrum and threshold " +
              (c4_ok ? "reproduce" : "DO NOT reproduce");
  return r;
}

// ---------------------------------------------------------------- criterion 9

/// GW battery families (n <= 16).
Instance gw_family_instance(std::size_t i, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = 6 + 2 * ((i / 6) % 6);
  switch (i % 6) {
    case 0: return gen_planted_partition(n, rng.uniform(0.6, 1.0), rng.uniform(0.0, 0.5),
                                         rng.next_u64()).instance;
    case 1: return gen_stable_bipartite_noise(n, rng.uniform(1.0, 10.0), rng.next_u64()).instance;
    case 2: return gen_euclidean_metric(n, 1 + i % 3, rng.uniform(0.2, 4.0), rng.next_u64()).instance;
    case 3: return gen_matching_epsilon(n / 2, rng.uniform(0.001, 0.999));
    case 4: return permuted(gen_tightness_example(2 + (i / 6) % 2).instance, rng.next_u64());
    default: return gen_infinite_stable_not_distinguished(n / 2, rng.uniform(0.001, 0.5)).instance;
  }
}

CriterionResult gw_battery(std::uint64_t seed) {
  CriterionResult r{9, "gw-battery", false, {}, Json::object()};
  constexpr std::size_t kInstances = 200;
  std::size_t converged = 0, gap_bad = 0, compared = 0, dual_bad = 0, weak_bad = 0;
  std::size_t disagree = 0, escalated = 0, bipolar = 0;
  double worst_gap = 0.0, worst_dual = 0.0;
  for (std::size_t i = 0; i < kInstances; ++i) {
    const auto inst = gw_family_instance(i, sub_seed(seed, 12, i));
    const double scale = problem_scale(inst);
    GwOptions a, b;
    a.seed = sub_seed(seed, 13, i);
    b.seed = sub_seed(seed, 14, i);
    const auto sa = gw_primal_solve(inst, a);
    const auto sb = gw_primal_solve(inst, b);
    for (const auto* s : {&sa, &sb}) {
      weak_bad += s->dual.dual_value > s->primal_value + 1e-9 * scale;
      if (!s->converged) continue;
      ++converged;
      worst_gap = std::max(worst_gap, s->dual.gap / scale);
      gap_bad += !(s->dual.gap < 1e-6 * scale);
    }
    if (sa.dual.gap < 1e-6 * scale && sb.dual.gap < 1e-6 * scale) {
      ++compared;
      const double dev = (sa.dual.diag - sb.dual.diag).cwiseAbs().maxCoeff();
      worst_dual = std::max(worst_dual, dev / scale);
      dual_bad += !(dev <= 1e-4 * scale);
    }
    const auto opt = brute_force_maxcut(inst);
    const auto report = bipolarity_check(inst, opt.cut, a);
    disagree += !report.agree;
    escalated += report.escalated;
    bipolar += report.agree && report.gw_bipolar;
  }

  // Concrete cases.
  const auto c4 = cycle4();
  const auto k3 = triangle();
  const auto s4 = gw_primal_solve(c4, {});
  const auto s3 = gw_primal_solve(k3, {});
  const bool c4_ok = std::abs(s4.primal_value + 8.0) <= 1e-6 &&
                     (s4.dual.diag.array() + 2.0).abs().maxCoeff() <= 1e-6;
  const bool k3_ok = std::abs(s3.primal_value + 3.0) <= 1e-6 &&
                     (s3.dual.diag.array() + 1.0).abs().maxCoeff() <= 1e-6;
  const auto k3_cut = Cut::from_members(3, {0});
  const auto k3_report = bipolarity_check(k3, k3_cut);
  const Eigen::Vector3d u(0.0, 1.0, -1.0);
  const Eigen::MatrixXd k3_shifted = k3.matrix() + Eigen::MatrixXd(k3_report.shift.asDiagonal());
  const double k3_form = u.dot(k3_shifted * u);
  const bool k3_false = !k3_report.gw_bipolar && !k3_report.delta_is_glev &&
                        !k3_report.shift_psd && !k3_report.dual_matches &&
                        std::abs(k3_form + 2.0) <= 1e-12;

  const auto c4_cut = Cut::from_members(4, {0, 2});
  const auto strong = strongly_bipolar_perturb(c4, c4_cut, 0.1);
  const auto strong_bundle = build_spectral_bundle(strong, c4_cut);
  const bool lambda2_positive = strong_bundle.eigenvalues(1) > strong_bundle.tolerance;
  const Eigen::VectorXd delta = c4_cut.delta();
  const Eigen::MatrixXd target = delta * delta.transpose();
  double gram_err = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    GwOptions o;
    o.seed = sub_seed(seed, 15, s);
    gram_err = std::max(gram_err, (gw_primal_solve(strong, o).gram - target).cwiseAbs().maxCoeff());
  }
  const bool strong_ok = lambda2_positive && gram_err <= 1e-3;

  r.detail = {{"instances", kInstances},
              {"converged_solves", converged},
              {"gap_violations", gap_bad},
              {"worst_gap_over_scale", worst_gap},
              {"weak_duality_violations", weak_bad},
              {"dual_pairs_compared", compared},
              {"dual_disagreements", dual_bad},
              {"worst_dual_deviation_over_scale", worst_dual},
              {"bipolarity_disagreements", disagree},
              {"bipolarity_escalations", escalated},
              {"gw_bipolar_instances", bipolar},
              {"c4_primal", s4.primal_value},
              {"c4_ok", c4_ok},
              {"k3_primal", s3.primal_value},
              {"k3_ok", k3_ok},
              {"k3_quadratic_form", k3_form},
              {"k3_not_bipolar", k3_false},
              {"strong_c4_lambda2", strong_bundle.eigenvalues(1)},
              {"strong_c4_gram_error", gram_err},
              {"strong_c4_ok", strong_ok}};
  r.passed = converged > 0 && gap_bad == 0 && weak_bad == 0 && compared > 0 && dual_bad == 0 &&
             disagree == 0 && c4_ok && k3_ok && k3_false && strong_ok;
  r.summary = std::to_string(converged) + " converged solves, " + std::to_string(gap_bad) +
              " gap violations, " + std::to_string(dual_bad) + " dual disagreements, " +
              std::to_string(disagree) + " bipolarity disagreements (" +
              std::to_string(escalated) + " escalated); C4/K3/strong cases " +
              (c4_ok && k3_ok && k3_false && strong_ok ? "pass" : "FAIL");
  return r;
}

// --------------------------------------------------------------- criterion 10

CriterionResult locally_stable_count(std::uint64_t seed) {
  CriterionResult r{10, "locally-stable-cut-count", false, {}, Json::object()};
  std::size_t over = 0, max_count = 0;
  double max_ratio = 0.0;
  constexpr std::size_t kInstances = 50;
  for (std::size_t i = 0; i < kInstances; ++i) {
    Rng rng(sub_seed(seed, 16, i));
    const std::size_t n = 6 + 2 * (i % 5);
    Instance inst = i % 3 == 0   ? gen_stable_bipartite_noise(n, 1.0, rng.next_u64()).instance
                    : i % 3 == 1 ? gen_euclidean_metric(n, 2, rng.uniform(0.2, 3.0), rng.next_u64()).instance
                                 : gen_planted_partition(n, 0.9, 0.5, rng.next_u64()).instance;
    const auto count = enumerate_locally_stable_cuts(inst, 1.1).size();
    const double envelope = std::pow(static_cast<double>(n), 3.0);
    over += static_cast<double>(count) > envelope;
    max_count = std::max(max_count, count);
    max_ratio = std::max(max_ratio, static_cast<double>(count) / envelope);
  }
  const auto matching = gen_matching_epsilon(3, 1e-3);
  const auto matching_count = enumerate_locally_stable_cuts(matching, 1.1).size();
  r.detail = {{"instances", kInstances},
              {"over_envelope", over},
              {"max_count", max_count},
              {"max_count_over_n_cubed", max_ratio},
              {"matching_epsilon_count", matching_count}};
  r.passed = over == 0 && matching_count > 2;
  r.summary = std::to_string(kInstances - over) + "/" + std::to_string(kInstances) +
              " counts within n^3 (max " + std::to_string(max_count) +
              "); matching-epsilon count " + std::to_string(matching_count);
  return r;
}

constexpr std::array<Criterion, 10> kCriteria = {{
    {1, "oracle-cross-validation", &oracle_cross_validation},
    {2, "dense-solver-failure-bound", &dense_solver_bounds},
    {3, "metric-reduction", &metric_reduction},
    {4, "ball-theorem", &ball_theorem},
    {5, "cut-edges-are-large", &cut_edge_bound},
    {6, "sqrt-n-solver", &merge_solvers},
    {7, "spanning-tree-success-rate", &spanning_tree_rate},
    {8, "spectral-certificate", &spectral_certificate},
    {9, "gw-battery", &gw_battery},
    {10, "locally-stable-cut-count", &locally_stable_count},
}};

}  // namespace

std::span<const Criterion> acceptance_criteria() { return kCriteria; }

Json criterion_to_json(const CriterionResult& r) {
  return {{"id", r.id},
          {"name", r.name},
          {"passed", r.passed},
          {"summary", r.summary},
          {"detail", r.detail}};
}

Json stability_sweep(std::uint64_t seed) {
  constexpr std::size_t n = 10;
  constexpr std::size_t kInstances = 20;
  const std::vector<std::string> solvers = {"sqrt-stable", "warmup-2n", "spanning-tree",
                                            "dense", "gw"};
  Json rows = Json::array();
  for (double target : {1.5, 2.0, 4.0, 8.0, 16.0, 32.0, kInf}) {
    std::vector<std::size_t> hits(solvers.size(), 0);
    for (std::size_t i = 0; i < kInstances; ++i) {
      const auto s = sub_seed(seed, 17, i);
      const auto inst = gen_stable_bipartite_noise(n, target, s).instance;
      const auto opt = brute_force_maxcut(inst);
      const std::array<std::function<Cut()>, 5> run = {
          [&] { return sqrt_stable_solve(inst).cut; },
          [&] { return warmup_2n_solve(inst).cut; },
          [&] { return spanning_tree_solve(inst, s, 1).cut; },
          [&] {
            DenseSolverConfig cfg;
            cfg.sample_size = 8;
            cfg.seed = s;
            return dense_solve(inst, cfg).cut;
          },
          [&] {
            GwOptions o;
            o.seed = s;
            return gw_solve(inst, o, 16).rounded.cut;
          }};
      for (std::size_t k = 0; k < solvers.size(); ++k) {
        try {
          hits[k] += run[k]().same_partition(opt.cut);
        } catch (const Error&) {
        }
      }
    }
    for (std::size_t k = 0; k < solvers.size(); ++k) {
      rows.push_back({{"gamma_target", number_to_json(target)},
                      {"solver", solvers[k]},
                      {"instances", kInstances},
                      {"matched_oracle", hits[k]},
                      {"success_rate", static_cast<double>(hits[k]) / kInstances}});
    }
  }
  return {{"suite", "stability-sweep"}, {"seed", seed}, {"n", n}, {"rows", std::move(rows)},
          {"passed", true}};
}

Json gw_gap_suite(std::uint64_t seed) {
  const std::vector<std::string> families = {"planted-partition", "stable-bipartite-noise",
                                             "euclidean-metric",  "matching-epsilon",
                                             "tightness",         "infinite-stable-not-distinguished"};
  constexpr std::size_t kPerFamily = 20;
  Json rows = Json::array();
  bool all_ok = true;
  for (std::size_t f = 0; f < families.size(); ++f) {
    std::size_t converged = 0, below = 0;
    double worst = 0.0;
    for (std::size_t j = 0; j < kPerFamily; ++j) {
      const std::size_t i = f + families.size() * j;
      const auto inst = gw_family_instance(i, sub_seed(seed, 18, i));
      GwOptions o;
      o.seed = sub_seed(seed, 19, i);
      const auto s = gw_primal_solve(inst, o);
      if (!s.converged) continue;
      ++converged;
      const double rel = s.dual.gap / problem_scale(inst);
      worst = std::max(worst, rel);
      below += rel < 1e-6;
    }
    all_ok = all_ok && below == converged;
    rows.push_back({{"family", families[f]},
                    {"instances", kPerFamily},
                    {"converged", converged},
                    {"gap_below_1e-6_scale", below},
                    {"worst_gap_over_scale", worst}});
  }
  return {{"suite", "gw-gap"}, {"seed", seed}, {"rows", std::move(rows)}, {"passed", all_ok}};
}

Json bench_suite(std::string_view suite, std::uint64_t seed) {
  if (suite == "stability-sweep") return stability_sweep(seed);
  if (suite == "gw-gap") return gw_gap_suite(seed);
  if (suite != "acceptance") {
    throw Error(ErrorKind::InvalidParameter, "unknown suite: " + std::string(suite));
  }
  Json criteria = Json::array();
  bool all = true;
  for (const auto& c : acceptance_criteria()) {
    const auto result = c.run(seed);
    all = all && result.passed;
    criteria.push_back(criterion_to_json(result));
  }
  return {{"suite", "acceptance"}, {"seed", seed}, {"criteria", std::move(criteria)},
          {"passed", all}};
}

}  // namespace stablecut
