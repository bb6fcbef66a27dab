#include "stablecut/cli.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "stablecut/bench.hpp"
#include "stablecut/dense_solver.hpp"
#include "stablecut/generators.hpp"
#include "stablecut/io.hpp"
#include "stablecut/metric_solver.hpp"
#include "stablecut/oracle.hpp"
#include "stablecut/rng.hpp"
#include "stablecut/spectral_gw.hpp"
#include "stablecut/stable_solver.hpp"

namespace stablecut {
namespace {

/// Misuse detected after parsing (missing seed, inconsistent flags).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SizeLimit:
    case ErrorKind::Precondition:
    case ErrorKind::DegenerateInstance:
    case ErrorKind::SolverFailed:
    case ErrorKind::InvariantViolation:
      return kExitSolverFailure;
    default:
      return kExitUsage;
  }
}

double parse_gamma(const std::string& text) {
  if (text == "inf") return kInf;
  try {
    std::size_t used = 0;
    const double g = std::stod(text, &used);
    if (used == text.size()) return g;
  } catch (const std::exception&) {
  }
  throw UsageError("invalid gamma: " + text);
}

void require_seed(const std::optional<std::uint64_t>& seed, const std::string& what) {
  if (!seed) throw UsageError(what + " is randomized and needs --seed");
}

// ------------------------------------------------------------------ gen

struct GenArgs {
  std::string family;
  std::size_t n = 10;
  double p = 0.9;
  double q = 0.1;
  std::string gamma = "8";
  std::size_t dim = 2;
  double separation = 4.0;
  std::size_t pairs = 2;
  double eps = 1e-3;
  std::optional<std::uint64_t> seed;
  std::string output;
  std::string sidecar;
};

Json run_gen(const GenArgs& a) {
  std::optional<PlantedInstance> planted;
  std::optional<Instance> bare;
  Json params;
  if (a.family == "planted-partition") {
    require_seed(a.seed, a.family);
    planted = gen_planted_partition(a.n, a.p, a.q, *a.seed);
    params = {{"n", a.n}, {"p", a.p}, {"q", a.q}};
  } else if (a.family == "stable-bipartite-noise") {
    require_seed(a.seed, a.family);
    const double g = parse_gamma(a.gamma);
    planted = gen_stable_bipartite_noise(a.n, g, *a.seed);
    params = {{"n", a.n}, {"gamma", number_to_json(g)}};
  } else if (a.family == "euclidean-metric") {
    require_seed(a.seed, a.family);
    planted = gen_euclidean_metric(a.n, a.dim, a.separation, *a.seed);
    params = {{"n", a.n}, {"dim", a.dim}, {"separation", a.separation}};
  } else if (a.family == "tightness") {
    planted = gen_tightness_example(a.pairs);
    params = {{"pairs", a.pairs}};
  } else if (a.family == "matching-epsilon") {
    bare = gen_matching_epsilon(a.pairs, a.eps);
    params = {{"pairs", a.pairs}, {"eps", a.eps}};
  } else {
    planted = gen_infinite_stable_not_distinguished(a.pairs, a.eps);
    params = {{"pairs", a.pairs}, {"eps", a.eps}};
  }
  const Instance& inst = planted ? planted->instance : *bare;
  Json sidecar;
  if (planted) {
    sidecar = planted_sidecar_to_json(*planted);
  } else {
    sidecar = {{"family", a.family}, {"seed", nullptr}, {"rng", Rng::kAlgorithm},
               {"planted_cut", nullptr}, {"claimed", nullptr}};
  }
  sidecar["params"] = std::move(params);

  if (a.output.empty()) return {{"instance", instance_to_json(inst)}, {"sidecar", sidecar}};
  const std::string sidecar_path =
      a.sidecar.empty() ? std::filesystem::path(a.output).replace_extension(".sidecar.json").string()
                        : a.sidecar;
  write_json_file(a.output, instance_to_json(inst));
  write_json_file(sidecar_path, sidecar);
  return {{"instance_file", a.output}, {"sidecar_file", sidecar_path}, {"n", inst.size()},
          {"sidecar", std::move(sidecar)}};
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string algo;
  std::string instance;
  std::size_t m = 8;
  std::string mode = "enumerate";
  double eps = 1.0;
  std::optional<double> density;
  std::string reference;
  std::string gamma;
  bool auto_gamma = false;
  std::optional<std::size_t> reps;
  std::size_t trials = 32;
  std::optional<std::uint64_t> seed;
  bool oracle = false;
  bool timing = false;
};

DenseSolverConfig dense_config(const SolveArgs& a, const Instance& inst) {
  DenseSolverConfig cfg;
  cfg.eps = a.eps;
  cfg.density = a.density ? *a.density : density_coefficient(inst);
  cfg.sample_size = a.m;
  cfg.seed = *a.seed;
  if (a.mode == "enumerate") {
    cfg.mode = DenseMode::Enumerate;
  } else if (a.mode == "seeded") {
    cfg.mode = DenseMode::Seeded;
    if (a.reference.empty()) throw UsageError("--mode seeded needs --reference");
    cfg.reference = cut_from_json(read_json_file(a.reference), inst.size());
  } else if (a.mode.rfind("random:", 0) == 0) {
    cfg.mode = DenseMode::RandomPartitions;
    try {
      cfg.random_partitions = std::stoul(a.mode.substr(7));
    } catch (const std::exception&) {
      throw UsageError("invalid --mode " + a.mode);
    }
  } else {
    throw UsageError("--mode must be enumerate, seeded or random:K");
  }
  return cfg;
}

Json run_solve(const SolveArgs& a) {
  const auto inst = instance_from_json(read_json_file(a.instance));
  const auto started = std::chrono::steady_clock::now();
  const bool randomized = a.algo == "dense" || a.algo == "metric-dense" ||
                          a.algo == "spanning-tree" || a.algo == "gw";
  if (randomized) require_seed(a.seed, "--algo " + a.algo);

  std::optional<Cut> cut;
  Json details = Json::object();
  if (a.algo == "brute") {
    auto r = brute_force_maxcut(inst);
    details["optimal_count"] = r.optimal_count;
    cut = std::move(r.cut);
  } else if (a.algo == "dense") {
    const auto cfg = dense_config(a, inst);
    auto r = dense_solve(inst, cfg);
    details = {{"m", cfg.sample_size}, {"density", cfg.density}, {"mode", a.mode},
               {"sample", r.sample}, {"partitions_tried", r.partitions_tried},
               {"candidates", r.candidates}};
    cut = std::move(r.cut);
  } else if (a.algo == "metric-dense") {
    const auto cfg = dense_config(a, inst);
    auto r = metric_dense_solve(inst, cfg);
    details = {{"m", cfg.sample_size}, {"mode", a.mode}, {"split_size", r.split_size},
               {"candidates", r.candidates}, {"repaired", r.repaired}};
    cut = std::move(r.cut);
  } else if (a.algo == "ball") {
    auto r = ball_enumeration_solve(inst);
    details = {{"center", r.ball.center}, {"radius", r.ball.radius},
               {"balls_considered", r.balls_considered}};
    cut = std::move(r.cut);
  } else if (a.algo == "sqrt-stable" || a.algo == "warmup-2n") {
    std::optional<double> gamma;
    if (!a.gamma.empty()) gamma = parse_gamma(a.gamma);
    auto r = a.algo == "warmup-2n" ? warmup_2n_solve(inst) : sqrt_stable_solve(inst, gamma);
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses) {
      witnesses.push_back({{"kind", to_string(w.kind)},
                           {"pair", {w.pair.first, w.pair.second}}});
    }
    details["gamma"] = gamma ? number_to_json(*gamma) : Json("auto");
    details["merges"] = std::move(witnesses);
    cut = std::move(r.cut);
  } else if (a.algo == "spanning-tree") {
    std::size_t reps = 0;
    if (a.reps) {
      reps = *a.reps;
    } else if (!a.gamma.empty()) {
      reps = default_spanning_tree_repetitions(parse_gamma(a.gamma), inst.size());
    } else {
      throw UsageError("--algo spanning-tree needs --reps or --gamma");
    }
    auto r = spanning_tree_solve(inst, *a.seed, reps);
    details["repetitions"] = r.repetitions;
    cut = std::move(r.cut);
  } else {  // gw
    GwOptions options;
    options.seed = *a.seed;
    auto r = gw_solve(inst, options, a.trials);
    details = {{"primal_value", r.solution.primal_value},
               {"dual_value", r.solution.dual.dual_value},
               {"duality_gap", r.solution.dual.gap},
               {"converged", r.solution.converged},
               {"sweeps", r.solution.sweeps},
               {"trials", r.rounded.trials},
               {"glev_cut", r.glev.cut ? cut_to_json(*r.glev.cut)["side"] : Json(nullptr)}};
    if (!r.glev.failure.empty()) details["glev_failure"] = r.glev.failure;
    cut = std::move(r.rounded.cut);
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  Json report;
  report["algorithm"] = a.algo;
  report["instance"] = {{"file", a.instance}, {"n", inst.size()}};
  report["seed"] = a.seed ? Json(*a.seed) : Json(nullptr);
  report["cut"] = cut_to_json(*cut)["side"];
  report["weight"] = cut_weight(inst, *cut);
  Json verdicts = Json::object();
  if (a.oracle) {
    const auto opt = brute_force_maxcut(inst);
    report["oracle_weight"] = opt.weight;
    verdicts["matched_oracle"] = approx_eq(cut_weight(inst, *cut), opt.weight);
  }
  report["verdicts"] = std::move(verdicts);
  report["details"] = std::move(details);
  if (a.timing) report["wall_time_s"] = elapsed;
  return report;
}

// ------------------------------------------------------ verify / certify

Json run_verify(const std::string& instance_path, const std::string& cut_path) {
  const auto inst = instance_from_json(read_json_file(instance_path));
  StabilityReport r = cut_path.empty()
                          ? instance_stability(inst)
                          : cut_stability_report(inst, cut_from_json(read_json_file(cut_path),
                                                                     inst.size()));
  Json out = stability_report_to_json(r);
  try {
    out["density_coefficient"] = density_coefficient(inst);
  } catch (const Error&) {
    out["density_coefficient"] = nullptr;
  }
  out["is_metric"] = is_metric(inst).is_metric;
  return out;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json run_certify(const std::string& instance_path, const std::string& cut_path,
                 bool bipolarity, const std::optional<std::uint64_t>& seed) {
  const auto inst = instance_from_json(read_json_file(instance_path));
  const auto cut = cut_from_json(read_json_file(cut_path), inst.size());
  const auto bundle = build_spectral_bundle(inst, cut);
  const auto cert = psd_rank_certificate(bundle, cut);
  const Eigen::MatrixXd shifted = inst.matrix() + Eigen::MatrixXd(bundle.d_prime.asDiagonal());
  Json out;
  out["verdict"] = to_string(cert.verdict);
  out["lambda1"] = cert.lambda1;
  out["lambda2"] = number_to_json(cert.lambda2);
  out["tolerance"] = cert.tolerance;
  out["kernel_matches_cut"] = cert.kernel_matches_cut;
  out["kernel_residual"] = (shifted * cut.delta()).cwiseAbs().maxCoeff();
  out["eigenvalues"] = vector_json(bundle.eigenvalues);
  out["d_prime"] = vector_json(bundle.d_prime);
  if (inst.size() <= kSubsetCap) {
    const auto d = distinguished_condition(inst, cut);
    out["distinguished"] = {{"gamma_local", number_to_json(d.gamma_local)},
                            {"h_cut", d.h_cut},
                            {"alpha", d.alpha},
                            {"h_threshold", number_to_json(d.h_threshold)},
                            {"alpha_threshold", number_to_json(d.alpha_threshold)},
                            {"exceeds_h_threshold", d.exceeds_h_threshold},
                            {"exceeds_alpha_threshold", d.exceeds_alpha_threshold},
                            {"h_at_least_alpha", d.h_at_least_alpha}};
  }
  if (bipolarity) {
    require_seed(seed, "--bipolarity");
    GwOptions options;
    options.seed = *seed;
    const auto b = bipolarity_check(inst, cut, options);
    out["bipolarity"] = {{"gw_bipolar", b.gw_bipolar},
                         {"delta_is_glev", b.delta_is_glev},
                         {"shift_psd", b.shift_psd},
                         {"dual_matches", b.dual_matches},
                         {"agree", b.agree},
                         {"escalated", b.escalated},
                         {"min_eigenvalue", b.min_eigenvalue},
                         {"cut_value", b.cut_value},
                         {"primal_value", b.primal_value},
                         {"dual_gap", b.dual_gap},
                         {"dual_deviation", b.dual_deviation}};
  }
  return out;
}

// ---------------------------------------------------------------- split

Json run_split(const std::string& in, const std::string& out_path, const std::string& map_path) {
  const auto inst = instance_from_json(read_json_file(in));
  const auto normalized = normalize_total_weight(inst);
  const auto map = split_instance(normalized.instance);
  write_json_file(out_path, instance_to_json(map.split));
  if (!map_path.empty()) {
    write_json_file(map_path, {{"scale", normalized.scale},
                               {"pi", map.pi},
                               {"multiplicity", map.multiplicity},
                               {"fiber_start", map.fiber_start}});
  }
  return {{"n", inst.size()},
          {"split_n", map.split.size()},
          {"scale", normalized.scale},
          {"density_coefficient", density_coefficient(map.split)},
          {"split_file", out_path},
          {"map_file", map_path.empty() ? Json(nullptr) : Json(map_path)}};
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"MAXCUT solvers and certificates for stable instances", "stablecut"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance and its sidecar");
  gen_cmd->add_option("family", gen.family, "Instance family")
      ->required()
      ->check(CLI::IsMember({"planted-partition", "stable-bipartite-noise", "euclidean-metric",
                             "tightness", "matching-epsilon", "infinite-stable-not-distinguished"}));
  gen_cmd->add_option("--n", gen.n, "Vertex count");
  gen_cmd->add_option("--p", gen.p, "Cross-edge probability");
  gen_cmd->add_option("--q", gen.q, "Same-side edge probability");
  gen_cmd->add_option("--gamma", gen.gamma, "Stability target (number or inf)");
  gen_cmd->add_option("--dim", gen.dim, "Euclidean dimension");
  gen_cmd->add_option("--separation", gen.separation, "Cluster separation");
  gen_cmd->add_option("--pairs", gen.pairs, "Pair count");
  gen_cmd->add_option("--eps", gen.eps, "Small weight");
  gen_cmd->add_option("--seed", gen.seed, "PRNG seed");
  gen_cmd->add_option("-o,--output", gen.output, "Instance file");
  gen_cmd->add_option("--sidecar", gen.sidecar, "Sidecar file (default <output>.sidecar.json)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run a solver on an instance file");
  solve_cmd->add_option("instance", solve.instance, "Instance file")->required();
  solve_cmd->add_option("--algo", solve.algo, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"brute", "dense", "metric-dense", "ball", "sqrt-stable",
                             "warmup-2n", "spanning-tree", "gw"}));
  solve_cmd->add_option("--m", solve.m, "Sample size");
  solve_cmd->add_option("--mode", solve.mode, "enumerate | seeded | random:K");
  solve_cmd->add_option("--eps", solve.eps, "Accuracy parameter");
  solve_cmd->add_option("--density", solve.density, "Density coefficient C (default: measured)");
  solve_cmd->add_option("--reference", solve.reference, "Reference cut for seeded mode");
  auto* gamma_opt = solve_cmd->add_option("--gamma", solve.gamma, "Known stability (number or inf)");
  solve_cmd->add_flag("--auto", solve.auto_gamma, "Use the size threshold in every round")
      ->excludes(gamma_opt);
  solve_cmd->add_option("--reps", solve.reps, "Spanning-tree repetitions");
  solve_cmd->add_option("--trials", solve.trials, "Rounding trials")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", solve.seed, "PRNG seed");
  solve_cmd->add_flag("--oracle", solve.oracle, "Compare against the brute-force optimum");
  solve_cmd->add_flag("--timing", solve.timing, "Include wall time (breaks byte determinism)");

  std::string verify_instance, verify_cut;
  auto* verify_cmd = app.add_subcommand("verify", "Print the stability report");
  verify_cmd->add_option("instance", verify_instance, "Instance file")->required();
  verify_cmd->add_option("--cut", verify_cut, "Cut file (default: the oracle maximum cut)");

  std::string cert_instance, cert_cut;
  bool spectral = false, bipolarity = false;
  std::optional<std::uint64_t> cert_seed;
  auto* certify_cmd = app.add_subcommand("certify", "Spectral optimality certificate for a cut");
  certify_cmd->add_flag("--spectral", spectral, "PSD/rank certificate of W + D'")->required();
  certify_cmd->add_option("instance", cert_instance, "Instance file")->required();
  certify_cmd->add_option("cut", cert_cut, "Cut file")->required();
  certify_cmd->add_flag("--bipolarity", bipolarity, "Also run the GW bipolarity check");
  certify_cmd->add_option("--seed", cert_seed, "PRNG seed for the GW solve");

  std::string split_in, split_out, split_map;
  auto* split_cmd = app.add_subcommand("split", "Normalize and split a metric instance");
  split_cmd->add_option("instance", split_in, "Instance file")->required();
  split_cmd->add_option("-o,--output", split_out, "Split instance file")->required();
  split_cmd->add_option("--map", split_map, "Vertex map file");

  std::string suite;
  std::uint64_t bench_seed = 0;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite");
  bench_cmd->add_option("--suite", suite, "acceptance | stability-sweep | gw-gap")->required();
  bench_cmd->add_option("--seed", bench_seed, "PRNG seed")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Json result;
    int code = kExitOk;
    if (*gen_cmd) {
      result = run_gen(gen);
    } else if (*solve_cmd) {
      if (solve.auto_gamma) solve.gamma.clear();
      result = run_solve(solve);
    } else if (*verify_cmd) {
      result = run_verify(verify_instance, verify_cut);
    } else if (*certify_cmd) {
      result = run_certify(cert_instance, cert_cut, bipolarity, cert_seed);
    } else if (*split_cmd) {
      result = run_split(split_in, split_out, split_map);
    } else {
      result = bench_suite(suite, bench_seed);
      if (!result["passed"].get<bool>()) code = kExitSolverFailure;
    }
    out << dump(result);
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    if (code == kExitSolverFailure) {
      out << dump({{"status", "failed"}, {"error", to_string(e.kind())}, {"message", e.what()}});
    }
    return code;
  }
}

}  // namespace stablecut
