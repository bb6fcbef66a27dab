#include "stablecut/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "stablecut/rng.hpp"

namespace stablecut {
namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) parse_error("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) parse_error(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t index_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    parse_error(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

Json optional_number(const std::optional<double>& x) {
  return x ? number_to_json(*x) : Json(nullptr);
}

}  // namespace

Json number_to_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  parse_error("expected a number or \"inf\"");
}

Json instance_to_json(const Instance& inst) {
  Json out;
  out["n"] = inst.size();
  Json weights = Json::array();
  for (std::size_t i = 0; i < inst.size(); ++i) {
    for (std::size_t j = i + 1; j < inst.size(); ++j) {
      if (inst.weight(i, j) != 0.0) weights.push_back(Json::array({i, j, inst.weight(i, j)}));
    }
  }
  out["weights"] = std::move(weights);
  const auto& labels = inst.labels();
  const bool labelled = std::any_of(labels.begin(), labels.end(),
                                    [](const std::string& l) { return !l.empty(); });
  if (labelled) out["labels"] = labels;
  return out;
}

Instance instance_from_json(const Json& j) {
  const std::size_t n = index_from_json(field(j, "n"), "\"n\"");
  const Json& weights = field(j, "weights");
  if (!weights.is_array()) parse_error("\"weights\" must be an array");
  std::vector<WeightedEdge> edges;
  edges.reserve(weights.size());
  for (const auto& e : weights) {
    if (!e.is_array() || e.size() != 3) parse_error("each weight must be [i, j, w]");
    if (!e[2].is_number()) parse_error("weight must be a number");
    edges.push_back({index_from_json(e[0], "vertex index"), index_from_json(e[1], "vertex index"),
                     e[2].get<double>()});
  }
  std::vector<std::string> labels;
  if (const auto it = j.find("labels"); it != j.end()) {
    if (!it->is_array()) parse_error("\"labels\" must be an array");
    for (const auto& l : *it) {
      if (!l.is_string()) parse_error("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return Instance::from_edges(n, edges, std::move(labels));
}

Json cut_to_json(const Cut& cut) {
  Json side = Json::array();
  for (std::size_t v = 0; v < cut.size(); ++v) side.push_back(cut.in_s(v) ? 1 : 0);
  return Json{{"side", std::move(side)}};
}

Cut cut_from_json(const Json& j, std::size_t n) {
  const Json& side = field(j, "side");
  if (!side.is_array()) parse_error("\"side\" must be an array");
  if (side.size() != n) {
    throw Error(ErrorKind::InvalidCut, "cut has " + std::to_string(side.size()) +
                                           " entries, instance has " + std::to_string(n));
  }
  std::vector<bool> bits;
  bits.reserve(n);
  for (const auto& b : side) {
    if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1)) {
      parse_error("\"side\" entries must be 0 or 1");
    }
    bits.push_back(b.get<int>() == 1);
  }
  return Cut(std::move(bits));
}

Json stability_report_to_json(const StabilityReport& r) {
  Json out;
  out["cut"] = cut_to_json(r.cut)["side"];
  out["cut_weight"] = r.cut_weight;
  out["maxcut_weight"] = r.maxcut_weight;
  out["optimal_count"] = r.optimal_count;
  out["is_maxcut"] = r.is_maxcut;
  out["is_unique_maxcut"] = r.is_unique_maxcut;
  out["gamma"] = number_to_json(r.gamma);
  out["gamma_local"] = number_to_json(r.gamma_local);
  out["alpha"] = number_to_json(r.alpha);
  out["cheeger"] = number_to_json(r.cheeger);
  return out;
}

Json planted_sidecar_to_json(const PlantedInstance& p) {
  Json out;
  out["family"] = p.family;
  out["seed"] = p.seed;
  out["rng"] = Rng::kAlgorithm;
  out["planted_cut"] = cut_to_json(p.planted_cut)["side"];
  Json claimed;
  claimed["gamma"] = optional_number(p.claimed.gamma);
  claimed["gamma_local"] = optional_number(p.claimed.gamma_local);
  claimed["alpha"] = optional_number(p.claimed.alpha);
  claimed["oracle_verified"] = p.claimed.oracle_verified;
  claimed["rejected_draws"] = p.claimed.rejected;
  out["claimed"] = std::move(claimed);
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) parse_error("cannot write " + path.string());
  out << dump(j);
  if (!out) parse_error("write failed for " + path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace stablecut
