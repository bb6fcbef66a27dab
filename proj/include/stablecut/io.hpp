#ifndef STABLECUT_IO_HPP
#define STABLECUT_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "stablecut/generators.hpp"
#include "stablecut/instance.hpp"
#include "stablecut/oracle.hpp"

namespace stablecut {

using Json = nlohmann::ordered_json;

/// Finite doubles as numbers, +/-inf as the strings "inf" / "-inf".
Json number_to_json(double x);
double number_from_json(const Json& j);

/// {"n": n, "weights": [[i, j, w], ...]} with i < j and w > 0, plus "labels"
/// when any label is set.
Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

Json cut_to_json(const Cut& cut);
Cut cut_from_json(const Json& j, std::size_t n);

Json stability_report_to_json(const StabilityReport& r);

/// Planted cut, family, seed, claims and the PRNG algorithm.
Json planted_sidecar_to_json(const PlantedInstance& p);

/// Parse errors, I/O failures and schema violations all throw Error(Parse).
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

/// Deterministic two-space-indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace stablecut

#endif  // STABLECUT_IO_HPP
