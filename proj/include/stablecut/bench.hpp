#ifndef STABLECUT_BENCH_HPP
#define STABLECUT_BENCH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "stablecut/io.hpp"

namespace stablecut {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;  // one line
  Json detail;
};

struct Criterion {
  int id;
  const char* name;
  CriterionResult (*run)(std::uint64_t seed);
};

/// The acceptance experiments in order. Each is a deterministic function of
/// the seed.
std::span<const Criterion> acceptance_criteria();

Json criterion_to_json(const CriterionResult& r);

/// Success rate of every solver against the oracle across stability targets.
Json stability_sweep(std::uint64_t seed);

/// Duality gaps of the Burer-Monteiro solver across generator families.
Json gw_gap_suite(std::uint64_t seed);

/// suite is one of acceptance, stability-sweep, gw-gap; anything else throws
/// InvalidParameter. The result has "passed" set for every suite.
Json bench_suite(std::string_view suite, std::uint64_t seed);

}  // namespace stablecut

#endif  // STABLECUT_BENCH_HPP
