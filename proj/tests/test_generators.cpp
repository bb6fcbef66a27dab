#include <doctest.h>

#include <cmath>

#include "reference_oracle.hpp"
#include "stablecut/generators.hpp"
#include "stablecut/oracle.hpp"

using namespace stablecut;

namespace {

bool is_complete_bipartite(const PlantedInstance& p) {
  const auto& g = p.instance;
  for (Vertex i = 0; i < g.size(); ++i) {
    for (Vertex j = i + 1; j < g.size(); ++j) {
      const double want = p.planted_cut.separates(i, j) ? 1.0 : 0.0;
      if (g.weight(i, j) != want) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("planted partition") {
  const auto kb = gen_planted_partition(8, 1.0, 0.0, 3);
  CHECK(is_complete_bipartite(kb));
  CHECK(kb.family == "planted-partition");
  const auto rep = cut_stability_report(kb.instance, kb.planted_cut);
  CHECK(std::isinf(rep.gamma));
  CHECK(rep.is_unique_maxcut);
  const auto sides = std::count(kb.planted_cut.sides().begin(), kb.planted_cut.sides().end(), true);
  CHECK(sides == 4);

  CHECK_THROWS_AS(gen_planted_partition(8, 0.2, 0.5, 1), Error);
  CHECK_THROWS_AS(gen_planted_partition(8, 0.5, 0.5, 1), Error);
  CHECK_THROWS_AS(gen_planted_partition(3, 1.0, 0.0, 1), Error);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = gen_planted_partition(10, 0.7, 0.2, seed);
    CHECK(support_connected(p.instance.matrix()));
    for (Vertex i = 0; i < 10; ++i) {
      for (Vertex j = 0; j < 10; ++j) {
        const double w = p.instance.weight(i, j);
        CHECK((w == 0.0 || w == 1.0));
      }
    }
  }
}

TEST_CASE("generators are deterministic in the seed") {
  const auto a = gen_stable_bipartite_noise(10, 4.0, 11);
  const auto b = gen_stable_bipartite_noise(10, 4.0, 11);
  const auto c = gen_stable_bipartite_noise(10, 4.0, 12);
  CHECK(a.instance.matrix() == b.instance.matrix());
  CHECK(a.planted_cut == b.planted_cut);
  CHECK(a.instance.matrix() != c.instance.matrix());
  CHECK(gen_euclidean_metric(8, 2, 3.0, 5).instance.matrix() ==
        gen_euclidean_metric(8, 2, 3.0, 5).instance.matrix());
  CHECK(gen_planted_partition(12, 0.8, 0.1, 9).instance.matrix() ==
        gen_planted_partition(12, 0.8, 0.1, 9).instance.matrix());
}

TEST_CASE("bipartite noise meets its stability target") {
  const auto p = gen_stable_bipartite_noise(10, 8.0, 3);
  CHECK(p.claimed.oracle_verified);
  REQUIRE(p.claimed.gamma);
  CHECK(*p.claimed.gamma >= 8.0);
  CHECK(ref::gamma(p.instance, p.planted_cut) >= 8.0 * (1 - 1e-9));

  for (double target : {1.5, 2.0, 4.0, 16.0}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto q = gen_stable_bipartite_noise(8, target, seed);
      CAPTURE(target);
      CHECK(approx_geq(ref::gamma(q.instance, q.planted_cut), target));
      CHECK(approx_geq(ref::gamma_local(q.instance, q.planted_cut), target));
      for (Vertex i = 0; i < 8; ++i) {
        for (Vertex j = 0; j < 8; ++j) {
          if (i != j && q.planted_cut.separates(i, j)) {
            CHECK(q.instance.weight(i, j) >= 1.0);
            CHECK(q.instance.weight(i, j) <= 2.0);
          }
        }
      }
    }
  }

  const auto inf = gen_stable_bipartite_noise(8, kInf, 4);
  CHECK(std::isinf(ref::gamma(inf.instance, inf.planted_cut)));
  CHECK_THROWS_AS(gen_stable_bipartite_noise(8, 0.9, 1), Error);
}

TEST_CASE("euclidean family is a metric with the planted clusters") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = gen_euclidean_metric(10, 3, 4.0, seed);
    CHECK(is_metric(p.instance).is_metric);
    // with well separated clusters the planted split is the maximum cut
    CHECK(brute_force_maxcut(p.instance).cut.same_partition(p.planted_cut));
  }
  CHECK_THROWS_AS(gen_euclidean_metric(7, 2, 3.0, 1), Error);
  CHECK_THROWS_AS(gen_euclidean_metric(8, 0, 3.0, 1), Error);
  CHECK_THROWS_AS(gen_euclidean_metric(8, 2, 0.0, 1), Error);
}

TEST_CASE("tightness family") {
  for (std::size_t k = 2; k <= 6; ++k) {
    const auto p = gen_tightness_example(k);
    CAPTURE(k);
    CHECK(p.instance.size() == 4 * k);
    CHECK(is_metric(p.instance).is_metric);
    // the pattern of distances fixes the stability of the L|R cut exactly
    if (k <= 4) {
      const double expect = (3.0 * k - 1.0) / (k + 1.0);
      CHECK(cut_stability_gamma(p.instance, p.planted_cut) == doctest::Approx(expect));
    }
  }
  const auto two = gen_tightness_example(2);
  CHECK(two.instance.weight(0, 1) == 2.0);
  CHECK(two.instance.weight(0, 2) == 1.0);
  CHECK(two.instance.weight(0, 4) == 2.0);
  CHECK(two.instance.weight(0, 5) == 3.0);
  const auto best = brute_force_maxcut(two.instance);
  CHECK(best.weight == 44.0);
  CHECK(best.optimal_count == 1);
  CHECK(best.cut.same_partition(two.planted_cut));
  CHECK(cut_stability_gamma(two.instance, two.planted_cut) == doctest::Approx(5.0 / 3.0));
  CHECK(local_stability_gamma(two.instance, two.planted_cut) == doctest::Approx(11.0 / 4.0));
  CHECK_THROWS_AS(gen_tightness_example(1), Error);
}

TEST_CASE("matching family") {
  const auto g = gen_matching_epsilon(3, 1e-3);
  CHECK(g.size() == 6);
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(4, 5) == 1.0);
  CHECK(g.weight(1, 2) == 1e-3);
  CHECK_THROWS_AS(gen_matching_epsilon(0, 1e-3), Error);
  CHECK_THROWS_AS(gen_matching_epsilon(2, 0.0), Error);
}

TEST_CASE("infinitely stable but barely distinguished") {
  const auto p = gen_infinite_stable_not_distinguished(4, 1e-3);
  const auto rep = cut_stability_report(p.instance, p.planted_cut);
  CHECK(std::isinf(rep.gamma));
  CHECK(rep.alpha < 0.01);
  CHECK(rep.alpha > 0.0);
  CHECK(rep.cheeger < 0.3);
  CHECK(ref::alpha(p.instance, p.planted_cut) == doctest::Approx(rep.alpha));
  CHECK_THROWS_AS(gen_infinite_stable_not_distinguished(2, 1.5), Error);
}
