#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "reference_oracle.hpp"
#include "stablecut/generators.hpp"
#include "stablecut/metric_solver.hpp"
#include "stablecut/oracle.hpp"

using namespace stablecut;

TEST_CASE("normalization") {
  const auto c4 = normalize_total_weight(fx::c4());
  CHECK(c4.scale == 4.0);
  CHECK(2 * c4.instance.total_weight() == doctest::Approx(32.0));
  CHECK(c4.instance.weight(0, 1) == 4.0);

  const auto same = normalize_total_weight(Instance::from_edges(2, {{0, 1, 4}}));
  CHECK(same.scale == 1.0);

  const auto g = fx::random_complete(7, 3);
  const auto ng = normalize_total_weight(g);
  CHECK(2 * ng.instance.total_weight() == doctest::Approx(98.0));
  // rescaling preserves every stability ratio
  const auto c = brute_force_maxcut(g).cut;
  CHECK(cut_stability_gamma(ng.instance, c) == doctest::Approx(cut_stability_gamma(g, c)));
}

TEST_CASE("split of tiny instances") {
  const auto two = split_instance(Instance::from_edges(2, {{0, 1, 4}}));
  CHECK(two.split.size() == 8);
  CHECK(two.split.weight(0, 4) == 0.25);
  CHECK(two.split.weight(0, 1) == 0.0);
  CHECK(two.multiplicity == std::vector<std::size_t>{4, 4});
  CHECK(two.fiber_start == std::vector<std::size_t>{0, 4});

  const auto c4 = split_instance(normalize_total_weight(fx::c4()).instance);
  CHECK(c4.split.size() == 32);
  CHECK(c4.split.weight(0, 8) == doctest::Approx(1.0 / 16.0));
  CHECK(c4.split.weight(0, 16) == 0.0);
  CHECK(c4.pi[31] == 3);

  CHECK_THROWS_AS(split_instance(fx::c4()), Error);
}

TEST_CASE("lift and project are inverse and preserve cut weight") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto p = gen_euclidean_metric(6, 2, 3.0, seed);
    const auto norm = normalize_total_weight(p.instance);
    const auto map = split_instance(norm.instance);
    CHECK(2 * map.split.total_weight() == doctest::Approx(2 * norm.instance.total_weight()));
    for (std::uint64_t m = 1; m < 63; ++m) {
      const auto c = ref::mask_cut(6, m);
      const auto lifted = lift_cut(map, c);
      CHECK(cut_weight(map.split, lifted) == doctest::Approx(cut_weight(norm.instance, c)));
      const auto back = project_cut(map, lifted);
      REQUIRE(back);
      CHECK(*back == c);
    }
  }
}

TEST_CASE("lifted cuts keep per-vertex stability") {
  const auto g = fx::four_point_metric();
  const auto map = split_instance(normalize_total_weight(g).instance);
  const auto c = Cut::from_members(4, {0, 1});
  CHECK(local_stability_gamma(map.split, lift_cut(map, c)) ==
        doctest::Approx(local_stability_gamma(g, c)));
  // every split vertex has weighted degree at least 1 after normalization
  for (Vertex v = 0; v < map.split.size(); ++v) CHECK(map.split.degree(v) >= 1.0 - 1e-9);
}

TEST_CASE("projection rejects split fibers and repair takes the majority") {
  const auto map = split_instance(Instance::from_edges(2, {{0, 1, 4}}));
  std::vector<bool> side{true, true, true, false, false, false, false, false};
  const Cut mixed(side);
  CHECK_FALSE(project_cut(map, mixed));
  const auto fixed = repair_and_project(map, mixed);
  REQUIRE(fixed);
  CHECK(fixed->in_s(0));
  CHECK_FALSE(fixed->in_s(1));

  // an even split of a fiber goes to S-bar, which here leaves S empty
  std::vector<bool> tie{true, true, false, false, false, false, false, false};
  CHECK_FALSE(repair_and_project(map, Cut(tie)));
  CHECK_THROWS_AS(project_cut(map, Cut::from_members(3, {0})), Error);
  CHECK_THROWS_AS(lift_cut(map, Cut::from_members(3, {0})), Error);
}

TEST_CASE("metric dense solver") {
  const auto p = gen_euclidean_metric(6, 2, 4.0, 1);
  DenseSolverConfig cfg;
  cfg.sample_size = 10;
  cfg.seed = 2;
  const auto r = metric_dense_solve(p.instance, cfg);
  CHECK(r.split_size >= 6);
  CHECK(cut_weight(p.instance, r.cut) == doctest::Approx(r.weight));
  CHECK(r.cut.same_partition(brute_force_maxcut(p.instance).cut));

  cfg.mode = DenseMode::Seeded;
  cfg.reference = p.planted_cut;
  const auto s = metric_dense_solve(p.instance, cfg);
  CHECK(s.candidates <= 1);

  CHECK_THROWS_AS(metric_dense_solve(fx::c4(), DenseSolverConfig{}), Error);
}

TEST_CASE("balls") {
  const auto g = fx::four_point_metric();
  const auto b = closed_ball(g, 0, 1.0);
  CHECK(b == std::vector<bool>{true, true, false, false});
  CHECK(closed_ball(g, 0, 0.5) == std::vector<bool>{true, false, false, false});
  const auto found = find_ball(g, {false, false, true, true});
  REQUIRE(found);
  CHECK(closed_ball(g, found->center, found->radius) == std::vector<bool>{false, false, true, true});
  CHECK_FALSE(find_ball(g, {true, false, true, false}));
}

TEST_CASE("ball enumeration") {
  const auto r = ball_enumeration_solve(fx::four_point_metric());
  CHECK(r.weight == 8.0);
  CHECK(r.cut.same_partition(Cut::from_members(4, {0, 1})));
  CHECK_THROWS_AS(ball_enumeration_solve(fx::c4()), Error);

  // the optimum of the two-pair tightness instance is not a ball
  const auto t = gen_tightness_example(2);
  const auto tr = ball_enumeration_solve(t.instance);
  CHECK(tr.weight == 37.0);
  CHECK_FALSE(find_ball(t.instance, t.planted_cut.sides()));
  CHECK_FALSE(find_ball(t.instance, t.planted_cut.complement().sides()));
}

TEST_CASE("ball enumeration recovers stable euclidean optima") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = gen_euclidean_metric(10, 2, 5.0, seed);
    const auto rep = instance_stability(p.instance);
    if (!(rep.gamma_local > 3.0) || !rep.is_unique_maxcut) continue;
    CAPTURE(seed);
    CHECK(ball_enumeration_solve(p.instance).cut.same_partition(rep.cut));
  }
}

TEST_CASE("cut edge lower bound") {
  const auto g = fx::four_point_metric();
  const auto chk = cut_edge_lower_bound_check(g, Cut::from_members(4, {0, 1}), 4.0);
  CHECK(chk.holds);
  CHECK(chk.bound == doctest::Approx(1.5));
  CHECK(chk.weight == 2.0);
  CHECK_THROWS_AS(cut_edge_lower_bound_check(g, Cut::from_members(3, {0}), 4.0), Error);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = gen_euclidean_metric(8, 2, 3.0, 40 + seed);
    const auto rep = instance_stability(p.instance);
    if (!rep.is_unique_maxcut) continue;
    CHECK(cut_edge_lower_bound_check(p.instance, rep.cut, rep.gamma_local).holds);
  }
}
