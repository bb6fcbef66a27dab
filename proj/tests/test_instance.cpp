#include <doctest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "reference_oracle.hpp"
#include "stablecut/instance.hpp"
#include "stablecut/oracle.hpp"

using namespace stablecut;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("tolerant comparisons") {
  CHECK(approx_geq(1.0, 1.0 + 1e-12));
  CHECK_FALSE(approx_geq(1.0, 1.0 + 1e-6));
  CHECK(approx_geq(kInf, kInf));
  CHECK(approx_geq(kInf, 5.0));
  CHECK_FALSE(approx_geq(1.0, kInf));
  CHECK_FALSE(approx_geq(-kInf, 0.0));
  CHECK(approx_eq(3.0, 3.0 * (1 + 1e-11)));
  CHECK_FALSE(approx_eq(3.0, 3.001));
  CHECK(approx_eq(0.0, 0.0));
}

TEST_CASE("instance validation") {
  Eigen::MatrixXd ok = fx::c4().matrix();
  CHECK(Instance(ok).size() == 4);

  CHECK(kind_of([] { Instance(Eigen::MatrixXd::Zero(2, 3)); }) == ErrorKind::InvalidInstance);
  CHECK(kind_of([] { Instance(Eigen::MatrixXd(0, 0)); }) == ErrorKind::InvalidInstance);

  auto diag = ok;
  diag(1, 1) = 1.0;
  CHECK(kind_of([&] { Instance{diag}; }) == ErrorKind::InvalidInstance);

  auto neg = ok;
  neg(0, 2) = neg(2, 0) = -0.5;
  CHECK(kind_of([&] { Instance{neg}; }) == ErrorKind::InvalidInstance);

  auto asym = ok;
  asym(0, 1) = 2.0;
  CHECK(kind_of([&] { Instance{asym}; }) == ErrorKind::InvalidInstance);

  auto nan = ok;
  nan(0, 1) = nan(1, 0) = std::nan("");
  CHECK(kind_of([&] { Instance{nan}; }) == ErrorKind::InvalidInstance);

  auto inf = ok;
  inf(0, 1) = inf(1, 0) = kInf;
  CHECK(kind_of([&] { Instance{inf}; }) == ErrorKind::InvalidInstance);

  // two disjoint edges
  CHECK(kind_of([] { Instance::from_edges(4, {{0, 1, 1}, {2, 3, 1}}); }) ==
        ErrorKind::InvalidInstance);
  CHECK(kind_of([] { Instance::from_edges(3, {{0, 3, 1}}); }) == ErrorKind::InvalidInstance);
  CHECK(kind_of([] { Instance::from_edges(3, {{1, 1, 1}}); }) == ErrorKind::InvalidInstance);
  CHECK(kind_of([] { Instance::from_edges(2, {{0, 1, 1}, {1, 0, 2}}); }) ==
        ErrorKind::InvalidInstance);
  CHECK(kind_of([&] { Instance(ok, {"a", "b"}); }) == ErrorKind::InvalidInstance);

  // a single vertex is a valid (if useless) instance
  CHECK(Instance(Eigen::MatrixXd::Zero(1, 1)).size() == 1);
}

TEST_CASE("instance accessors") {
  const auto g = fx::four_point_metric();
  CHECK(g.degree(0) == doctest::Approx(5.0));
  CHECK(g.total_weight() == doctest::Approx(10.0));
  CHECK(g.max_weight() == 2.0);
  CHECK(g.weight(2, 0) == 2.0);
}

TEST_CASE("cut construction and orientation") {
  CHECK(kind_of([] { Cut(std::vector<bool>{true, true}); }) == ErrorKind::InvalidCut);
  CHECK(kind_of([] { Cut(std::vector<bool>{false, false, false}); }) == ErrorKind::InvalidCut);
  CHECK(kind_of([] { Cut::from_members(3, {3}); }) == ErrorKind::InvalidCut);

  const auto c = Cut::from_members(4, {1, 3});
  CHECK(c.separates(0, 1));
  CHECK_FALSE(c.separates(0, 2));
  CHECK(c.delta()(1) == 1.0);
  CHECK(c.delta()(0) == -1.0);
  CHECK(c.canonical().in_s(0));
  CHECK(c.same_partition(c.complement()));
  CHECK_FALSE(c == c.complement());
  CHECK_FALSE(c.same_partition(Cut::from_members(4, {1, 2})));
}

TEST_CASE("subset statistics on small graphs") {
  const auto k3 = fx::k3();
  const auto a_bc = Cut::from_members(3, {0});
  auto s = subset_stats(k3, a_bc, Vertex{1});
  CHECK(s.xi == 1.0);
  CHECK(s.iota == 1.0);
  CHECK(s.tau == 2.0);
  CHECK(s.mu == 2.0);

  const auto c4 = fx::c4();
  const auto best = Cut::from_members(4, {0, 2});
  s = subset_stats(c4, best, Vertex{0});
  CHECK(s.xi == 2.0);
  CHECK(s.iota == 0.0);
  CHECK(s.tau == 2.0);
  CHECK(s.mu == 2.0);

  s = subset_stats(c4, best, Vertex{0}, Vertex{1});
  CHECK(s.xi == 2.0);
  CHECK(s.iota == 0.0);
  CHECK(s.tau == 2.0);
  CHECK(s.mu == 4.0);

  const std::vector<Vertex> everything{0, 1, 2, 3};
  CHECK(kind_of([&] { subset_stats(c4, best, everything); }) == ErrorKind::InvalidSubset);
  const std::vector<Vertex> none;
  CHECK(kind_of([&] { subset_stats(c4, best, none); }) == ErrorKind::InvalidSubset);
  CHECK(kind_of([&] { subset_stats(c4, Cut::from_members(3, {0}), Vertex{0}); }) ==
        ErrorKind::InvalidCut);
}

TEST_CASE("subset statistics satisfy tau = xi + iota and complement symmetry") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = fx::random_sparse(7, seed);
    const auto cut = ref::mask_cut(7, 1 + seed % 120);
    for (std::uint64_t a = 1; a < 127; a += 7) {
      std::vector<Vertex> in, out;
      for (Vertex v = 0; v < 7; ++v) ((a >> v) & 1 ? in : out).push_back(v);
      const auto s = subset_stats(g, cut, in);
      const auto t = subset_stats(g, cut, out);
      CHECK(s.tau == doctest::Approx(s.xi + s.iota));
      CHECK(s.xi == doctest::Approx(t.xi));
      CHECK(s.iota == doctest::Approx(t.iota));
      CHECK(s.mu + t.mu == doctest::Approx(2 * g.total_weight()));
    }
  }
}

TEST_CASE("cut weight") {
  CHECK(cut_weight(fx::c4(), Cut::from_members(4, {0, 2})) == 4.0);
  CHECK(cut_weight(fx::c4(), Cut::from_members(4, {0, 1})) == 2.0);
  CHECK(cut_weight(fx::k3(), Cut::from_members(3, {2})) == 2.0);
  CHECK(kind_of([] { cut_weight(fx::k3(), Cut::from_members(4, {0})); }) == ErrorKind::InvalidCut);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = fx::random_complete(6, seed);
    for (std::uint64_t m = 1; m < 63; ++m) {
      CHECK(cut_weight(g, ref::mask_cut(6, m)) == doctest::Approx(ref::weight_of(g, m)));
    }
  }
}

TEST_CASE("merge vertices") {
  const auto k3 = merge_vertices(fx::k3(), 1, 2);
  CHECK(k3.instance.size() == 2);
  CHECK(k3.instance.weight(0, 1) == 2.0);
  CHECK(k3.mapping == std::vector<Vertex>{0, 1, 1});

  const auto c4 = merge_vertices(fx::c4(), 0, 2);
  REQUIRE(c4.instance.size() == 3);
  // {0,2} -> 0, 1 -> 1, 3 -> 2
  CHECK(c4.instance.weight(0, 1) == 2.0);
  CHECK(c4.instance.weight(0, 2) == 2.0);
  CHECK(c4.instance.weight(1, 2) == 0.0);

  CHECK(kind_of([] { merge_vertices(fx::k3(), 1, 1); }) == ErrorKind::InvalidMerge);
  CHECK(kind_of([] { merge_vertices(fx::k3(), 0, 5); }) == ErrorKind::InvalidMerge);

  const auto labelled = Instance(fx::k3().matrix(), {"a", "b", "c"});
  CHECK(merge_vertices(labelled, 2, 0).instance.labels() ==
        std::vector<std::string>{"a+c", "b"});
}

TEST_CASE("merging preserves cut weight for cuts that keep the pair together") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = fx::random_complete(6, 100 + seed);
    const auto merged = merge_vertices(g, 1, 4);
    for (std::uint64_t m = 1; m < 63; ++m) {
      if (((m >> 1) & 1) != ((m >> 4) & 1)) continue;
      std::vector<bool> side(5);
      for (Vertex v = 0; v < 6; ++v) side[merged.mapping[v]] = (m >> v) & 1;
      if (std::count(side.begin(), side.end(), true) % 5 == 0) continue;
      CHECK(cut_weight(merged.instance, Cut(side)) == doctest::Approx(ref::weight_of(g, m)));
    }
  }
}

TEST_CASE("perturbations") {
  const auto single = Instance::from_edges(2, {{0, 1, 3}});
  Eigen::MatrixXd f = Eigen::MatrixXd::Ones(2, 2);
  f(0, 1) = f(1, 0) = 2.0;
  const auto r = apply_perturbation(single, f);
  CHECK(r.gamma == 2.0);
  CHECK(r.instance.weight(0, 1) == 6.0);

  f(0, 1) = f(1, 0) = 0.5;
  CHECK(kind_of([&] { apply_perturbation(single, f); }) == ErrorKind::InvalidPerturbation);
  f(0, 1) = 2.0;
  f(1, 0) = 3.0;
  CHECK(kind_of([&] { apply_perturbation(single, f); }) == ErrorKind::InvalidPerturbation);
  CHECK(kind_of([&] { apply_perturbation(single, Eigen::MatrixXd::Ones(3, 3)); }) ==
        ErrorKind::InvalidPerturbation);

  // factors on zero-weight pairs do not count
  Eigen::MatrixXd g = Eigen::MatrixXd::Ones(4, 4);
  g(0, 2) = g(2, 0) = 9.0;
  CHECK(apply_perturbation(fx::c4(), g).gamma == 1.0);
}

TEST_CASE("a maximum cut stays maximal under perturbations of gamma below its stability") {
  const auto g = fx::k4_weighted(10, 1);
  const auto best = Cut::from_members(4, {0, 2});
  Eigen::MatrixXd f = Eigen::MatrixXd::Ones(4, 4);
  f(0, 2) = f(2, 0) = 9.5;
  f(1, 3) = f(3, 1) = 9.9;
  const auto p = apply_perturbation(g, f);
  CHECK(brute_force_maxcut(p.instance).cut.same_partition(best));
  f(0, 2) = f(2, 0) = 10.5;
  f(1, 3) = f(3, 1) = 10.5;
  CHECK_FALSE(brute_force_maxcut(apply_perturbation(g, f).instance).cut.same_partition(best));
}

TEST_CASE("density coefficient") {
  CHECK(density_coefficient(fx::c4()) == doctest::Approx(2.0));
  CHECK(density_coefficient(fx::star3()) == doctest::Approx(4.0));
  for (std::size_t n = 2; n <= 8; ++n) {
    Eigen::MatrixXd k = Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n);
    CHECK(density_coefficient(Instance(k)) == doctest::Approx(double(n) / double(n - 1)));
  }
  CHECK(kind_of([] { density_coefficient(Instance(Eigen::MatrixXd::Zero(1, 1))); }) ==
        ErrorKind::DegenerateInstance);
}

TEST_CASE("metric check") {
  const auto bad = Instance::from_edges(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 3}});
  const auto m = is_metric(bad);
  CHECK_FALSE(m.is_metric);
  REQUIRE(m.violation);
  CHECK((*m.violation)[0] == 0);
  CHECK((*m.violation)[1] == 1);
  CHECK((*m.violation)[2] == 2);

  CHECK(is_metric(fx::four_point_metric()).is_metric);
  CHECK(is_metric(fx::k3()).is_metric);
  const auto zero = is_metric(fx::c4());
  CHECK_FALSE(zero.is_metric);
  CHECK((*zero.violation)[1] == (*zero.violation)[2]);
  CHECK(is_metric(Instance::from_edges(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 2}})).is_metric);
}
