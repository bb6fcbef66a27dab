#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "stablecut/generators.hpp"
#include "stablecut/oracle.hpp"
#include "stablecut/spectral_gw.hpp"

using namespace stablecut;

namespace {

const Cut kC4Best = Cut::from_members(4, {0, 2});

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

TEST_CASE("spectral bundle of C4") {
  const auto b = build_spectral_bundle(fx::c4(), kC4Best);
  CHECK(b.w_uncut.isZero());
  CHECK(b.w_cut == fx::c4().matrix());
  CHECK(b.d_prime == Eigen::Vector4d(2, 2, 2, 2));
  REQUIRE(b.eigenvalues.size() == 4);
  CHECK(b.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(b.eigenvalues(2) == doctest::Approx(2.0));
  CHECK(b.eigenvalues(3) == doctest::Approx(4.0));
  REQUIRE(b.kernel);
  CHECK(std::abs((*b.kernel)(0)) == doctest::Approx(0.5));
}

TEST_CASE("certificate verdicts") {
  auto r = psd_rank_certificate(build_spectral_bundle(fx::c4(), kC4Best), kC4Best);
  CHECK(r.verdict == CertificateVerdict::Certified);
  CHECK(r.kernel_matches_cut);
  CHECK(to_string(r.verdict) == "certified");

  const auto other = Cut::from_members(4, {0, 1});
  r = psd_rank_certificate(build_spectral_bundle(fx::c4(), other), other);
  CHECK(r.verdict != CertificateVerdict::Certified);

  const auto k3cut = Cut::from_members(3, {0});
  r = psd_rank_certificate(build_spectral_bundle(fx::k3(), k3cut), k3cut);
  CHECK(r.verdict == CertificateVerdict::NotPsd);
  CHECK(r.lambda1 < 0);
  CHECK(to_string(CertificateVerdict::RankDeficient) == "rank-deficient");
}

TEST_CASE("a certified cut is the unique maximum cut") {
  int certified = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = gen_stable_bipartite_noise(8, 4.0 + seed, seed);
    const auto b = build_spectral_bundle(p.instance, p.planted_cut);
    const auto r = psd_rank_certificate(b, p.planted_cut);
    if (r.verdict != CertificateVerdict::Certified) continue;
    ++certified;
    const auto opt = brute_force_maxcut(p.instance);
    CHECK(opt.optimal_count == 1);
    CHECK(opt.cut.same_partition(p.planted_cut));
  }
  CHECK(certified > 0);
}

TEST_CASE("stability threshold") {
  CHECK(spectral_stability_threshold(0.5) == doctest::Approx(8 + 4 * std::sqrt(3.0)));
  CHECK(spectral_stability_threshold(1.0) == doctest::Approx(2.0));
  CHECK(std::isinf(spectral_stability_threshold(0.0)));
  CHECK(std::isinf(spectral_stability_threshold(-1.0)));
}

TEST_CASE("distinguished condition on C4") {
  const auto r = distinguished_condition(fx::c4(), kC4Best);
  CHECK(std::isinf(r.gamma_local));
  CHECK(r.h_cut == doctest::Approx(0.5));
  CHECK(r.alpha == doctest::Approx(0.5));
  CHECK(r.alpha_threshold == doctest::Approx(14.928203));
  CHECK(r.exceeds_alpha_threshold);
  CHECK(r.exceeds_h_threshold);
  CHECK(r.h_at_least_alpha);
}

TEST_CASE("h of the cut edges is at least alpha") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = gen_stable_bipartite_noise(8, 3.0, 50 + seed);
    CHECK(distinguished_condition(p.instance, p.planted_cut).h_at_least_alpha);
  }
}

TEST_CASE("least eigenvector cut") {
  const auto g = fx::c4();
  const auto r = glev_cut(g, Eigen::Vector4d::Constant(2.0));
  CHECK(r.failure.empty());
  REQUIRE(r.cut);
  CHECK(r.cut->same_partition(kC4Best));
  CHECK(r.lambda1 == doctest::Approx(0.0).epsilon(1e-12));

  CHECK(kind_of([&] { glev_cut(g, Eigen::Vector4d::Zero()); }) == ErrorKind::Precondition);

  // strictly positive definite: the least eigenvector is used all the same
  const auto pd = glev_cut(g, Eigen::Vector4d::Constant(2.0 + 1e-3));
  REQUIRE(pd.cut);
  CHECK(pd.cut->same_partition(kC4Best));

  // W + I on K3 is the all-ones matrix: a double least eigenvalue
  const auto k = glev_cut(fx::k3(), Eigen::Vector3d::Ones());
  CHECK_FALSE(k.cut);
  CHECK_FALSE(k.failure.empty());
}

TEST_CASE("least eigenvector condition and scaling") {
  const auto g = fx::c4();
  const Eigen::Vector4d u(1, 2, 1, 2);
  auto c = glev_stability_condition(g, 4.0, u);
  CHECK(c.ratio == doctest::Approx(4.0));
  CHECK(c.holds);
  CHECK_FALSE(glev_stability_condition(g, 3.9, u).holds);
  const auto unit = glev_stability_condition(g, 1.0, kC4Best.delta());
  CHECK(unit.ratio == 1.0);
  CHECK(unit.holds);
  CHECK_THROWS_AS(glev_stability_condition(g, 4.0, Eigen::Vector4d(1, 0, 1, 1)), Error);

  const auto scaled = glev_scaling_perturbation(g, Eigen::Vector4d::Constant(2.0));
  CHECK(scaled.matrix() == 4.0 * g.matrix());
  const auto signs = glev_scaling_perturbation(g, Eigen::Vector4d(-1, 1, -1, 1));
  CHECK(signs.matrix() == g.matrix());
}

TEST_CASE("Burer-Monteiro on small graphs") {
  const auto edge = gw_primal_solve(Instance::from_edges(2, {{0, 1, 1}}));
  CHECK(edge.primal_value == doctest::Approx(-2.0));
  CHECK(edge.converged);

  const auto c4 = gw_primal_solve(fx::c4());
  CHECK(c4.primal_value == doctest::Approx(-8.0));
  for (int i = 0; i < 4; ++i) CHECK(c4.dual.feasible_diag(i) == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(std::abs(c4.dual.gap) < 1e-8);

  const auto k3 = gw_primal_solve(fx::k3());
  CHECK(k3.primal_value == doctest::Approx(-3.0));
  for (int i = 0; i < 3; ++i) CHECK(k3.dual.feasible_diag(i) == doctest::Approx(-1.0).epsilon(1e-6));
  for (int i = 0; i < 3; ++i) CHECK(k3.vectors.row(i).norm() == doctest::Approx(1.0));
}

TEST_CASE("Burer-Monteiro is seeded and satisfies weak duality") {
  GwOptions opt;
  opt.seed = 9;
  const auto g = fx::random_complete(9, 4);
  const auto a = gw_primal_solve(g, opt);
  const auto b = gw_primal_solve(g, opt);
  CHECK(a.vectors == b.vectors);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto h = fx::random_sparse(5 + seed % 8, seed);
    opt.seed = seed;
    const auto s = gw_primal_solve(h, opt);
    CAPTURE(seed);
    CHECK(s.converged);
    CHECK(s.dual.min_eigenvalue <= 1e-9 * problem_scale(h));
    CHECK(s.primal_value >= s.dual.dual_value - 1e-9 * problem_scale(h));
    CHECK(s.dual.gap <= 1e-6 * problem_scale(h));
    // the relaxation is at least as good as any cut
    const double cut_form = 2 * h.total_weight() - 4 * brute_force_maxcut(h).weight;
    CHECK(s.primal_value <= cut_form + 1e-9 * problem_scale(h));
  }
}

TEST_CASE("dual extraction rejects invalid Gram matrices") {
  CHECK(kind_of([] { gw_dual_extract(fx::c4(), 2.0 * Eigen::Matrix4d::Identity()); }) ==
        ErrorKind::Precondition);
  Eigen::Matrix3d not_psd = Eigen::Matrix3d::Ones();
  not_psd(0, 1) = not_psd(1, 0) = -1;
  CHECK(kind_of([&] { gw_dual_extract(fx::k3(), not_psd); }) == ErrorKind::Precondition);
}

TEST_CASE("hyperplane rounding") {
  const auto s = gw_primal_solve(fx::k3());
  const auto r = gw_round(fx::k3(), s.vectors, 1, 8);
  CHECK(r.weight == 2.0);
  CHECK(r.trials == 8);
  CHECK(r.projection.size() == 3);
  CHECK_THROWS_AS(gw_round(fx::k3(), s.vectors, 1, 0), Error);

  const auto full = gw_solve(fx::c4(), GwOptions{}, 4);
  CHECK(full.rounded.cut.same_partition(kC4Best));
  REQUIRE(full.glev.cut);
  CHECK(full.glev.cut->same_partition(kC4Best));
}

TEST_CASE("bipolarity on C4 and K3") {
  const auto c4 = bipolarity_check(fx::c4(), kC4Best);
  CHECK(c4.shift_psd);
  CHECK(c4.delta_is_glev);
  CHECK(c4.gw_bipolar);
  CHECK(c4.dual_matches);
  CHECK(c4.agree);
  CHECK(c4.cut_value == doctest::Approx(-8.0));

  const auto k3 = bipolarity_check(fx::k3(), Cut::from_members(3, {0}));
  CHECK_FALSE(k3.shift_psd);
  CHECK_FALSE(k3.delta_is_glev);
  CHECK_FALSE(k3.gw_bipolar);
  CHECK_FALSE(k3.dual_matches);
  CHECK(k3.agree);
  CHECK(k3.cut_value == doctest::Approx(-2.0));
}

TEST_CASE("bipolarity verdicts agree on random instances") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = gen_stable_bipartite_noise(6 + 2 * (seed % 3), 2.0 + seed, seed);
    CAPTURE(seed);
    CHECK(bipolarity_check(p.instance, p.planted_cut).agree);
  }
}

TEST_CASE("strongly bipolar perturbation") {
  const auto p = strongly_bipolar_perturb(fx::c4(), kC4Best, 0.1);
  CHECK(p.weight(0, 1) == doctest::Approx(1.1));
  const auto cert = psd_rank_certificate(build_spectral_bundle(p, kC4Best), kC4Best);
  CHECK(cert.verdict == CertificateVerdict::Certified);

  CHECK(strongly_bipolar_perturb(fx::c4(), kC4Best, 0.0).matrix() == fx::c4().matrix());
  CHECK(kind_of([] { strongly_bipolar_perturb(fx::c4(), kC4Best, -0.1); }) ==
        ErrorKind::InvalidParameter);
  CHECK(kind_of([] { strongly_bipolar_perturb(fx::k3(), Cut::from_members(3, {0}), 0.1); }) ==
        ErrorKind::Precondition);
}
