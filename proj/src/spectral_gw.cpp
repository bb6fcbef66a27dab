#include "stablecut/spectral_gw.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "stablecut/rng.hpp"

namespace stablecut {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

Eigen::SelfAdjointEigenSolver<MatrixXd> eig(const MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<MatrixXd>(m);
}

double min_eigenvalue(const MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

/// Cut from the sign pattern of v; nullopt if a coordinate is ~0 or one side is empty.
std::optional<Cut> sign_cut(const VectorXd& v) {
  const double cutoff = 1e-8 * v.cwiseAbs().maxCoeff();
  std::vector<bool> side(static_cast<std::size_t>(v.size()));
  std::size_t in_s = 0;
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) <= cutoff) return std::nullopt;
    side[static_cast<std::size_t>(i)] = v(i) > 0.0;
    in_s += v(i) > 0.0;
  }
  if (in_s == 0 || in_s == side.size()) return std::nullopt;
  return Cut(std::move(side));
}

/// D_ii = -delta_i sum_j W_ij delta_j.
VectorXd bipolar_shift(const Instance& inst, const Cut& cut) {
  const VectorXd delta = cut.delta();
  return -(delta.array() * (inst.matrix() * delta).array()).matrix();
}

}  // namespace

std::string_view to_string(CertificateVerdict v) {
  switch (v) {
    case CertificateVerdict::Certified: return "certified";
    case CertificateVerdict::NotPsd: return "not-psd";
    case CertificateVerdict::RankDeficient: return "rank-deficient";
  }
  return "unknown";
}

double problem_scale(const Instance& inst) {
  return static_cast<double>(inst.size()) * inst.max_weight();
}

double eigen_tolerance(const MatrixXd& m) {
  return 1e-8 * (1.0 + m.cwiseAbs().maxCoeff() * static_cast<double>(m.rows()));
}

SpectralBundle build_spectral_bundle(const Instance& inst, const Cut& cut) {
  const auto n = inst.size();
  if (cut.size() != n) throw Error(ErrorKind::InvalidCut, "cut size mismatch");
  SpectralBundle b;
  const auto m = static_cast<Index>(n);
  b.w_cut = MatrixXd::Zero(m, m);
  b.w_uncut = MatrixXd::Zero(m, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      (cut.separates(i, j) ? b.w_cut : b.w_uncut)(i, j) = inst.weight(i, j);
    }
  }
  b.d_cut = b.w_cut.rowwise().sum();
  b.d_uncut = b.w_uncut.rowwise().sum();
  b.d = b.d_cut + b.d_uncut;
  b.d_prime = b.d_cut - b.d_uncut;
  const MatrixXd shifted = inst.matrix() + MatrixXd(b.d_prime.asDiagonal());
  const auto solver = eig(shifted);
  b.eigenvalues = solver.eigenvalues();
  b.eigenvectors = solver.eigenvectors();
  b.tolerance = eigen_tolerance(shifted);
  if (n >= 2 && std::abs(b.eigenvalues(0)) <= b.tolerance && b.eigenvalues(1) > b.tolerance) {
    b.kernel = b.eigenvectors.col(0);
  }
  return b;
}

CertificateResult psd_rank_certificate(const SpectralBundle& bundle, const Cut& cut) {
  CertificateResult r;
  r.tolerance = bundle.tolerance;
  r.lambda1 = bundle.eigenvalues(0);
  r.lambda2 = bundle.eigenvalues.size() > 1 ? bundle.eigenvalues(1) : kInf;
  if (r.lambda1 < -r.tolerance) {
    r.verdict = CertificateVerdict::NotPsd;
  } else if (!(r.lambda2 > r.tolerance)) {
    r.verdict = CertificateVerdict::RankDeficient;
  } else {
    r.verdict = CertificateVerdict::Certified;
  }
  if (bundle.kernel) {
    const auto kernel_cut = sign_cut(*bundle.kernel);
    r.kernel_matches_cut = kernel_cut && kernel_cut->same_partition(cut);
  }
  if (r.verdict == CertificateVerdict::Certified && !r.kernel_matches_cut) {
    r.verdict = CertificateVerdict::RankDeficient;
  }
  return r;
}

double spectral_stability_threshold(double x) {
  if (!(x > 0.0)) return kInf;
  const double c = std::min(x, 1.0);
  return 2.0 / (1.0 - std::sqrt(1.0 - c * c));
}

DistinguishedReport distinguished_condition(const Instance& inst, const Cut& cut,
                                            std::size_t cap) {
  DistinguishedReport r;
  const auto bundle = build_spectral_bundle(inst, cut);
  r.gamma_local = local_stability_gamma(inst, cut);
  r.h_cut = cheeger_constant(bundle.w_cut, cap);
  r.alpha = distinction_alpha(inst, cut, cap);
  r.alpha_threshold = spectral_stability_threshold(r.alpha);
  r.h_threshold = spectral_stability_threshold(r.h_cut);
  r.exceeds_alpha_threshold = r.gamma_local > r.alpha_threshold;
  r.exceeds_h_threshold = r.gamma_local > r.h_threshold;
  r.h_at_least_alpha = approx_geq(r.h_cut, r.alpha);
  return r;
}

GlevResult glev_cut(const Instance& inst, const VectorXd& shift) {
  if (shift.size() != static_cast<Index>(inst.size())) {
    throw Error(ErrorKind::InvalidParameter, "shift has the wrong length");
  }
  const MatrixXd m = inst.matrix() + MatrixXd(shift.asDiagonal());
  const double tol = eigen_tolerance(m);
  const auto solver = eig(m);
  GlevResult r;
  r.lambda1 = solver.eigenvalues()(0);
  r.lambda2 = solver.eigenvalues().size() > 1 ? solver.eigenvalues()(1) : kInf;
  r.eigenvector = solver.eigenvectors().col(0);
  if (r.lambda1 < -tol) {
    throw Error(ErrorKind::Precondition, "W + diag(shift) is not positive semidefinite");
  }
  if (!(r.lambda2 - r.lambda1 > tol)) {
    r.failure = "least eigenvalue is not simple";
    return r;
  }
  r.cut = sign_cut(r.eigenvector);
  if (!r.cut) r.failure = "least eigenvector has a zero coordinate or constant sign";
  return r;
}

GlevCondition glev_stability_condition(const Instance& inst, double gamma, const VectorXd& u) {
  const auto n = inst.size();
  if (u.size() != static_cast<Index>(n)) {
    throw Error(ErrorKind::InvalidParameter, "vector has the wrong length");
  }
  if ((u.array() == 0.0).any()) {
    throw Error(ErrorKind::InvalidParameter, "ratio undefined: vector has a zero coordinate");
  }
  double hi = 0.0, lo = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = std::abs(u(static_cast<Index>(i)) * u(static_cast<Index>(j)));
      hi = std::max(hi, p);
      lo = std::min(lo, p);
    }
  }
  GlevCondition c;
  c.ratio = hi / lo;
  c.holds = approx_geq(gamma, c.ratio);
  return c;
}

Instance glev_scaling_perturbation(const Instance& inst, const VectorXd& v) {
  if (v.size() != static_cast<Index>(inst.size())) {
    throw Error(ErrorKind::InvalidParameter, "vector has the wrong length");
  }
  if ((v.array() == 0.0).any()) {
    throw Error(ErrorKind::InvalidParameter, "scaling vector has a zero coordinate");
  }
  const VectorXd a = v.cwiseAbs();
  return Instance(a.asDiagonal() * inst.matrix() * a.asDiagonal(), inst.labels());
}

DualExtraction gw_dual_extract(const Instance& inst, const MatrixXd& gram) {
  const auto n = static_cast<Index>(inst.size());
  if (gram.rows() != n || gram.cols() != n) {
    throw Error(ErrorKind::InvalidParameter, "Gram matrix has the wrong shape");
  }
  if ((gram.diagonal().array() - 1.0).abs().maxCoeff() > 1e-6 ||
      min_eigenvalue(gram) < -eigen_tolerance(gram)) {
    throw Error(ErrorKind::Precondition, "Gram matrix is not primal feasible");
  }
  const MatrixXd& w = inst.matrix();
  DualExtraction d;
  d.diag = (gram * w).diagonal();
  const MatrixXd slack = w - MatrixXd(d.diag.asDiagonal());
  d.min_eigenvalue = min_eigenvalue(slack);
  d.complementarity = (gram * slack).cwiseAbs().maxCoeff();
  const double primal = (gram.array() * w.array()).sum();
  d.raw_gap = std::abs(primal - d.diag.sum());
  const double shift = std::min(0.0, d.min_eigenvalue);
  d.feasible_diag = d.diag.array() + shift;
  d.dual_value = d.diag.sum() + static_cast<double>(n) * shift;
  d.gap = primal - d.dual_value;
  return d;
}

GwSolution gw_primal_solve(const Instance& inst, const GwOptions& options) {
  const auto n = static_cast<Index>(inst.size());
  const Index rank = options.rank == 0 ? n : static_cast<Index>(options.rank);
  if (rank < 2) throw Error(ErrorKind::InvalidParameter, "rank must be >= 2");
  const MatrixXd& w = inst.matrix();

  Rng rng(options.seed);
  MatrixXd v(n, rank);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < rank; ++k) v(i, k) = rng.normal();
    v.row(i).normalize();
  }
  auto objective = [&] { return (v.transpose() * w * v).trace(); };

  GwSolution s;
  double value = objective();
  const double zero_cut = 1e-14 * (1.0 + inst.max_weight());
  for (s.sweeps = 1; s.sweeps <= options.max_sweeps; ++s.sweeps) {
    double step = 0.0;
    for (Index i = 0; i < n; ++i) {
      Eigen::RowVectorXd g = w.row(i) * v;
      const double norm = g.norm();
      if (norm <= zero_cut) continue;
      g = -g / norm;
      step = std::max(step, (g - v.row(i)).norm());
      v.row(i) = g;
    }
    const double next = objective();
    const double change = std::abs(value - next);
    value = next;
    if (change < options.relative_tolerance * std::max(1.0, std::abs(value)) &&
        step < options.step_tolerance) {
      s.converged = true;
      break;
    }
  }
  s.sweeps = std::min(s.sweeps, options.max_sweeps);
  for (Index i = 0; i < n; ++i) v.row(i).normalize();
  s.vectors = std::move(v);
  s.gram = s.vectors * s.vectors.transpose();
  s.primal_value = (s.gram.array() * w.array()).sum();
  s.dual = gw_dual_extract(inst, s.gram);
  return s;
}

RoundResult gw_round(const Instance& inst, const MatrixXd& vectors, std::uint64_t seed,
                     std::size_t trials) {
  if (trials < 1) throw Error(ErrorKind::InvalidParameter, "trials must be >= 1");
  if (vectors.rows() != static_cast<Index>(inst.size())) {
    throw Error(ErrorKind::InvalidParameter, "vector count does not match instance");
  }
  Rng rng(seed);
  std::optional<RoundResult> best;
  VectorXd direction(vectors.cols());
  for (std::size_t t = 0; t < trials; ++t) {
    std::optional<Cut> cut;
    VectorXd u;
    // A zero projection or a one-sided pattern has probability zero for
    // distinct vectors; resample a bounded number of times.
    for (int attempt = 0; attempt < 100 && !cut; ++attempt) {
      for (Index k = 0; k < direction.size(); ++k) direction(k) = rng.normal();
      u = vectors * direction;
      cut = sign_cut(u);
    }
    if (!cut) continue;
    const double weight = cut_weight(inst, *cut);
    if (!best || weight > best->weight) best = RoundResult{std::move(*cut), weight, u, 0};
  }
  if (!best) throw Error(ErrorKind::SolverFailed, "rounding produced no valid cut");
  best->trials = trials;
  return std::move(*best);
}

GwSpectralResult gw_solve(const Instance& inst, const GwOptions& options, std::size_t trials) {
  auto solution = gw_primal_solve(inst, options);
  auto rounded = gw_round(inst, solution.vectors, Rng::splitmix64(options.seed), trials);
  GlevResult glev;
  try {
    glev = glev_cut(inst, -solution.dual.feasible_diag);
  } catch (const Error& e) {
    glev.failure = e.what();
  }
  return GwSpectralResult{std::move(solution), std::move(rounded), std::move(glev)};
}

namespace {

struct Verdicts {
  bool gw_bipolar, delta_is_glev, shift_psd, dual_matches;
  bool agree() const {
    return gw_bipolar == delta_is_glev && delta_is_glev == shift_psd &&
           shift_psd == dual_matches;
  }
};

}  // namespace

BipolarityReport bipolarity_check(const Instance& inst, const Cut& cut, const GwOptions& options) {
  if (cut.size() != inst.size()) throw Error(ErrorKind::InvalidCut, "cut size mismatch");
  BipolarityReport r;
  const VectorXd delta = cut.delta();
  const MatrixXd& w = inst.matrix();
  r.shift = bipolar_shift(inst, cut);
  const MatrixXd m = w + MatrixXd(r.shift.asDiagonal());
  const auto solver = eig(m);
  const VectorXd& lambda = solver.eigenvalues();
  r.min_eigenvalue = lambda(0);
  r.cut_value = delta.dot(w * delta);

  const auto gw = gw_primal_solve(inst, options);
  r.primal_value = gw.primal_value;
  r.dual_gap = gw.dual.gap;
  r.dual_deviation = (gw.dual.diag + r.shift).cwiseAbs().maxCoeff();

  const double scale = problem_scale(inst);
  auto evaluate = [&](double loosen) {
    const double eig_tol = loosen * eigen_tolerance(m);
    Verdicts v{};
    v.shift_psd = r.min_eigenvalue >= -eig_tol;
    // Component of delta outside the least eigenspace of W + D.
    Index dim = 1;
    while (dim < lambda.size() && lambda(dim) <= lambda(0) + eig_tol) ++dim;
    const MatrixXd basis = solver.eigenvectors().leftCols(dim);
    const VectorXd residual = delta - basis * (basis.transpose() * delta);
    v.delta_is_glev = residual.norm() <= 1e-6 * loosen * delta.norm();
    v.gw_bipolar = r.primal_value >= r.cut_value - 1e-6 * loosen * scale;
    v.dual_matches = r.dual_deviation <= 1e-4 * loosen * scale;
    return v;
  };
  auto v = evaluate(1.0);
  if (!v.agree()) {
    const auto loose = evaluate(1e3);
    if (loose.agree()) {
      v = loose;
      r.escalated = true;
    }
  }
  r.gw_bipolar = v.gw_bipolar;
  r.delta_is_glev = v.delta_is_glev;
  r.shift_psd = v.shift_psd;
  r.dual_matches = v.dual_matches;
  r.agree = v.agree();
  return r;
}

Instance strongly_bipolar_perturb(const Instance& inst, const Cut& cut, double eps) {
  if (cut.size() != inst.size()) throw Error(ErrorKind::InvalidCut, "cut size mismatch");
  if (!(eps >= 0.0)) throw Error(ErrorKind::InvalidParameter, "eps must be >= 0");
  const MatrixXd m = inst.matrix() + MatrixXd(bipolar_shift(inst, cut).asDiagonal());
  if (min_eigenvalue(m) < -eigen_tolerance(m)) {
    throw Error(ErrorKind::Precondition, "cut is not GW-bipolar for this instance");
  }
  if (eps == 0.0) return inst;
  MatrixXd w = inst.matrix();
  for (std::size_t i = 0; i < inst.size(); ++i) {
    for (std::size_t j = 0; j < inst.size(); ++j) {
      if (cut.separates(i, j)) w(i, j) *= 1.0 + eps;
    }
  }
  return Instance(std::move(w), inst.labels());
}

}  // namespace stablecut
