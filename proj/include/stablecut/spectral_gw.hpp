#ifndef STABLECUT_SPECTRAL_GW_HPP
#define STABLECUT_SPECTRAL_GW_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "stablecut/instance.hpp"
#include "stablecut/oracle.hpp"

namespace stablecut {

/// n * max_ij w_ij. Gap and dual tolerances are expressed relative to this.
double problem_scale(const Instance& inst);

/// A symmetric matrix's eigenvalue counts as zero when |lambda| is at most
/// 1e-8 (1 + n max_ij |m_ij|); PSD means lambda_min >= -that.
double eigen_tolerance(const Eigen::MatrixXd& m);

/// Cut/uncut decomposition of W relative to a cut, and the spectrum of W + D'.
struct SpectralBundle {
  Eigen::MatrixXd w_cut;
  Eigen::MatrixXd w_uncut;
  Eigen::VectorXd d_cut;    // row sums of w_cut
  Eigen::VectorXd d_uncut;  // row sums of w_uncut
  Eigen::VectorXd d;        // d_cut + d_uncut
  Eigen::VectorXd d_prime;  // d_cut - d_uncut
  Eigen::VectorXd eigenvalues;   // of W + D', ascending
  Eigen::MatrixXd eigenvectors;  // columns match eigenvalues
  double tolerance = 0.0;
  /// Unit least eigenvector when the least eigenvalue is ~0 and simple.
  std::optional<Eigen::VectorXd> kernel;
};

SpectralBundle build_spectral_bundle(const Instance& inst, const Cut& cut);

enum class CertificateVerdict { Certified, NotPsd, RankDeficient };
std::string_view to_string(CertificateVerdict v);

struct CertificateResult {
  CertificateVerdict verdict = CertificateVerdict::NotPsd;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double tolerance = 0.0;
  /// The kernel vector's sign pattern reproduces the cut.
  bool kernel_matches_cut = false;
};

/// Certified iff W + D' is PSD with rank exactly n - 1.
CertificateResult psd_rank_certificate(const SpectralBundle& bundle, const Cut& cut);

/// 2 / (1 - sqrt(1 - x^2)); +inf for x <= 0.
double spectral_stability_threshold(double x);

struct DistinguishedReport {
  double gamma_local = 0.0;
  double h_cut = 0.0;  // Cheeger constant of the cut edges alone
  double alpha = 0.0;
  double alpha_threshold = kInf;
  double h_threshold = kInf;
  bool exceeds_alpha_threshold = false;
  bool exceeds_h_threshold = false;
  bool h_at_least_alpha = false;
};

DistinguishedReport distinguished_condition(const Instance& inst, const Cut& cut,
                                            std::size_t cap = kSubsetCap);

struct GlevResult {
  std::optional<Cut> cut;
  Eigen::VectorXd eigenvector;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::string failure;  // empty on success
};

/// Cut induced by the sign pattern of the least eigenvector of W + diag(shift).
/// Throws Precondition when W + diag(shift) is not PSD.
GlevResult glev_cut(const Instance& inst, const Eigen::VectorXd& shift);

struct GlevCondition {
  bool holds = false;
  double ratio = 0.0;  // max |u_i u_j| / min |u_i u_j| over all pairs i < j
};

/// gamma >= max |u_i u_j| / min |u_i u_j|, the pairs ranging over the complete graph.
GlevCondition glev_stability_condition(const Instance& inst, double gamma,
                                       const Eigen::VectorXd& u);

/// W'_ij = |v_i| |v_j| W_ij.
Instance glev_scaling_perturbation(const Instance& inst, const Eigen::VectorXd& v);

struct GwOptions {
  std::size_t rank = 0;  // 0 means n
  std::size_t max_sweeps = 100000;
  double relative_tolerance = 1e-10;  // objective change per sweep
  double step_tolerance = 1e-10;      // largest move of any v_i per sweep
  std::uint64_t seed = 0;
};

/// Dual diagonal read off a primal Gram matrix, with its certificates.
struct DualExtraction {
  Eigen::VectorXd diag;       // D_jj = sum_i P_ji W_ij
  double min_eigenvalue = 0;  // of W - D
  double complementarity = 0; // max |(P (W - D))_ij|
  double raw_gap = 0;         // |P o W - sum D_ii|
  /// sum D_ii shifted by n * min(0, min_eigenvalue): a feasible dual value.
  double dual_value = 0;
  double gap = 0;             // primal - dual_value
  /// D + min(0, min_eigenvalue) I, the dual-feasible diagonal.
  Eigen::VectorXd feasible_diag;
};

DualExtraction gw_dual_extract(const Instance& inst, const Eigen::MatrixXd& gram);

struct GwSolution {
  Eigen::MatrixXd vectors;  // n x rank, unit rows
  Eigen::MatrixXd gram;
  double primal_value = 0.0;
  std::size_t sweeps = 0;
  bool converged = false;
  DualExtraction dual;
};

/// Burer-Monteiro block-coordinate descent on min sum W_ij <v_i, v_j> over
/// unit vectors, then dual extraction. Stops once a sweep changes the
/// objective by less than relative_tolerance and moves no vector by more than
/// step_tolerance.
GwSolution gw_primal_solve(const Instance& inst, const GwOptions& options = {});

struct RoundResult {
  Cut cut;
  double weight = 0.0;
  Eigen::VectorXd projection;  // u_i = <r, v_i> for the winning direction
  std::size_t trials = 0;
};

/// Random-hyperplane rounding; the heaviest cut over `trials` directions.
RoundResult gw_round(const Instance& inst, const Eigen::MatrixXd& vectors, std::uint64_t seed,
                     std::size_t trials);

struct GwSpectralResult {
  GwSolution solution;
  RoundResult rounded;
  /// Cut from the kernel of W - D for the solved dual, when it is unique.
  GlevResult glev;
};

GwSpectralResult gw_solve(const Instance& inst, const GwOptions& options, std::size_t trials);

struct BipolarityReport {
  bool gw_bipolar = false;       // primal optimum equals delta^T W delta
  bool delta_is_glev = false;    // delta lies in the least eigenspace of W + D
  bool shift_psd = false;        // W + D >= 0
  bool dual_matches = false;     // GW dual optimum is -D
  bool agree = false;
  bool escalated = false;        // agreement needed the loosened tolerances
  Eigen::VectorXd shift;         // D_ii = -delta_i sum_j W_ij delta_j
  double min_eigenvalue = 0.0;   // of W + D
  double cut_value = 0.0;        // delta^T W delta
  double primal_value = 0.0;
  double dual_gap = 0.0;
  double dual_deviation = 0.0;   // max |D_gw + D|
};

BipolarityReport bipolarity_check(const Instance& inst, const Cut& cut,
                                  const GwOptions& options = {});

/// Multiplies the cut edges by 1 + eps. Requires W + D >= 0 for the cut.
Instance strongly_bipolar_perturb(const Instance& inst, const Cut& cut, double eps);

}  // namespace stablecut

#endif  // STABLECUT_SPECTRAL_GW_HPP
