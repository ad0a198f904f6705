#pragma once

// Two-copy determinant scheme: SWAP tests for det A, det B and det Gamma,
// plus three ways of obtaining det C without reconstructing the full
// covariance.
//
// Copies of rho are laid out as modes [1', 2', 1'', 2''] (0-based 0..3).
// Alice's OPA mixes (1', 1''), Bob's mixes (2', 2''):
//   A3 = mu1 a1'' + nu1 a1'^+,  A4 = mu1 a1' + nu1 a1''^+,   (same for B)
// with mu = cosh g, nu = e^{i Phi} sinh g.

#include "gaussep/estimation.hpp"
#include "gaussep/sampler.hpp"

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace gaussep {

struct SwapTestResult {
  std::size_t n_shots = 0;
  int n_modes = 0;
  double p_plus = 0.0;
  double purity_hat = 0.0;
  double purity_std_error = 0.0;
  /// (1 / (2^n purity_hat))^2; empty when purity_hat <= 0.
  std::optional<double> det_hat;
  std::optional<double> det_std_error;
};

/// Bernoulli simulation of n_shots SWAP measurements on two copies of
/// `state` (+1 with probability (1 + purity)/2).
SwapTestResult swap_test(const GaussianState& state, std::size_t n_shots, std::uint64_t seed);

/// Infinite-shot limit.
SwapTestResult swap_test_exact(const GaussianState& state);

struct OpaConstants {
  double m1, n1, m2, n2;
  double m1p, n1p, m2p, n2p;

  /// [[m1, n1], [m2, n2]] maps (X, Y) to (O1, O2).
  Matrix2 first() const;
  /// [[m1p, n1p], [m2p, n2p]] maps (X', Y') to (O3, O4).
  Matrix2 second() const;
};

struct OpaParams {
  double g1 = 0.3;
  double phi1 = 0.0;
  double g2 = 0.2;
  double phi2 = std::numbers::pi / 3.0;

  OpaConstants constants() const;
  /// Throws InputError for negative or non-finite gains and
  /// ConditioningError when either 2x2 system is singular.
  void check() const;
};

struct CEstimate {
  Matrix2 c = Matrix2::Zero();
  Matrix2 std_errors = Matrix2::Zero();
  /// Covariance of (c00, c01, c10, c11) when the entries are correlated;
  /// empty means independent entries.
  std::optional<Eigen::Matrix4d> covariance;
  std::size_t shots_used = 0;
};

/// det C with first-order error from independent entry errors.
MomentEstimate det_c_estimate(const CEstimate& c);

inline constexpr std::size_t kMinShotsPerPair = 100;

/// Random quadrature pair per shot: (q1,q2), (p1,p2), (q1,p2), (p1,q2) with
/// equal probability; C entries are within-pair sample covariances.
/// Throws InsufficientShotsError when a pair gets fewer than 100 shots.
CEstimate method1_c(const GaussianState& state, std::size_t n_shots, std::uint64_t seed);

struct Method2Inputs {
  double det_a = 0.0;
  double det_b = 0.0;
  double det_gamma = 0.0;
  /// det of the mode-1 marginal after rotation_theta(pi/4).
  double det_rotated = 0.0;
  /// det of the mode-1 marginal after rotation_theta(-pi/4); optional.
  std::optional<double> det_rotated_minus;
};

struct Method2Candidate {
  double s_plus_t = 0.0;
  double st = 0.0;
  bool valid = false;
};

struct Method2Result {
  /// s t; empty when both candidates are valid (ambiguous).
  std::optional<double> det_c;
  double s_plus_t = 0.0;
  std::vector<Method2Candidate> candidates;
  bool ambiguous = false;
  /// det Gamma implied by the five-input solution (when available).
  std::optional<double> det_gamma_predicted;
};

/// Solves for (s + t, s t) of a Simon-form covariance
/// [[lambda I, diag(s,t)], [diag(s,t), mu I]], lambda = sqrt(det A),
/// mu = sqrt(det B). With four inputs the system is quadratic in s t; roots
/// are kept when the reassembled covariance is physical up to `tolerance`.
/// With the fifth input the system is linear and det Gamma is checked
/// against the prediction within `tolerance`.
/// Throws ModelMismatchError when no admissible root exists or the
/// consistency check fails, InputError for nonpositive det A or det B.
Method2Result method2_det_c(const Method2Inputs& in, double tolerance = 1e-9);

/// Exact Method 2 inputs of a two-mode state.
Method2Inputs method2_exact_inputs(const GaussianState& state, bool with_minus = true);

/// rho (x) rho after both OPAs.
GaussianState opa_output_state(const GaussianState& state, const OpaParams& opa);

/// O1 = i(A3^+ B3 - B3^+ A3), O2 = A3^+ B3 + B3^+ A3, O3 and O4 the same
/// with B4.
struct OpaReadouts {
  std::array<MomentEstimate, 4> o;
};

OpaReadouts opa_readouts_exact(const GaussianState& state, const OpaParams& opa);
OpaReadouts opa_readouts_sampled(const GaussianState& state, const OpaParams& opa, std::size_t shots,
                                 std::uint64_t seed);

/// Inverts the two 2x2 systems (assumes zero means).
CEstimate c_from_opa_readouts(const OpaReadouts& r, const OpaParams& opa);

struct Method3Options {
  bool sampled = true;
  std::size_t shots = 100000;
  std::uint64_t seed = 0;
  /// Skip the mean-removal pre-step.
  bool assume_zero_mean = false;
};

struct Method3Result {
  CEstimate c;
  OpaReadouts readouts;
  /// Means removed by the pre-step (zero when skipped).
  Vector means_removed = Vector::Zero(4);
  std::size_t shots_used = 0;
};

Method3Result method3_c(const GaussianState& state, const OpaParams& opa, const Method3Options& options);

/// Criterion from four determinants. margin_error is attached when errors
/// are given.
SeparabilityReport assemble_verdict(double det_a, double det_b, double det_c, double det_gamma);
SeparabilityReport assemble_verdict(const MomentEstimate& det_a, const MomentEstimate& det_b,
                                    const MomentEstimate& det_c, const MomentEstimate& det_gamma);

enum class TwoCopyMethod { M1, M2, M3 };

std::string_view to_string(TwoCopyMethod m);

struct TwoCopyConfig {
  TwoCopyMethod method = TwoCopyMethod::M3;
  OpaParams opa;
  /// Shots for each SWAP test and each measured observable.
  std::size_t shots = 100000;
  std::uint64_t seed = 0;
  bool sampled = true;
  bool assume_zero_mean = false;
  /// Method 2: also measure the -pi/4 rotated marginal.
  bool rotated_minus = true;
};

struct TwoCopyResult {
  TwoCopyMethod method = TwoCopyMethod::M3;
  MomentEstimate det_a;
  MomentEstimate det_b;
  MomentEstimate det_c;
  MomentEstimate det_gamma;
  SeparabilityReport report;
  std::optional<CEstimate> c;
  std::optional<Method2Result> method2;
  std::size_t shots_used = 0;
  /// Distinct measurement settings used (3 SWAP tests + method cost).
  int measurement_settings = 0;
  /// Settings of the single-copy tomographic route, for comparison.
  static constexpr int kTomographySettings = 5;
};

/// Throws InsufficientShotsError when a SWAP estimate is not positive,
/// ModelMismatchError / ConditioningError from the methods.
TwoCopyResult run_twocopy(const GaussianState& state, const TwoCopyConfig& config);

}  // namespace gaussep
