#pragma once

// Covariance-matrix calculus for Gaussian states of n bosonic modes.
//
// Conventions: quadratures are ordered (q1, p1, q2, p2, ...), hbar = 1,
// [q, p] = i, so the vacuum covariance is I/2. The covariance matrix holds
// symmetrized second moments minus mean products.

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace gaussep {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Matrix2 = Eigen::Matrix2d;

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kUncertaintyTolerance = 1e-10;
inline constexpr double kSymplecticTolerance = 1e-10;
inline constexpr double kVerdictTolerance = 1e-10;

class GaussianState {
 public:
  /// Throws InputError on dimension mismatch or an asymmetric covariance.
  GaussianState(Vector means, Matrix cov);

  static GaussianState vacuum(int n_modes);

  int n_modes() const { return static_cast<int>(means_.size() / 2); }
  const Vector& means() const { return means_; }
  const Matrix& cov() const { return cov_; }

 private:
  Vector means_;
  Matrix cov_;
};

/// Block-diagonal symplectic form J = diag(w, ..., w), w = [[0, 1], [-1, 0]].
Matrix symplectic_form(int n_modes);

/// Smallest eigenvalue of the Hermitian matrix cov + (i/2) J.
double uncertainty_min_eigenvalue(const Matrix& cov);

/// True iff cov + (i/2) J is positive semidefinite up to 1e-10.
bool validate(const GaussianState& state);

/// Two-mode covariance split as [[A, C], [C^T, B]].
struct BlockDecomposition {
  Matrix2 a;
  Matrix2 b;
  Matrix2 c;

  Matrix assemble() const;
};

BlockDecomposition blocks(const Matrix& cov);

/// Local symplectic invariants of a two-mode covariance.
struct Invariants {
  double det_a = 0.0;
  double det_b = 0.0;
  double det_c = 0.0;
  double det_gamma = 0.0;

  /// Seralian of the partially transposed covariance: detA + detB - 2 detC.
  double d() const { return det_a + det_b - 2.0 * det_c; }
};

Invariants invariants(const Matrix& cov);

/// Mirror reflection p -> -p on `mode` (0-based). Default flips mode 2.
GaussianState partial_transpose(const GaussianState& state, int mode = 1);

/// Moduli of the eigenvalues of i J cov, ascending, each listed once.
/// This is the spectral route and works for any number of modes.
Vector symplectic_spectrum(const Matrix& cov);

/// Smallest root of xi^4 - D xi^2 + det(cov) = 0.
/// Throws InvalidCovarianceError if D^2 - 4 det(cov) < -1e-10.
double min_symplectic_eigenvalue(double d, double det_gamma);

/// Minimum symplectic eigenvalue of the partially transposed state.
double min_symplectic_eigenvalue(const GaussianState& state);

enum class Verdict { Separable, Entangled, Boundary };

std::string_view to_string(Verdict v);

/// Separable and Boundary both lie on the PPT side of the criterion.
inline bool is_entangled(Verdict v) { return v == Verdict::Entangled; }

struct SeparabilityReport {
  double det_a = 0.0;
  double det_b = 0.0;
  double det_c = 0.0;
  double det_gamma = 0.0;
  double d = 0.0;
  /// D - 4 det(Gamma) - 1/4; positive means entangled.
  double margin = 0.0;
  Verdict verdict = Verdict::Boundary;
  /// Empty when D^2 < 4 det(Gamma) beyond tolerance (inconsistent estimates).
  std::optional<double> xi_min;
  /// max(0, -ln(2 xi_min)).
  std::optional<double> log_negativity;
  /// -ln(xi_min), the unnormalized variant.
  std::optional<double> log_negativity_raw;
  bool consistent = true;
  /// One-sigma propagated error of `margin` when built from estimates.
  std::optional<double> margin_error;
};

Verdict verdict_from_margin(double margin, double tolerance = kVerdictTolerance);

/// Builds a report from the four determinants alone. Never throws on
/// inconsistent inputs; flags them through `consistent` instead.
SeparabilityReport report_from_determinants(double det_a, double det_b, double det_c,
                                            double det_gamma);

/// Exact PPT analysis of a valid two-mode state.
/// Throws UnsupportedError for n != 2 and InvalidCovarianceError for
/// states failing `validate`.
SeparabilityReport simon_criterion(const GaussianState& state);

/// Tr rho^2 = 1 / (2^n sqrt(det cov)).
double purity(const GaussianState& state);

/// Gaussian Wigner density at `point`.
double wigner_pdf(const GaussianState& state, const Vector& point);

/// Affine phase-space map x -> S x + shift with S J S^T = J.
class SymplecticTransform {
 public:
  /// Throws InputError unless S is square, matches `shift` and is symplectic
  /// to 1e-10.
  SymplecticTransform(Matrix s, Vector shift);
  explicit SymplecticTransform(Matrix s);

  static SymplecticTransform identity(int n_modes);

  int n_modes() const { return static_cast<int>(shift_.size() / 2); }
  const Matrix& matrix() const { return s_; }
  const Vector& shift() const { return shift_; }

 private:
  Matrix s_;
  Vector shift_;
};

GaussianState apply_transform(const GaussianState& state, const SymplecticTransform& t);

/// `second` after `first`.
SymplecticTransform compose(const SymplecticTransform& second, const SymplecticTransform& first);

SymplecticTransform direct_sum(const SymplecticTransform& a, const SymplecticTransform& b);

/// Lifts a k-mode transform acting on `modes` (0-based, distinct) into an
/// `n_modes` system; untouched modes pass through.
SymplecticTransform embed(const SymplecticTransform& local, int n_modes, std::span<const int> modes);

GaussianState tensor_product(const GaussianState& a, const GaussianState& b);

/// Reduced state on `keep` (0-based mode indices, in the given order).
GaussianState partial_trace(const GaussianState& state, std::span<const int> keep);

/// Single-mode marginal.
GaussianState marginal(const GaussianState& state, int mode);

// Optical elements.

/// out0 = (in0 - in1)/sqrt2, out1 = (in0 + in1)/sqrt2 (annihilation operators).
SymplecticTransform beam_splitter_50_50();

/// q -> q cos(phi) - p sin(phi), p -> q sin(phi) + p cos(phi).
SymplecticTransform phase_shifter(double phi);

/// Two-mode mixing [[cos I, sin I], [-sin I, cos I]].
SymplecticTransform rotation_theta(double theta);

/// Displacement by the coherent amplitude alpha: <q> += sqrt2 Re(alpha),
/// <p> += sqrt2 Im(alpha).
SymplecticTransform displacement(double alpha_re, double alpha_im);

/// Phase-space shift by (dq, dp).
SymplecticTransform quadrature_shift(double dq, double dp);

/// Squeeze operator S(xi), xi = theta e^{i gamma}:
/// a -> a cosh(theta) - e^{i gamma} a^dagger sinh(theta).
SymplecticTransform single_mode_squeezer(double theta, double gamma);

/// Two-mode squeezer producing the TMSV from vacuum (opa with phase 0).
SymplecticTransform two_mode_squeezer(double r);

/// Parametric amplifier on modes (0, 1):
/// out0 = mu a0 + nu a1^dagger, out1 = mu a1 + nu a0^dagger,
/// mu = cosh g, nu = e^{i Phi} sinh g.
SymplecticTransform opa(double gain, double pump_phase);

}  // namespace gaussep
