#pragma once

// Shared post-processing of estimated covariance matrices.

#include "gaussep/symplectic.hpp"

#include <cstdint>
#include <functional>

namespace gaussep {

/// Reconstructed first and second moments with one-sigma errors.
struct CovarianceEstimate {
  Matrix gamma_hat = Matrix::Zero(4, 4);
  Vector means_hat = Vector::Zero(4);
  Matrix std_errors = Matrix::Zero(4, 4);
  Vector means_std_errors = Vector::Zero(4);
  std::size_t shots_used = 0;
};

/// Verdict on an estimated covariance. The report is computed on the
/// projected matrix; the raw estimate is kept alongside.
struct EstimatedVerdict {
  SeparabilityReport report;
  Matrix gamma_raw;
  Matrix gamma_projected;
  /// Amount added to the diagonal to restore Gamma + iJ/2 >= 0.
  double projection_epsilon = 0.0;
};

/// Adds eps I with the smallest eps >= 0 that makes gamma + iJ/2 >= 0.
/// Adding eps I shifts every eigenvalue of the Hermitian matrix by eps,
/// so the result sits exactly on the boundary when eps > 0.
Matrix project_to_physical(const Matrix& gamma, double* epsilon = nullptr);

/// D - 4 det(Gamma) - 1/4 of a two-mode covariance.
double criterion_margin(const Matrix& gamma);

/// First-order error of f at x for independent inputs with errors sigma;
/// derivatives by central differences.
double propagate_error(const std::function<double(const Vector&)>& f, const Vector& x, const Vector& sigma);

/// Propagated one-sigma error of criterion_margin from independent
/// per-entry errors of the ten distinct covariance entries.
double margin_error(const Matrix& gamma, const Matrix& std_errors);

/// Projects, runs the criterion and attaches the margin error.
/// Throws InputError when gamma_hat is not a symmetric 4x4 matrix.
EstimatedVerdict verdict_from_estimate(const Matrix& gamma_hat, const Matrix& std_errors);

EstimatedVerdict verdict_from_estimate(const Matrix& gamma_hat);

}  // namespace gaussep
