#include "gaussep/estimation.hpp"

#include "gaussep/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gaussep {

Matrix project_to_physical(const Matrix& gamma, double* epsilon) {
  const double min_eig = uncertainty_min_eigenvalue(gamma);
  const double eps = std::max(0.0, -min_eig);
  if (epsilon != nullptr) *epsilon = eps;
  if (eps == 0.0) return gamma;
  return gamma + eps * Matrix::Identity(gamma.rows(), gamma.cols());
}

double criterion_margin(const Matrix& gamma) {
  const Invariants inv = invariants(gamma);
  return inv.d() - 4.0 * inv.det_gamma - 0.25;
}

double propagate_error(const std::function<double(const Vector&)>& f, const Vector& x, const Vector& sigma) {
  if (x.size() != sigma.size()) throw InputError("propagate_error: size mismatch");
  double var = 0.0;
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (sigma(i) == 0.0) continue;
    const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
    probe(i) = x(i) + h;
    const double up = f(probe);
    probe(i) = x(i) - h;
    const double down = f(probe);
    probe(i) = x(i);
    const double grad = (up - down) / (2.0 * h);
    var += grad * grad * sigma(i) * sigma(i);
  }
  return std::sqrt(var);
}

double margin_error(const Matrix& gamma, const Matrix& std_errors) {
  Vector x(10);
  Vector sigma(10);
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j, ++k) {
      x(k) = gamma(i, j);
      sigma(k) = std_errors(i, j);
    }
  }
  auto rebuild = [](const Vector& v) {
    Matrix g(4, 4);
    int idx = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j, ++idx) g(i, j) = g(j, i) = v(idx);
    }
    return g;
  };
  return propagate_error([&](const Vector& v) { return criterion_margin(rebuild(v)); }, x, sigma);
}

EstimatedVerdict verdict_from_estimate(const Matrix& gamma_hat, const Matrix& std_errors) {
  if (gamma_hat.rows() != 4 || gamma_hat.cols() != 4) throw InputError("estimate must be 4x4");
  if ((gamma_hat - gamma_hat.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, gamma_hat.cwiseAbs().maxCoeff())) {
    throw InputError("estimated covariance is not symmetric");
  }
  EstimatedVerdict out;
  out.gamma_raw = gamma_hat;
  out.gamma_projected = project_to_physical(gamma_hat, &out.projection_epsilon);
  const Invariants inv = invariants(out.gamma_projected);
  out.report = report_from_determinants(inv.det_a, inv.det_b, inv.det_c, inv.det_gamma);
  if (std_errors.size() == 16) out.report.margin_error = margin_error(out.gamma_projected, std_errors);
  return out;
}

EstimatedVerdict verdict_from_estimate(const Matrix& gamma_hat) {
  return verdict_from_estimate(gamma_hat, Matrix());
}

}  // namespace gaussep
