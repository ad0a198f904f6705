#include "gaussep/symplectic.hpp"

#include "gaussep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace gaussep {

namespace {

void require_two_modes(const GaussianState& state, const char* what) {
  if (state.n_modes() != 2) {
    std::ostringstream os;
    os << what << " is defined for two-mode states only (got " << state.n_modes() << " modes)";
    throw UnsupportedError(os.str());
  }
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

GaussianState::GaussianState(Vector means, Matrix cov) : means_(std::move(means)), cov_(std::move(cov)) {
  if (means_.size() == 0 || means_.size() % 2 != 0) {
    throw InputError("means must have even, nonzero length 2n");
  }
  if (cov_.rows() != means_.size() || cov_.cols() != means_.size()) {
    std::ostringstream os;
    os << "covariance is " << cov_.rows() << "x" << cov_.cols() << ", expected " << means_.size() << "x"
       << means_.size();
    throw InputError(os.str());
  }
  if (!means_.allFinite() || !cov_.allFinite()) {
    throw InputError("state contains non-finite entries");
  }
  const double asym = max_abs(cov_ - cov_.transpose());
  if (asym > kSymmetryTolerance * std::max(1.0, max_abs(cov_))) {
    std::ostringstream os;
    os << "covariance is not symmetric (max |G - G^T| = " << asym << ")";
    throw InputError(os.str());
  }
  // Remove round-off asymmetry so every downstream routine sees an exactly
  // symmetric matrix.
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
}

GaussianState GaussianState::vacuum(int n_modes) {
  if (n_modes < 1) throw InputError("n_modes must be positive");
  return GaussianState(Vector::Zero(2 * n_modes), 0.5 * Matrix::Identity(2 * n_modes, 2 * n_modes));
}

Matrix symplectic_form(int n_modes) {
  Matrix j = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    j(2 * k, 2 * k + 1) = 1.0;
    j(2 * k + 1, 2 * k) = -1.0;
  }
  return j;
}

double uncertainty_min_eigenvalue(const Matrix& cov) {
  if (cov.rows() != cov.cols() || cov.rows() % 2 != 0) {
    throw InputError("covariance must be square with even dimension");
  }
  const int n = static_cast<int>(cov.rows() / 2);
  const Eigen::MatrixXcd h =
      cov.cast<std::complex<double>>() + std::complex<double>(0.0, 0.5) * symplectic_form(n).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool validate(const GaussianState& state) {
  return uncertainty_min_eigenvalue(state.cov()) >= -kUncertaintyTolerance;
}

Matrix BlockDecomposition::assemble() const {
  Matrix g(4, 4);
  g.block<2, 2>(0, 0) = a;
  g.block<2, 2>(0, 2) = c;
  g.block<2, 2>(2, 0) = c.transpose();
  g.block<2, 2>(2, 2) = b;
  return g;
}

BlockDecomposition blocks(const Matrix& cov) {
  if (cov.rows() != 4 || cov.cols() != 4) {
    throw UnsupportedError("block decomposition needs a 4x4 covariance");
  }
  return {cov.block<2, 2>(0, 0), cov.block<2, 2>(2, 2), cov.block<2, 2>(0, 2)};
}

Invariants invariants(const Matrix& cov) {
  const BlockDecomposition blk = blocks(cov);
  return {blk.a.determinant(), blk.b.determinant(), blk.c.determinant(), cov.determinant()};
}

GaussianState partial_transpose(const GaussianState& state, int mode) {
  if (mode < 0 || mode >= state.n_modes()) throw InputError("partial transpose mode out of range");
  require_two_modes(state, "partial transpose");
  Vector lambda = Vector::Ones(state.means().size());
  lambda(2 * mode + 1) = -1.0;
  const Matrix reflect = lambda.asDiagonal();
  return GaussianState(reflect * state.means(), reflect * state.cov() * reflect);
}

Vector symplectic_spectrum(const Matrix& cov) {
  if (cov.rows() != cov.cols() || cov.rows() % 2 != 0) {
    throw InputError("covariance must be square with even dimension");
  }
  const int n = static_cast<int>(cov.rows() / 2);
  const Eigen::MatrixXcd m = std::complex<double>(0.0, 1.0) * (symplectic_form(n) * cov).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<double> moduli;
  moduli.reserve(static_cast<std::size_t>(2 * n));
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) moduli.push_back(std::abs(solver.eigenvalues()(i)));
  std::sort(moduli.begin(), moduli.end());
  // The spectrum of iJG is {+nu_k, -nu_k}; keep one of each pair.
  Vector nu(n);
  for (int k = 0; k < n; ++k) nu(k) = 0.5 * (moduli[2 * k] + moduli[2 * k + 1]);
  return nu;
}

double min_symplectic_eigenvalue(double d, double det_gamma) {
  double disc = d * d - 4.0 * det_gamma;
  if (disc < -kUncertaintyTolerance) {
    std::ostringstream os;
    os << "D^2 - 4 det(Gamma) = " << disc << " < 0: not a covariance matrix";
    throw InvalidCovarianceError(os.str());
  }
  disc = std::max(disc, 0.0);
  const double xi2 = 0.5 * (d - std::sqrt(disc));
  if (xi2 < -kUncertaintyTolerance) {
    throw InvalidCovarianceError("negative squared symplectic eigenvalue");
  }
  return std::sqrt(std::max(xi2, 0.0));
}

double min_symplectic_eigenvalue(const GaussianState& state) {
  require_two_modes(state, "minimum symplectic eigenvalue");
  const Invariants inv = invariants(state.cov());
  return min_symplectic_eigenvalue(inv.d(), inv.det_gamma);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Separable:
      return "Separable";
    case Verdict::Entangled:
      return "Entangled";
    case Verdict::Boundary:
      return "Boundary";
  }
  return "Unknown";
}

Verdict verdict_from_margin(double margin, double tolerance) {
  if (std::abs(margin) <= tolerance) return Verdict::Boundary;
  return margin > 0.0 ? Verdict::Entangled : Verdict::Separable;
}

SeparabilityReport report_from_determinants(double det_a, double det_b, double det_c, double det_gamma) {
  SeparabilityReport r;
  r.det_a = det_a;
  r.det_b = det_b;
  r.det_c = det_c;
  r.det_gamma = det_gamma;
  r.d = det_a + det_b - 2.0 * det_c;
  r.margin = r.d - 4.0 * det_gamma - 0.25;
  r.verdict = verdict_from_margin(r.margin);

  const double disc = r.d * r.d - 4.0 * det_gamma;
  const double xi2 = 0.5 * (r.d - std::sqrt(std::max(disc, 0.0)));
  if (disc < -kUncertaintyTolerance || xi2 < -kUncertaintyTolerance || !std::isfinite(xi2)) {
    r.consistent = false;
    return r;
  }
  const double xi = std::sqrt(std::max(xi2, 0.0));
  r.xi_min = xi;
  if (xi > 0.0) {
    r.log_negativity = std::max(0.0, -std::log(2.0 * xi));
    r.log_negativity_raw = -std::log(xi);
  }
  return r;
}

SeparabilityReport simon_criterion(const GaussianState& state) {
  require_two_modes(state, "Simon criterion");
  if (!validate(state)) {
    std::ostringstream os;
    os << "state violates the uncertainty relation (min eigenvalue of G + iJ/2 = "
       << uncertainty_min_eigenvalue(state.cov()) << ")";
    throw InvalidCovarianceError(os.str());
  }
  const Invariants inv = invariants(state.cov());
  // The same D from the reflected covariance, where det C flips sign.
  const Invariants reflected = invariants(partial_transpose(state).cov());
  const double d_reflected = reflected.det_a + reflected.det_b + 2.0 * reflected.det_c;
  const double scale = std::max({1.0, std::abs(inv.det_a), std::abs(inv.det_b), std::abs(inv.det_c)});
  if (std::abs(inv.d() - d_reflected) > 1e-9 * scale) {
    throw std::logic_error("seralian mismatch between original and reflected covariance");
  }
  SeparabilityReport r = report_from_determinants(inv.det_a, inv.det_b, inv.det_c, inv.det_gamma);
  if (!r.consistent) {
    throw InvalidCovarianceError("D^2 - 4 det(Gamma) < 0 for a validated state");
  }
  return r;
}

double purity(const GaussianState& state) {
  const double det = state.cov().determinant();
  if (!(det > 0.0)) {
    throw InvalidCovarianceError("purity needs det(Gamma) > 0");
  }
  return 1.0 / (std::pow(2.0, state.n_modes()) * std::sqrt(det));
}

double wigner_pdf(const GaussianState& state, const Vector& point) {
  if (point.size() != state.means().size()) throw InputError("phase-space point has wrong dimension");
  Eigen::LLT<Matrix> llt(state.cov());
  if (llt.info() != Eigen::Success) throw InvalidCovarianceError("Wigner density needs a positive definite covariance");
  const Vector x = point - state.means();
  const Vector y = llt.matrixL().solve(x);
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < llt.matrixL().rows(); ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
  const int n = state.n_modes();
  const double norm = std::pow(2.0 * std::numbers::pi, -n) * std::exp(-0.5 * log_det);
  return norm * std::exp(-0.5 * y.squaredNorm());
}

SymplecticTransform::SymplecticTransform(Matrix s, Vector shift) : s_(std::move(s)), shift_(std::move(shift)) {
  if (s_.rows() != s_.cols() || s_.rows() % 2 != 0 || s_.rows() == 0) {
    throw InputError("symplectic matrix must be square with even dimension");
  }
  if (shift_.size() != s_.rows()) throw InputError("shift length does not match the symplectic matrix");
  if (!s_.allFinite() || !shift_.allFinite()) throw InputError("transform has non-finite entries");
  const Matrix j = symplectic_form(static_cast<int>(s_.rows() / 2));
  const double err = max_abs(s_ * j * s_.transpose() - j);
  const double scale = std::max(1.0, max_abs(s_) * max_abs(s_));
  if (err > kSymplecticTolerance * scale) {
    std::ostringstream os;
    os << "matrix is not symplectic (max |S J S^T - J| = " << err << ")";
    throw InputError(os.str());
  }
}

SymplecticTransform::SymplecticTransform(Matrix s)
    : SymplecticTransform(s, Vector::Zero(s.rows())) {}

SymplecticTransform SymplecticTransform::identity(int n_modes) {
  return SymplecticTransform(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState apply_transform(const GaussianState& state, const SymplecticTransform& t) {
  if (t.n_modes() != state.n_modes()) throw InputError("transform and state have different mode counts");
  const Matrix& s = t.matrix();
  return GaussianState(s * state.means() + t.shift(), s * state.cov() * s.transpose());
}

SymplecticTransform compose(const SymplecticTransform& second, const SymplecticTransform& first) {
  if (second.n_modes() != first.n_modes()) throw InputError("cannot compose transforms of different size");
  return SymplecticTransform(second.matrix() * first.matrix(), second.matrix() * first.shift() + second.shift());
}

SymplecticTransform direct_sum(const SymplecticTransform& a, const SymplecticTransform& b) {
  const Eigen::Index na = a.matrix().rows();
  const Eigen::Index nb = b.matrix().rows();
  Matrix s = Matrix::Zero(na + nb, na + nb);
  s.topLeftCorner(na, na) = a.matrix();
  s.bottomRightCorner(nb, nb) = b.matrix();
  Vector shift(na + nb);
  shift << a.shift(), b.shift();
  return SymplecticTransform(std::move(s), std::move(shift));
}

SymplecticTransform embed(const SymplecticTransform& local, int n_modes, std::span<const int> modes) {
  if (static_cast<int>(modes.size()) != local.n_modes()) throw InputError("mode list does not match transform size");
  std::vector<bool> seen(static_cast<std::size_t>(n_modes), false);
  for (int m : modes) {
    if (m < 0 || m >= n_modes || seen[static_cast<std::size_t>(m)]) throw InputError("invalid or repeated mode index");
    seen[static_cast<std::size_t>(m)] = true;
  }
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  Vector shift = Vector::Zero(2 * n_modes);
  const int k = local.n_modes();
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      s.block<2, 2>(2 * modes[a], 2 * modes[b]) = local.matrix().block<2, 2>(2 * a, 2 * b);
    }
    shift.segment<2>(2 * modes[a]) = local.shift().segment<2>(2 * a);
  }
  return SymplecticTransform(std::move(s), std::move(shift));
}

GaussianState tensor_product(const GaussianState& a, const GaussianState& b) {
  const Eigen::Index na = a.means().size();
  const Eigen::Index nb = b.means().size();
  Vector means(na + nb);
  means << a.means(), b.means();
  Matrix cov = Matrix::Zero(na + nb, na + nb);
  cov.topLeftCorner(na, na) = a.cov();
  cov.bottomRightCorner(nb, nb) = b.cov();
  return GaussianState(std::move(means), std::move(cov));
}

GaussianState partial_trace(const GaussianState& state, std::span<const int> keep) {
  if (keep.empty()) throw InputError("partial trace must keep at least one mode");
  const auto k = static_cast<Eigen::Index>(keep.size());
  std::vector<Eigen::Index> idx;
  idx.reserve(keep.size() * 2);
  for (int m : keep) {
    if (m < 0 || m >= state.n_modes()) throw InputError("partial trace mode out of range");
    idx.push_back(2 * m);
    idx.push_back(2 * m + 1);
  }
  Vector means(2 * k);
  Matrix cov(2 * k, 2 * k);
  for (Eigen::Index i = 0; i < 2 * k; ++i) {
    means(i) = state.means()(idx[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < 2 * k; ++j) {
      cov(i, j) = state.cov()(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
  }
  return GaussianState(std::move(means), std::move(cov));
}

GaussianState marginal(const GaussianState& state, int mode) {
  const int keep[] = {mode};
  return partial_trace(state, keep);
}

SymplecticTransform beam_splitter_50_50() {
  const double h = 1.0 / std::numbers::sqrt2;
  Matrix s(4, 4);
  s << h, 0, -h, 0,  //
      0, h, 0, -h,   //
      h, 0, h, 0,    //
      0, h, 0, h;
  return SymplecticTransform(std::move(s));
}

SymplecticTransform phase_shifter(double phi) {
  Matrix s(2, 2);
  s << std::cos(phi), -std::sin(phi),  //
      std::sin(phi), std::cos(phi);
  return SymplecticTransform(std::move(s));
}

SymplecticTransform rotation_theta(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix m = Matrix::Zero(4, 4);
  m.block<2, 2>(0, 0) = c * Matrix2::Identity();
  m.block<2, 2>(0, 2) = s * Matrix2::Identity();
  m.block<2, 2>(2, 0) = -s * Matrix2::Identity();
  m.block<2, 2>(2, 2) = c * Matrix2::Identity();
  return SymplecticTransform(std::move(m));
}

SymplecticTransform displacement(double alpha_re, double alpha_im) {
  return quadrature_shift(std::numbers::sqrt2 * alpha_re, std::numbers::sqrt2 * alpha_im);
}

SymplecticTransform quadrature_shift(double dq, double dp) {
  Vector shift(2);
  shift << dq, dp;
  return SymplecticTransform(Matrix::Identity(2, 2), std::move(shift));
}

SymplecticTransform single_mode_squeezer(double theta, double gamma) {
  const double c = std::cosh(theta);
  const double s = std::sinh(theta);
  Matrix m(2, 2);
  m << c - s * std::cos(gamma), -s * std::sin(gamma),  //
      -s * std::sin(gamma), c + s * std::cos(gamma);
  return SymplecticTransform(std::move(m));
}

SymplecticTransform two_mode_squeezer(double r) { return opa(r, 0.0); }

SymplecticTransform opa(double gain, double pump_phase) {
  const double c = std::cosh(gain);
  const double s = std::sinh(gain);
  Matrix2 reflect;
  reflect << std::cos(pump_phase), std::sin(pump_phase),  //
      std::sin(pump_phase), -std::cos(pump_phase);
  Matrix m(4, 4);
  m.block<2, 2>(0, 0) = c * Matrix2::Identity();
  m.block<2, 2>(0, 2) = s * reflect;
  m.block<2, 2>(2, 0) = s * reflect;
  m.block<2, 2>(2, 2) = c * Matrix2::Identity();
  return SymplecticTransform(std::move(m));
}

}  // namespace gaussep
