#pragma once

// Constructors for the concrete states used by the measurement schemes.

#include "gaussep/rng.hpp"
#include "gaussep/symplectic.hpp"

#include <complex>
#include <cstdint>

namespace gaussep {

/// Displaced squeezed thermal state D(alpha) S(xi) rho_th S(xi)^+ D(alpha)^+
/// with alpha = d e^{i beta}, xi = theta e^{i gamma}.
struct ReferenceStateParams {
  double n_bar = 0.0;
  double d = 0.0;
  double beta = 0.0;
  double theta = 0.0;
  double gamma = 0.0;

  /// Throws InputError for negative magnitudes or non-finite values.
  void check() const;
};

/// Closed-form first and second moments of a reference state.
/// `qp` and `pq` are the operator-ordered products <q p> and <p q>.
struct ReferenceMoments {
  double q_mean = 0.0;
  double p_mean = 0.0;
  double q2 = 0.0;
  double p2 = 0.0;
  std::complex<double> qp;
  std::complex<double> pq;
  double q2_minus_p2 = 0.0;
  double q2_plus_p2 = 0.0;

  /// <(qp + pq)/2>
  double symmetrized_qp() const { return 0.5 * (qp + pq).real(); }
};

GaussianState thermal(double n_bar);

GaussianState displaced_squeezed_thermal(const ReferenceStateParams& p);

ReferenceMoments reference_moments(const ReferenceStateParams& p);

GaussianState two_mode_squeezed_vacuum(double r);

/// Covariance [[lambda I, C], [C, mu I]] with C = diag(s, t), zero means.
/// Throws InvalidCovarianceError naming the violated bound when the matrix
/// is not a physical covariance.
GaussianState simon_form(double lambda, double mu, double s, double t);

/// Two-mode state S diag(nu1, nu1, nu2, nu2) S^T with nu_i uniform in
/// [1/2, 1/2 + max_thermal] and S = passive * (squeezer (+) squeezer) * passive,
/// squeeze magnitudes uniform in [0, max_squeeze]. Zero means.
GaussianState random_state(Rng& rng, double max_squeeze, double max_thermal);

GaussianState random_state(std::uint64_t seed, double max_squeeze, double max_thermal);

}  // namespace gaussep
