#include "gaussep/states.hpp"

#include "gaussep/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace gaussep {

void ReferenceStateParams::check() const {
  if (!std::isfinite(n_bar) || !std::isfinite(d) || !std::isfinite(beta) || !std::isfinite(theta) ||
      !std::isfinite(gamma)) {
    throw InputError("reference parameters must be finite");
  }
  if (n_bar < 0.0) throw InputError("reference n_bar must be >= 0");
  if (d < 0.0) throw InputError("reference displacement d_r must be >= 0");
  if (theta < 0.0) throw InputError("reference squeeze theta_r must be >= 0");
}

GaussianState thermal(double n_bar) {
  if (!std::isfinite(n_bar) || n_bar < 0.0) throw InputError("thermal n_bar must be finite and >= 0");
  return GaussianState(Vector::Zero(2), (n_bar + 0.5) * Matrix::Identity(2, 2));
}

GaussianState displaced_squeezed_thermal(const ReferenceStateParams& p) {
  p.check();
  const SymplecticTransform squeeze = single_mode_squeezer(p.theta, p.gamma);
  const SymplecticTransform shift = displacement(p.d * std::cos(p.beta), p.d * std::sin(p.beta));
  return apply_transform(thermal(p.n_bar), compose(shift, squeeze));
}

ReferenceMoments reference_moments(const ReferenceStateParams& p) {
  p.check();
  const double nh = p.n_bar + 0.5;
  const double e_plus = std::exp(2.0 * p.theta);
  const double e_minus = std::exp(-2.0 * p.theta);
  const double s2 = std::pow(std::sin(0.5 * p.gamma), 2);
  const double c2 = std::pow(std::cos(0.5 * p.gamma), 2);

  ReferenceMoments m;
  m.q_mean = std::numbers::sqrt2 * p.d * std::cos(p.beta);
  m.p_mean = std::numbers::sqrt2 * p.d * std::sin(p.beta);
  m.q2 = nh * (e_plus * s2 + e_minus * c2) + 2.0 * p.d * p.d * std::pow(std::cos(p.beta), 2);
  m.p2 = nh * (e_plus * c2 + e_minus * s2) + 2.0 * p.d * p.d * std::pow(std::sin(p.beta), 2);
  const double sym = p.d * p.d * std::sin(2.0 * p.beta) - nh * std::sinh(2.0 * p.theta) * std::sin(p.gamma);
  m.qp = {sym, 0.5};
  m.pq = {sym, -0.5};
  m.q2_minus_p2 = 2.0 * p.d * p.d * std::cos(2.0 * p.beta) - (2.0 * p.n_bar + 1.0) * std::sinh(2.0 * p.theta) * std::cos(p.gamma);
  m.q2_plus_p2 = 2.0 * p.d * p.d + (2.0 * p.n_bar + 1.0) * std::cosh(2.0 * p.theta);
  return m;
}

GaussianState two_mode_squeezed_vacuum(double r) {
  if (!std::isfinite(r)) throw InputError("squeezing must be finite");
  return apply_transform(GaussianState::vacuum(2), two_mode_squeezer(r));
}

GaussianState simon_form(double lambda, double mu, double s, double t) {
  Matrix g = Matrix::Zero(4, 4);
  g(0, 0) = g(1, 1) = lambda;
  g(2, 2) = g(3, 3) = mu;
  g(0, 2) = g(2, 0) = s;
  g(1, 3) = g(3, 1) = t;
  GaussianState state(Vector::Zero(4), std::move(g));
  const double min_eig = uncertainty_min_eigenvalue(state.cov());
  if (min_eig < -kUncertaintyTolerance) {
    std::ostringstream os;
    os << "simon_form(" << lambda << ", " << mu << ", " << s << ", " << t
       << ") violates Gamma + iJ/2 >= 0 (min eigenvalue " << min_eig << ")";
    throw InvalidCovarianceError(os.str());
  }
  return state;
}

GaussianState random_state(Rng& rng, double max_squeeze, double max_thermal) {
  if (!(max_squeeze >= 0.0) || !(max_thermal >= 0.0) || !std::isfinite(max_squeeze) || !std::isfinite(max_thermal)) {
    throw InputError("random_state bounds must be finite and >= 0");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  const double nu1 = 0.5 + max_thermal * unit(rng);
  const double nu2 = 0.5 + max_thermal * unit(rng);
  Vector williamson(4);
  williamson << nu1, nu1, nu2, nu2;

  auto passive = [&] {
    const SymplecticTransform in = direct_sum(phase_shifter(angle(rng)), phase_shifter(angle(rng)));
    const SymplecticTransform mix = rotation_theta(angle(rng));
    const SymplecticTransform out = direct_sum(phase_shifter(angle(rng)), phase_shifter(angle(rng)));
    return compose(out, compose(mix, in));
  };
  const SymplecticTransform first = passive();
  const SymplecticTransform squeeze =
      direct_sum(single_mode_squeezer(max_squeeze * unit(rng), 0.0), single_mode_squeezer(max_squeeze * unit(rng), 0.0));
  const SymplecticTransform second = passive();
  const SymplecticTransform total = compose(second, compose(squeeze, first));

  const Matrix& s = total.matrix();
  Matrix cov = s * williamson.asDiagonal() * s.transpose();
  return GaussianState(Vector::Zero(4), std::move(cov));
}

GaussianState random_state(std::uint64_t seed, double max_squeeze, double max_thermal) {
  Rng rng = make_stream(seed, 0x7a7e);
  return random_state(rng, max_squeeze, max_thermal);
}

}  // namespace gaussep
