#include "gaussep/scheme_stokes.hpp"

#include "gaussep/errors.hpp"
#include "gaussep/rng.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>

namespace gaussep {

namespace {

using Complex = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;
using Vector2 = Eigen::Vector2d;
using Matrix2c = Eigen::Matrix2cd;

constexpr double kConditioningThreshold = 1e-9;

// Reference quadratures after the phase shifter.
struct RefSide {
  Vector2 mean;
  Matrix2c k;  // operator-ordered <x_a x_b>
};

RefSide rotate(const ReferenceMoments& r, double phi) {
  Matrix2 rot;
  rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  RefSide side;
  side.mean = rot * Vector2(r.q_mean, r.p_mean);
  Matrix2c k0;
  k0 << r.q2, r.qp, r.pq, r.p2;
  side.k = rot.cast<Complex>() * k0 * rot.transpose().cast<Complex>();
  return side;
}

MatrixC ordered_moments(const SignalMoments& s) {
  const int n = static_cast<int>(s.means.size() / 2);
  return s.second.cast<Complex>() + Complex(0.0, 0.5) * symplectic_form(n).cast<Complex>();
}

// Effective signal mode entering a beam splitter: (q, p) linear forms.
struct SignalMode {
  Vector q;
  Vector p;
};

SignalMode single_signal_mode() {
  SignalMode m{Vector::Zero(2), Vector::Zero(2)};
  m.q(0) = 1.0;
  m.p(1) = 1.0;
  return m;
}

// b- = (a1 - a2)/sqrt2, b+ = (a1 + a2)/sqrt2.
SignalMode bs1_output(bool plus) {
  const double s = plus ? 1.0 : -1.0;
  const double h = 1.0 / std::numbers::sqrt2;
  SignalMode m{Vector::Zero(4), Vector::Zero(4)};
  m.q(0) = h;
  m.q(2) = s * h;
  m.p(1) = h;
  m.p(3) = s * h;
  return m;
}

const Vector& form(const SignalMode& m, int a) { return a == 0 ? m.q : m.p; }

double s1_mean(const SignalMoments& s, const SignalMode& mode, const RefSide& r) {
  return mode.q.dot(s.means) * r.mean(0) + mode.p.dot(s.means) * r.mean(1);
}

double s1_squared(const MatrixC& k, const SignalMode& mode, const RefSide& r) {
  Complex total = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const Complex sig = form(mode, a).cast<Complex>().dot(k * form(mode, b).cast<Complex>());
      total += sig * r.k(a, b);
    }
  }
  return total.real();
}

void require_modes(const SignalMoments& s, int n, const char* what) {
  if (s.means.size() != 2 * n || s.second.rows() != 2 * n || s.second.cols() != 2 * n) {
    std::ostringstream os;
    os << what << " needs " << n << "-mode signal moments";
    throw InputError(os.str());
  }
}

GaussianState signal_mode(const SingleModeNetwork& net, const GaussianState& state) {
  if (state.n_modes() == 1) return state;
  if (state.n_modes() == 2) {
    if (net.mode != 0 && net.mode != 1) throw InputError("single-mode network: mode must be 0 or 1");
    return marginal(state, net.mode);
  }
  throw UnsupportedError("single-mode network takes a one- or two-mode state");
}

void require_two_mode(const GaussianState& state) {
  if (state.n_modes() != 2) throw UnsupportedError("two-mode network takes a two-mode state");
}

StokesReadout exact(StokesObservable o, StokesPort port, double phi1, double phi2, double value) {
  return {o, port, phi1, phi2, {value, 0.0, 0}};
}

double weyl_w(std::span<const double> x, int mode) {
  const double q = x[static_cast<std::size_t>(2 * mode)];
  const double p = x[static_cast<std::size_t>(2 * mode + 1)];
  return 0.5 * (q * q + p * p);
}

// |det A| / prod of row norms: 1 for orthogonal rows, 0 for singular A.
double relative_det(const Matrix& a) {
  double norms = 1.0;
  for (int i = 0; i < a.rows(); ++i) norms *= a.row(i).norm();
  if (norms == 0.0) return 0.0;
  return std::abs(a.determinant()) / norms;
}

std::string format_phase(double phi) {
  std::ostringstream os;
  os << phi;
  return os.str();
}

void check_readout(const StokesReadout& r, StokesObservable o, StokesPort port, double phi1, double phi2) {
  constexpr double kPhaseTolerance = 1e-12;
  if (r.observable != o || r.port != port || std::abs(r.phi1 - phi1) > kPhaseTolerance ||
      std::abs(r.phi2 - phi2) > kPhaseTolerance) {
    StokesReadout expected{o, port, phi1, phi2, {}};
    throw InputError("unexpected Stokes readout " + r.label() + ", expected " + expected.label());
  }
}

}  // namespace

std::string_view to_string(StokesObservable o) {
  switch (o) {
    case StokesObservable::S1:
      return "S1";
    case StokesObservable::S1Squared:
      return "S1sq";
    case StokesObservable::S1xS1:
      return "S1xS1";
    case StokesObservable::S3:
      return "S3";
  }
  return "?";
}

namespace {

std::string_view port_name(StokesPort p) {
  switch (p) {
    case StokesPort::Single:
      return "single";
    case StokesPort::C:
      return "c";
    case StokesPort::D:
      return "d";
    case StokesPort::Both:
      return "cd";
  }
  return "?";
}

}  // namespace

std::string StokesReadout::label() const {
  std::ostringstream os;
  os << to_string(observable) << '[' << port_name(port) << "](" << phi1;
  if (port == StokesPort::Both) os << ", " << phi2;
  os << ')';
  return os.str();
}

SignalMoments SignalMoments::from_state(const GaussianState& state) {
  return {state.means(), state.cov() + state.means() * state.means().transpose()};
}

Matrix SignalMoments::covariance() const { return second - means * means.transpose(); }

double stokes_s1(const SignalMoments& signal, const ReferenceMoments& ref, double phi) {
  require_modes(signal, 1, "S1");
  return s1_mean(signal, single_signal_mode(), rotate(ref, phi));
}

double stokes_s1_squared(const SignalMoments& signal, const ReferenceMoments& ref, double phi) {
  require_modes(signal, 1, "S1^2");
  return s1_squared(ordered_moments(signal), single_signal_mode(), rotate(ref, phi));
}

double stokes_s1_squared(const SignalMoments& signal, StokesPort port, const ReferenceMoments& ref, double phi) {
  require_modes(signal, 2, "two-mode S1^2");
  if (port != StokesPort::C && port != StokesPort::D) throw InputError("two-mode S1^2 port must be C or D");
  return s1_squared(ordered_moments(signal), bs1_output(port == StokesPort::D), rotate(ref, phi));
}

double stokes_s1_x_s1(const SignalMoments& signal, const ReferenceMoments& c, double phi1,
                      const ReferenceMoments& d, double phi2) {
  require_modes(signal, 2, "S1 x S1");
  const MatrixC k = ordered_moments(signal);
  const SignalMode minus = bs1_output(false);
  const SignalMode plus = bs1_output(true);
  const RefSide rc = rotate(c, phi1);
  const RefSide rd = rotate(d, phi2);
  Complex total = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const Complex sig = form(minus, a).cast<Complex>().dot(k * form(plus, b).cast<Complex>());
      total += sig * rc.mean(a) * rd.mean(b);
    }
  }
  return total.real();
}

double stokes_s3(const SignalMoments& signal, const ReferenceMoments& c, double phi1, const ReferenceMoments& d,
                 double phi2) {
  require_modes(signal, 2, "S3");
  const MatrixC k = ordered_moments(signal);
  const SignalMode minus = bs1_output(false);
  const SignalMode plus = bs1_output(true);
  const RefSide rc = rotate(c, phi1);
  const RefSide rd = rotate(d, phi2);
  // <x6 y3> with a3 = (b- - c)/sqrt2, a6 = (b+ + d)/sqrt2; a = 0 for q, 1 for p.
  auto cross = [&](int a6, int a3) {
    const Complex sig = form(plus, a6).cast<Complex>().dot(k * form(minus, a3).cast<Complex>());
    return 0.5 * (sig.real() - form(plus, a6).dot(signal.means) * rc.mean(a3) +
                  rd.mean(a6) * form(minus, a3).dot(signal.means) - rd.mean(a6) * rc.mean(a3));
  };
  return cross(1, 0) - cross(0, 1);
}

std::vector<StokesReadout> expect_stokes(const SingleModeNetwork& net, const GaussianState& state) {
  const SignalMoments s = SignalMoments::from_state(signal_mode(net, state));
  const ReferenceMoments r = reference_moments(net.reference);
  std::vector<StokesReadout> out;
  for (int i = 0; i < 2; ++i) {
    out.push_back(exact(StokesObservable::S1, StokesPort::Single, net.phases[i], 0.0, stokes_s1(s, r, net.phases[i])));
  }
  for (double phi : net.phases) {
    out.push_back(exact(StokesObservable::S1Squared, StokesPort::Single, phi, 0.0, stokes_s1_squared(s, r, phi)));
  }
  return out;
}

std::vector<StokesReadout> expect_stokes(const TwoModeNetwork& net, const GaussianState& state) {
  require_two_mode(state);
  const SignalMoments s = SignalMoments::from_state(state);
  const ReferenceMoments c = reference_moments(net.ref_c);
  const ReferenceMoments d = reference_moments(net.ref_d);
  return {
      exact(StokesObservable::S1Squared, StokesPort::C, net.phi1, 0.0,
            stokes_s1_squared(s, StokesPort::C, c, net.phi1)),
      exact(StokesObservable::S1Squared, StokesPort::D, net.phi2, 0.0,
            stokes_s1_squared(s, StokesPort::D, d, net.phi2)),
      exact(StokesObservable::S1Squared, StokesPort::D, net.phi2_alt, 0.0,
            stokes_s1_squared(s, StokesPort::D, d, net.phi2_alt)),
      exact(StokesObservable::S1xS1, StokesPort::Both, net.phi1, net.phi2,
            stokes_s1_x_s1(s, c, net.phi1, d, net.phi2)),
      exact(StokesObservable::S3, StokesPort::Both, net.phi1, net.phi2, stokes_s3(s, c, net.phi1, d, net.phi2)),
  };
}

namespace {

GaussianState single_output(const GaussianState& signal, const ReferenceStateParams& ref, double phi) {
  const GaussianState joint = tensor_product(signal, displaced_squeezed_thermal(ref));
  const std::array<int, 1> ref_mode{1};
  const std::array<int, 2> both{0, 1};
  const SymplecticTransform t =
      compose(embed(beam_splitter_50_50(), 2, both), embed(phase_shifter(phi), 2, ref_mode));
  return apply_transform(joint, t);
}

GaussianState two_output(const TwoModeNetwork& net, const GaussianState& state, double phi2) {
  const GaussianState joint =
      tensor_product(tensor_product(state, displaced_squeezed_thermal(net.ref_c)), displaced_squeezed_thermal(net.ref_d));
  const std::array<int, 2> signal{0, 1};
  const std::array<int, 2> with_c{0, 2};
  const std::array<int, 2> with_d{1, 3};
  const std::array<int, 1> c_mode{2};
  const std::array<int, 1> d_mode{3};
  SymplecticTransform t = embed(beam_splitter_50_50(), 4, signal);
  t = compose(embed(phase_shifter(net.phi1), 4, c_mode), t);
  t = compose(embed(phase_shifter(phi2), 4, d_mode), t);
  t = compose(embed(beam_splitter_50_50(), 4, with_c), t);
  t = compose(embed(beam_splitter_50_50(), 4, with_d), t);
  return apply_transform(joint, t);
}

StokesReadout sampled(StokesObservable o, StokesPort port, double phi1, double phi2, const GaussianState& out,
                      const ShotFunctional& f, std::size_t shots, std::uint64_t seed, std::uint64_t stream) {
  const ShotBatch batch = sample_wigner(out, shots, seed, stream);
  return {o, port, phi1, phi2, estimate_functional(batch, f)};
}

void require_shots(std::size_t shots) {
  if (shots < kMinStokesShots) {
    std::ostringstream os;
    os << "Stokes sampling needs at least " << kMinStokesShots << " shots per readout (got " << shots << ")";
    throw InsufficientShotsError(os.str());
  }
}

// Weyl symbols of the readouts on output modes (a, b), S1 = n_b - n_a.
double s1_symbol(std::span<const double> x, int a, int b) { return weyl_w(x, b) - weyl_w(x, a); }

double s1_squared_symbol(std::span<const double> x, int a, int b) {
  const double s = s1_symbol(x, a, b);
  return s * s - 0.5;
}

}  // namespace

std::vector<StokesReadout> sample_stokes(const SingleModeNetwork& net, const GaussianState& state,
                                         std::size_t shots, std::uint64_t seed) {
  require_shots(shots);
  const GaussianState signal = signal_mode(net, state);
  std::vector<StokesReadout> out;
  std::uint64_t stream = 0;
  for (int i = 0; i < 2; ++i) {
    const double phi = net.phases[i];
    out.push_back(sampled(StokesObservable::S1, StokesPort::Single, phi, 0.0,
                          single_output(signal, net.reference, phi),
                          [](std::span<const double> x) { return s1_symbol(x, 0, 1); }, shots, seed, stream++));
  }
  for (double phi : net.phases) {
    out.push_back(sampled(StokesObservable::S1Squared, StokesPort::Single, phi, 0.0,
                          single_output(signal, net.reference, phi),
                          [](std::span<const double> x) { return s1_squared_symbol(x, 0, 1); }, shots, seed,
                          stream++));
  }
  return out;
}

std::vector<StokesReadout> sample_stokes(const TwoModeNetwork& net, const GaussianState& state, std::size_t shots,
                                         std::uint64_t seed) {
  require_two_mode(state);
  require_shots(shots);
  const GaussianState main = two_output(net, state, net.phi2);
  const GaussianState alt = two_output(net, state, net.phi2_alt);
  // Output modes: 0 = a3, 1 = a5, 2 = a4, 3 = a6.
  auto c_sq = [](std::span<const double> x) { return s1_squared_symbol(x, 0, 2); };
  auto d_sq = [](std::span<const double> x) { return s1_squared_symbol(x, 1, 3); };
  auto product = [](std::span<const double> x) { return s1_symbol(x, 0, 2) * s1_symbol(x, 1, 3); };
  auto s3 = [](std::span<const double> x) { return x[7] * x[0] - x[6] * x[1]; };
  return {
      sampled(StokesObservable::S1Squared, StokesPort::C, net.phi1, 0.0, main, c_sq, shots, seed, 0),
      sampled(StokesObservable::S1Squared, StokesPort::D, net.phi2, 0.0, main, d_sq, shots, seed, 1),
      sampled(StokesObservable::S1Squared, StokesPort::D, net.phi2_alt, 0.0, alt, d_sq, shots, seed, 2),
      sampled(StokesObservable::S1xS1, StokesPort::Both, net.phi1, net.phi2, main, product, shots, seed, 3),
      sampled(StokesObservable::S3, StokesPort::Both, net.phi1, net.phi2, main, s3, shots, seed, 4),
  };
}

GaussianState stokes_output_state(const SingleModeNetwork& net, const GaussianState& state) {
  return single_output(signal_mode(net, state), net.reference, net.phases[0]);
}

GaussianState stokes_output_state(const TwoModeNetwork& net, const GaussianState& state) {
  require_two_mode(state);
  return two_output(net, state, net.phi2);
}

namespace {

// S1(phi) = <q_k><q_r^phi> + <p_k><p_r^phi>, rows for phases[0], phases[1].
Matrix means_system(const SingleModeNetwork& net, const ReferenceMoments& ref) {
  Matrix a(2, 2);
  for (int i = 0; i < 2; ++i) a.row(i) = rotate(ref, net.phases[i]).mean.transpose();
  if (relative_det(a) < kConditioningThreshold) {
    if (net.reference.d == 0.0 || a.norm() == 0.0) {
      throw ConditioningError(
          "S1 readouts carry no information on the signal means: the reference displacement d_r is zero; "
          "use d_r > 0");
    }
    throw ConditioningError("S1 phases " + format_phase(net.phases[0]) + " and " + format_phase(net.phases[1]) +
                            " coincide modulo pi; change the reference phase set");
  }
  return a;
}

}  // namespace

SingleModeMeans stokes_means(const SingleModeNetwork& net, const GaussianState& state, std::size_t shots,
                             std::uint64_t seed) {
  const GaussianState signal = signal_mode(net, state);
  const ReferenceMoments ref = reference_moments(net.reference);
  const Matrix a = means_system(net, ref);
  Vector y(2);
  Vector sigma = Vector::Zero(2);
  if (shots == 0) {
    const SignalMoments s = SignalMoments::from_state(signal);
    for (int i = 0; i < 2; ++i) y(i) = stokes_s1(s, ref, net.phases[i]);
  } else {
    require_shots(shots);
    for (int i = 0; i < 2; ++i) {
      const StokesReadout r =
          sampled(StokesObservable::S1, StokesPort::Single, net.phases[i], 0.0,
                  single_output(signal, net.reference, net.phases[i]),
                  [](std::span<const double> x) { return s1_symbol(x, 0, 1); }, shots, seed, static_cast<std::uint64_t>(i));
      y(i) = r.value.value;
      sigma(i) = r.value.std_error;
    }
  }
  const Matrix inv = a.inverse();
  const Vector m = inv * y;
  const Vector err = (inv.array().square().matrix() * sigma.array().square().matrix()).cwiseSqrt();
  return {m(0), m(1), err(0), err(1), shots == 0 ? 0 : 2 * shots};
}

SingleModeMoments solve_single_mode(std::span<const StokesReadout> readouts, const SingleModeNetwork& net) {
  if (readouts.size() != 5) throw InputError("single-mode solve needs 5 readouts");
  for (int i = 0; i < 2; ++i) check_readout(readouts[i], StokesObservable::S1, StokesPort::Single, net.phases[i], 0.0);
  for (int i = 0; i < 3; ++i) {
    check_readout(readouts[2 + i], StokesObservable::S1Squared, StokesPort::Single, net.phases[i], 0.0);
  }
  const ReferenceMoments ref = reference_moments(net.reference);

  Vector y(2);
  for (int i = 0; i < 2; ++i) y(i) = readouts[i].value.value;
  const Vector means = means_system(net, ref).partialPivLu().solve(y);

  // Second moments: S1^2 is affine in (<q^2>, <p^2>, <sym>).
  auto forward = [&](const Vector& theta) {
    SignalMoments s{Vector::Zero(2), Matrix::Zero(2, 2)};
    s.second << theta(0), theta(2), theta(2), theta(1);
    Vector f(3);
    for (int i = 0; i < 3; ++i) f(i) = stokes_s1_squared(s, ref, net.phases[i]);
    return f;
  };
  const Vector base = forward(Vector::Zero(3));
  Matrix m(3, 3);
  for (int j = 0; j < 3; ++j) m.col(j) = forward(Vector::Unit(3, j)) - base;
  if (relative_det(m) < kConditioningThreshold) {
    if (std::abs(ref.q2_minus_p2) < kConditioningThreshold && std::abs(ref.symmetrized_qp()) < kConditioningThreshold) {
      throw ConditioningError(
          "reference is phase-insensitive (<q_r^2> = <p_r^2>, zero symmetrized <q_r p_r>): S1^2 cannot separate "
          "<q_k^2> from <p_k^2>; increase theta_r or d_r");
    }
    throw ConditioningError("S1^2 phase set is degenerate; change the three reference phases");
  }
  Vector y2(3);
  for (int i = 0; i < 3; ++i) y2(i) = readouts[2 + i].value.value;
  const Vector theta = m.partialPivLu().solve(y2 - base);
  return {means(0), means(1), theta(0), theta(1), theta(2)};
}

CBlockSolution solve_C_block(std::span<const StokesReadout> readouts, const SingleModeMoments& mode1,
                             const SingleModeMoments& mode2, const TwoModeNetwork& net) {
  if (readouts.size() != 5) throw InputError("C-block solve needs 5 readouts");
  check_readout(readouts[0], StokesObservable::S1Squared, StokesPort::C, net.phi1, 0.0);
  check_readout(readouts[1], StokesObservable::S1Squared, StokesPort::D, net.phi2, 0.0);
  check_readout(readouts[2], StokesObservable::S1Squared, StokesPort::D, net.phi2_alt, 0.0);
  check_readout(readouts[3], StokesObservable::S1xS1, StokesPort::Both, net.phi1, net.phi2);
  check_readout(readouts[4], StokesObservable::S3, StokesPort::Both, net.phi1, net.phi2);

  const ReferenceMoments c = reference_moments(net.ref_c);
  const ReferenceMoments d = reference_moments(net.ref_d);
  const RefSide rc = rotate(c, net.phi1);
  const RefSide rd = rotate(d, net.phi2);
  const double coefficient = rc.mean(0) * rd.mean(1) - rc.mean(1) * rd.mean(0);
  CBlockSolution sol;
  sol.used_s3 = std::abs(coefficient) < kS1xS1Threshold;

  // Unknowns: <q1 q2>, <p1 p2>, <q1 p2>, <p1 q2>.
  constexpr std::array<std::pair<int, int>, 4> kCross = {{{0, 2}, {1, 3}, {0, 3}, {1, 2}}};
  auto forward = [&](const Vector& theta) {
    SignalMoments s{Vector::Zero(4), Matrix::Zero(4, 4)};
    s.means << mode1.q_mean, mode1.p_mean, mode2.q_mean, mode2.p_mean;
    s.second(0, 0) = mode1.q2;
    s.second(1, 1) = mode1.p2;
    s.second(0, 1) = s.second(1, 0) = mode1.sym;
    s.second(2, 2) = mode2.q2;
    s.second(3, 3) = mode2.p2;
    s.second(2, 3) = s.second(3, 2) = mode2.sym;
    for (int j = 0; j < 4; ++j) {
      const auto [r, col] = kCross[static_cast<std::size_t>(j)];
      s.second(r, col) = s.second(col, r) = theta(j);
    }
    Vector f(4);
    f(0) = stokes_s1_squared(s, StokesPort::C, c, net.phi1);
    f(1) = stokes_s1_squared(s, StokesPort::D, d, net.phi2);
    f(2) = stokes_s1_squared(s, StokesPort::D, d, net.phi2_alt);
    f(3) = sol.used_s3 ? stokes_s3(s, c, net.phi1, d, net.phi2) : stokes_s1_x_s1(s, c, net.phi1, d, net.phi2);
    return f;
  };
  const Vector base = forward(Vector::Zero(4));
  Matrix m(4, 4);
  for (int j = 0; j < 4; ++j) m.col(j) = forward(Vector::Unit(4, j)) - base;
  if (relative_det(m) < kConditioningThreshold) {
    if (relative_det(m.topLeftCorner(2, 2)) < kConditioningThreshold) {
      throw ConditioningError(
          "references c and d have proportional quadrature variances (<q_c^2><p_d^2> = <p_c^2><q_d^2>), so the "
          "S1^2 pair cannot separate <q1 q2> from <p1 p2>; change beta, theta or gamma of one reference");
    }
    throw ConditioningError("S1^2 at phi2_alt = " + format_phase(net.phi2_alt) +
                            " is insensitive to <q1 p2> + <p1 q2>; change phi2_alt or theta_d");
  }
  Vector y(4);
  for (int i = 0; i < 3; ++i) y(i) = readouts[static_cast<std::size_t>(i)].value.value;
  y(3) = readouts[sol.used_s3 ? 4 : 3].value.value;
  const Vector theta = m.partialPivLu().solve(y - base);
  sol.cross << theta(0), theta(2), theta(3), theta(1);
  const Vector2 m1(mode1.q_mean, mode1.p_mean);
  const Vector2 m2(mode2.q_mean, mode2.p_mean);
  sol.c = sol.cross - m1 * m2.transpose();
  return sol;
}

namespace {

struct Reconstruction {
  Vector means;
  Matrix gamma;
  bool used_s3 = false;
};

Reconstruction reconstruct(const std::vector<StokesReadout>& readouts, const StokesConfig& config) {
  const std::span<const StokesReadout> all(readouts);
  SingleModeNetwork net1 = config.single;
  net1.mode = 0;
  SingleModeNetwork net2 = config.single;
  net2.mode = 1;
  const SingleModeMoments m1 = solve_single_mode(all.subspan(0, 5), net1);
  const SingleModeMoments m2 = solve_single_mode(all.subspan(5, 5), net2);
  const CBlockSolution cb = solve_C_block(all.subspan(10, 5), m1, m2, config.two_mode);

  Reconstruction r;
  r.means = Vector(4);
  r.means << m1.q_mean, m1.p_mean, m2.q_mean, m2.p_mean;
  Matrix second = Matrix::Zero(4, 4);
  second.topLeftCorner(2, 2) << m1.q2, m1.sym, m1.sym, m1.p2;
  second.bottomRightCorner(2, 2) << m2.q2, m2.sym, m2.sym, m2.p2;
  second.topRightCorner(2, 2) = cb.cross;
  second.bottomLeftCorner(2, 2) = cb.cross.transpose();
  r.gamma = second - r.means * r.means.transpose();
  r.gamma = 0.5 * (r.gamma + r.gamma.transpose()).eval();
  r.used_s3 = cb.used_s3;
  return r;
}

}  // namespace

StokesResult full_pipeline(const GaussianState& state, const StokesConfig& config) {
  require_two_mode(state);
  if (!validate(state)) throw InvalidCovarianceError("state violates the uncertainty relation");
  SingleModeNetwork net1 = config.single;
  net1.mode = 0;
  SingleModeNetwork net2 = config.single;
  net2.mode = 1;

  StokesResult result;
  std::vector<StokesReadout> parts[3];
  if (config.sampled) {
    parts[0] = sample_stokes(net1, state, config.shots, derive_seed(config.seed, 1));
    parts[1] = sample_stokes(net2, state, config.shots, derive_seed(config.seed, 2));
    parts[2] = sample_stokes(config.two_mode, state, config.shots, derive_seed(config.seed, 3));
  } else {
    parts[0] = expect_stokes(net1, state);
    parts[1] = expect_stokes(net2, state);
    parts[2] = expect_stokes(config.two_mode, state);
  }
  for (auto& p : parts) result.readouts.insert(result.readouts.end(), p.begin(), p.end());

  const Reconstruction rec = reconstruct(result.readouts, config);
  result.used_s3 = rec.used_s3;
  CovarianceEstimate& est = result.estimate;
  est.gamma_hat = rec.gamma;
  est.means_hat = rec.means;
  est.shots_used = config.sampled ? result.readouts.size() * config.shots : 0;

  if (config.sampled) {
    // First-order propagation of independent readout errors through the
    // reconstruction; the map is smooth and the readouts are independent.
    const std::size_t n = result.readouts.size();
    Matrix var = Matrix::Zero(4, 4);
    Vector mean_var = Vector::Zero(4);
    std::vector<StokesReadout> shifted = result.readouts;
    for (std::size_t i = 0; i < n; ++i) {
      const double sigma = result.readouts[i].value.std_error;
      if (sigma == 0.0) continue;
      const double x = result.readouts[i].value.value;
      const double h = 1e-6 * std::max(1.0, std::abs(x));
      shifted[i].value.value = x + h;
      const Reconstruction up = reconstruct(shifted, config);
      shifted[i].value.value = x - h;
      const Reconstruction down = reconstruct(shifted, config);
      shifted[i].value.value = x;
      const Matrix dg = (up.gamma - down.gamma) / (2.0 * h);
      const Vector dm = (up.means - down.means) / (2.0 * h);
      var += (dg.array().square() * sigma * sigma).matrix();
      mean_var += (dm.array().square() * sigma * sigma).matrix();
    }
    est.std_errors = var.cwiseSqrt();
    est.means_std_errors = mean_var.cwiseSqrt();
    result.verdict = verdict_from_estimate(est.gamma_hat, est.std_errors);
  } else {
    result.verdict = verdict_from_estimate(est.gamma_hat);
  }
  return result;
}

void write_readouts_csv(std::span<const StokesReadout> readouts, std::ostream& out) {
  out << "observable,port,phi1,phi2,value,std_error,n_shots\n";
  out.precision(17);
  for (const StokesReadout& r : readouts) {
    out << to_string(r.observable) << ',' << port_name(r.port) << ',' << r.phi1 << ',' << r.phi2 << ','
        << r.value.value << ',' << r.value.std_error << ',' << r.value.n_shots << '\n';
  }
}

}  // namespace gaussep
