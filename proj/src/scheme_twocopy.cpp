#include "gaussep/scheme_twocopy.hpp"

#include "gaussep/errors.hpp"
#include "gaussep/rng.hpp"
#include "gaussep/scheme_stokes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace gaussep {

namespace {

constexpr double kConditioningThreshold = 1e-9;

double det_from_purity(double purity, int n_modes) {
  const double scale = std::ldexp(1.0, n_modes);
  return 1.0 / (scale * scale * purity * purity);
}

// Output mode positions after both OPAs.
constexpr int kA4 = 0;
constexpr int kB4 = 1;
constexpr int kA3 = 2;
constexpr int kB3 = 3;

constexpr int q_of(int mode) { return 2 * mode; }
constexpr int p_of(int mode) { return 2 * mode + 1; }

// O_odd = p_A q_B - q_A p_B, O_even = q_A q_B + p_A p_B.
double stokes_i(std::span<const double> x, int a, int b) {
  return x[p_of(a)] * x[q_of(b)] - x[q_of(a)] * x[p_of(b)];
}

double stokes_r(std::span<const double> x, int a, int b) {
  return x[q_of(a)] * x[q_of(b)] + x[p_of(a)] * x[p_of(b)];
}

void require_two_mode(const GaussianState& state) {
  if (state.n_modes() != 2) throw UnsupportedError("two-copy scheme takes a two-mode state");
}

void require_valid(const GaussianState& state) {
  if (!validate(state)) throw InvalidCovarianceError("state violates the uncertainty relation");
}

// Reassembles C from X = q1q2 + p1p2, Y = q1p2 - p1q2, X' = q1q2 - p1p2,
// Y' = q1p2 + p1q2.
Matrix2 c_from_combinations(double x, double y, double xp, double yp) {
  Matrix2 c;
  c << 0.5 * (x + xp), 0.5 * (y + yp), 0.5 * (yp - y), 0.5 * (x - xp);
  return c;
}

}  // namespace

SwapTestResult swap_test(const GaussianState& state, std::size_t n_shots, std::uint64_t seed) {
  require_valid(state);
  if (n_shots == 0) throw InsufficientShotsError("SWAP test needs at least one shot");
  const double mu = purity(state);
  const double p = std::clamp(0.5 * (1.0 + mu), 0.0, 1.0);
  Rng rng = make_stream(seed, 0);
  std::binomial_distribution<std::uint64_t> outcomes(n_shots, p);
  const std::uint64_t plus = outcomes(rng);

  SwapTestResult r;
  r.n_shots = n_shots;
  r.n_modes = state.n_modes();
  r.p_plus = static_cast<double>(plus) / static_cast<double>(n_shots);
  r.purity_hat = 2.0 * r.p_plus - 1.0;
  r.purity_std_error = 2.0 * std::sqrt(r.p_plus * (1.0 - r.p_plus) / static_cast<double>(n_shots));
  if (r.purity_hat > 0.0) {
    const double det = det_from_purity(r.purity_hat, r.n_modes);
    r.det_hat = det;
    r.det_std_error = 2.0 * det / r.purity_hat * r.purity_std_error;
  }
  return r;
}

SwapTestResult swap_test_exact(const GaussianState& state) {
  require_valid(state);
  SwapTestResult r;
  r.n_modes = state.n_modes();
  r.purity_hat = purity(state);
  r.p_plus = 0.5 * (1.0 + r.purity_hat);
  r.det_hat = det_from_purity(r.purity_hat, r.n_modes);
  r.det_std_error = 0.0;
  return r;
}

Matrix2 OpaConstants::first() const {
  Matrix2 m;
  m << m1, n1, m2, n2;
  return m;
}

Matrix2 OpaConstants::second() const {
  Matrix2 m;
  m << m1p, n1p, m2p, n2p;
  return m;
}

OpaConstants OpaParams::constants() const {
  const double c1 = std::cosh(g1);
  const double s1 = std::sinh(g1);
  const double c2 = std::cosh(g2);
  const double s2 = std::sinh(g2);
  const double dphi = phi1 - phi2;
  OpaConstants k;
  k.m1 = s1 * s2 * std::sin(dphi);
  k.n1 = -c1 * c2 + s1 * s2 * std::cos(dphi);
  k.m2 = c1 * c2 + s1 * s2 * std::cos(dphi);
  k.n2 = -s1 * s2 * std::sin(dphi);
  k.m1p = -c1 * s2 * std::sin(phi2) + s1 * c2 * std::sin(phi1);
  k.n1p = c1 * s2 * std::cos(phi2) - s1 * c2 * std::cos(phi1);
  k.m2p = c1 * s2 * std::cos(phi2) + s1 * c2 * std::cos(phi1);
  k.n2p = s1 * c2 * std::sin(phi1) + c1 * s2 * std::sin(phi2);
  return k;
}

void OpaParams::check() const {
  for (double v : {g1, phi1, g2, phi2}) {
    if (!std::isfinite(v)) throw InputError("OPA parameters must be finite");
  }
  if (g1 < 0.0 || g2 < 0.0) throw InputError("OPA gains must be >= 0");
  const OpaConstants k = constants();
  // Scale-free: the first system's rows have norm ~cosh g1 cosh g2.
  const double scale1 = k.first().row(0).norm() * k.first().row(1).norm();
  if (std::abs(k.first().determinant()) < kConditioningThreshold * scale1) {
    throw ConditioningError("OPA (O1, O2) system is singular; change the gains g1, g2");
  }
  const double scale2 = k.second().row(0).norm() * k.second().row(1).norm();
  if (scale2 == 0.0 || std::abs(k.second().determinant()) < kConditioningThreshold * scale2) {
    std::ostringstream os;
    os << "OPA (O3, O4) system is singular (determinant sinh^2 g1 cosh^2 g2 - cosh^2 g1 sinh^2 g2 vanishes at g1 = "
          "g2 = "
       << g1 << "); use different gains g1 != g2";
    throw ConditioningError(os.str());
  }
}

MomentEstimate det_c_estimate(const CEstimate& c) {
  MomentEstimate m;
  m.value = c.c.determinant();
  // d det / d c_ij = cofactor.
  const Eigen::Vector4d grad(c.c(1, 1), -c.c(1, 0), -c.c(0, 1), c.c(0, 0));
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  if (c.covariance) {
    cov = *c.covariance;
  } else {
    cov.diagonal() << c.std_errors(0, 0), c.std_errors(0, 1), c.std_errors(1, 0), c.std_errors(1, 1);
    cov.diagonal() = cov.diagonal().array().square().matrix();
  }
  m.std_error = std::sqrt(std::max(0.0, grad.dot(cov * grad)));
  m.n_shots = c.shots_used;
  return m;
}

CEstimate method1_c(const GaussianState& state, std::size_t n_shots, std::uint64_t seed) {
  require_two_mode(state);
  require_valid(state);
  if (n_shots < 4 * kMinShotsPerPair) {
    std::ostringstream os;
    os << "Method 1 needs at least " << 4 * kMinShotsPerPair << " shots (got " << n_shots << ")";
    throw InsufficientShotsError(os.str());
  }
  // Pair index -> (Alice quadrature, Bob quadrature) phase-space indices.
  constexpr std::array<std::pair<int, int>, 4> kPairs = {{{0, 2}, {1, 3}, {0, 3}, {1, 2}}};
  const ShotBatch batch = sample_wigner(state, n_shots, seed, 0);
  Rng choice = make_stream(seed, 1);
  std::uniform_int_distribution<int> pick(0, 3);
  std::array<std::vector<double>, 4> xs;
  std::array<std::vector<double>, 4> ys;
  for (std::size_t i = 0; i < n_shots; ++i) {
    const int g = pick(choice);
    const auto row = batch.row(i);
    xs[g].push_back(row[kPairs[g].first]);
    ys[g].push_back(row[kPairs[g].second]);
  }
  CEstimate est;
  est.shots_used = n_shots;
  for (int g = 0; g < 4; ++g) {
    const std::size_t n = xs[g].size();
    if (n < kMinShotsPerPair) {
      std::ostringstream os;
      os << "Method 1: quadrature pair " << g << " received " << n << " shots (< " << kMinShotsPerPair << ")";
      throw InsufficientShotsError(os.str());
    }
    const MomentEstimate mx = mean_estimate(xs[g]);
    const MomentEstimate my = mean_estimate(ys[g]);
    std::vector<double> prod(n);
    for (std::size_t i = 0; i < n; ++i) prod[i] = (xs[g][i] - mx.value) * (ys[g][i] - my.value);
    const MomentEstimate cov = mean_estimate(prod);
    const double bessel = static_cast<double>(n) / static_cast<double>(n - 1);
    const int row = kPairs[g].first == 0 ? 0 : 1;
    const int col = kPairs[g].second == 2 ? 0 : 1;
    est.c(row, col) = cov.value * bessel;
    est.std_errors(row, col) = cov.std_error * bessel;
  }
  return est;
}

Method2Result method2_det_c(const Method2Inputs& in, double tolerance) {
  for (double v : {in.det_a, in.det_b, in.det_gamma, in.det_rotated}) {
    if (!std::isfinite(v)) throw InputError("Method 2 inputs must be finite");
  }
  if (in.det_a <= 0.0 || in.det_b <= 0.0) throw InputError("Method 2 needs det A > 0 and det B > 0");
  const double lambda = std::sqrt(in.det_a);
  const double mu = std::sqrt(in.det_b);
  const double l = lambda + mu;
  const double lm = lambda * mu;

  auto admissible = [&](double sigma, double pi) {
    const double disc = sigma * sigma - 4.0 * pi;
    if (disc < -tolerance) return false;
    const double root = std::sqrt(std::max(0.0, disc));
    Matrix g = Matrix::Zero(4, 4);
    g(0, 0) = g(1, 1) = lambda;
    g(2, 2) = g(3, 3) = mu;
    g(0, 2) = g(2, 0) = 0.5 * (sigma + root);
    g(1, 3) = g(3, 1) = 0.5 * (sigma - root);
    return uncertainty_min_eigenvalue(g) >= -tolerance;
  };
  auto det_gamma_of = [&](double sigma, double pi) { return lm * lm - lm * (sigma * sigma - 2.0 * pi) + pi * pi; };

  Method2Result result;
  if (in.det_rotated_minus) {
    const double plus = in.det_rotated;
    const double minus = *in.det_rotated_minus;
    if (!std::isfinite(minus)) throw InputError("Method 2 inputs must be finite");
    const double sigma = (plus - minus) / l;
    const double pi = 0.5 * (plus + minus) - 0.25 * l * l;
    const double predicted = det_gamma_of(sigma, pi);
    result.det_gamma_predicted = predicted;
    result.candidates.push_back({sigma, pi, admissible(sigma, pi)});
    if (std::abs(predicted - in.det_gamma) > tolerance) {
      std::ostringstream os;
      os << "Method 2: measured det Gamma " << in.det_gamma << " differs from the Simon-form prediction " << predicted
         << " by more than " << tolerance << "; the state is not of Simon form";
      throw ModelMismatchError(os.str());
    }
    result.det_c = pi;
    result.s_plus_t = sigma;
    return result;
  }

  // sigma = alpha - beta pi from the rotated marginal, substituted into det Gamma.
  const double alpha = (4.0 * in.det_rotated - l * l) / (2.0 * l);
  const double beta = 2.0 / l;
  const double a2 = 1.0 - lm * beta * beta;
  const double a1 = 2.0 * lm * (alpha * beta + 1.0);
  const double a0 = lm * lm - lm * alpha * alpha - in.det_gamma;
  std::vector<double> roots;
  if (std::abs(a2) < 1e-12 * std::max(1.0, std::abs(a1))) {
    if (a1 != 0.0) roots.push_back(-a0 / a1);
  } else {
    const double disc = a1 * a1 - 4.0 * a2 * a0;
    const double scale = std::max(1.0, a1 * a1);
    if (disc >= -tolerance * scale) {
      const double root = std::sqrt(std::max(0.0, disc));
      // Numerically stable pair.
      const double qv = -0.5 * (a1 + std::copysign(root, a1));
      if (qv != 0.0) {
        roots.push_back(qv / a2);
        roots.push_back(a0 / qv);
      } else {
        roots.push_back(0.0);
      }
      if (roots.size() == 2 && std::abs(roots[0] - roots[1]) <= 1e-12 * std::max(1.0, std::abs(roots[0]))) {
        roots.pop_back();
      }
    }
  }
  if (roots.empty()) {
    throw ModelMismatchError("Method 2: no real solution for s t; the state is not of Simon form within noise");
  }
  std::sort(roots.begin(), roots.end());
  for (double pi : roots) result.candidates.push_back({alpha - beta * pi, pi, admissible(alpha - beta * pi, pi)});
  const auto n_valid = std::count_if(result.candidates.begin(), result.candidates.end(),
                                     [](const Method2Candidate& c) { return c.valid; });
  if (n_valid == 0) {
    throw ModelMismatchError(
        "Method 2: no root reassembles a physical Simon-form covariance; the state is not of Simon form");
  }
  if (n_valid > 1) {
    result.ambiguous = true;
    return result;
  }
  for (const Method2Candidate& c : result.candidates) {
    if (c.valid) {
      result.det_c = c.st;
      result.s_plus_t = c.s_plus_t;
    }
  }
  return result;
}

namespace {

GaussianState rotated_marginal(const GaussianState& state, double theta) {
  return marginal(apply_transform(state, rotation_theta(theta)), 0);
}

}  // namespace

Method2Inputs method2_exact_inputs(const GaussianState& state, bool with_minus) {
  require_two_mode(state);
  const Invariants inv = invariants(state.cov());
  Method2Inputs in;
  in.det_a = inv.det_a;
  in.det_b = inv.det_b;
  in.det_gamma = inv.det_gamma;
  in.det_rotated = rotated_marginal(state, std::numbers::pi / 4.0).cov().determinant();
  if (with_minus) in.det_rotated_minus = rotated_marginal(state, -std::numbers::pi / 4.0).cov().determinant();
  return in;
}

GaussianState opa_output_state(const GaussianState& state, const OpaParams& opa) {
  require_two_mode(state);
  const GaussianState copies = tensor_product(state, state);
  const std::array<int, 2> alice{0, 2};
  const std::array<int, 2> bob{1, 3};
  const SymplecticTransform t =
      compose(embed(gaussep::opa(opa.g2, opa.phi2), 4, bob), embed(gaussep::opa(opa.g1, opa.phi1), 4, alice));
  return apply_transform(copies, t);
}

OpaReadouts opa_readouts_exact(const GaussianState& state, const OpaParams& opa) {
  const GaussianState out = opa_output_state(state, opa);
  // Distinct output modes commute, so products are plain second moments.
  const Matrix m = out.cov() + out.means() * out.means().transpose();
  auto e = [&](int i, int j) { return m(i, j); };
  auto o_i = [&](int a, int b) { return e(p_of(a), q_of(b)) - e(q_of(a), p_of(b)); };
  auto o_r = [&](int a, int b) { return e(q_of(a), q_of(b)) + e(p_of(a), p_of(b)); };
  OpaReadouts r;
  r.o[0] = {o_i(kA3, kB3), 0.0, 0};
  r.o[1] = {o_r(kA3, kB3), 0.0, 0};
  r.o[2] = {o_i(kA3, kB4), 0.0, 0};
  r.o[3] = {o_r(kA3, kB4), 0.0, 0};
  return r;
}

OpaReadouts opa_readouts_sampled(const GaussianState& state, const OpaParams& opa, std::size_t shots,
                                 std::uint64_t seed) {
  const GaussianState out = opa_output_state(state, opa);
  const std::array<ShotFunctional, 4> fs = {
      [](std::span<const double> x) { return stokes_i(x, kA3, kB3); },
      [](std::span<const double> x) { return stokes_r(x, kA3, kB3); },
      [](std::span<const double> x) { return stokes_i(x, kA3, kB4); },
      [](std::span<const double> x) { return stokes_r(x, kA3, kB4); },
  };
  OpaReadouts r;
  for (std::size_t i = 0; i < 4; ++i) {
    r.o[i] = estimate_functional(sample_wigner(out, shots, seed, i), fs[i]);
  }
  return r;
}

CEstimate c_from_opa_readouts(const OpaReadouts& r, const OpaParams& opa) {
  opa.check();
  const OpaConstants k = opa.constants();
  const Matrix2 inv1 = k.first().inverse();
  const Matrix2 inv2 = k.second().inverse();
  const Eigen::Vector2d xy = inv1 * Eigen::Vector2d(r.o[0].value, r.o[1].value);
  const Eigen::Vector2d xyp = inv2 * Eigen::Vector2d(r.o[2].value, r.o[3].value);
  // Readouts come from independent batches; the inversions correlate X with Y.
  Eigen::Matrix4d to_xy = Eigen::Matrix4d::Zero();
  to_xy.topLeftCorner<2, 2>() = inv1;
  to_xy.bottomRightCorner<2, 2>() = inv2;
  Eigen::Vector4d readout_var;
  for (int i = 0; i < 4; ++i) readout_var(i) = r.o[i].std_error * r.o[i].std_error;
  Eigen::Matrix4d to_c;
  to_c << 0.5, 0.0, 0.5, 0.0, 0.0, 0.5, 0.0, 0.5, 0.0, -0.5, 0.0, 0.5, 0.5, 0.0, -0.5, 0.0;
  const Eigen::Matrix4d lin = to_c * to_xy;
  CEstimate est;
  est.c = c_from_combinations(xy(0), xy(1), xyp(0), xyp(1));
  est.covariance = lin * readout_var.asDiagonal() * lin.transpose();
  const Eigen::Vector4d sd = est.covariance->diagonal().cwiseMax(0.0).cwiseSqrt();
  est.std_errors << sd(0), sd(1), sd(2), sd(3);
  for (const MomentEstimate& o : r.o) est.shots_used += o.n_shots;
  return est;
}

Method3Result method3_c(const GaussianState& state, const OpaParams& opa, const Method3Options& options) {
  require_two_mode(state);
  require_valid(state);
  opa.check();
  Method3Result result;
  GaussianState centered = state;
  if (!options.assume_zero_mean) {
    const std::size_t shots = options.sampled ? options.shots : 0;
    SingleModeNetwork net;
    for (int mode = 0; mode < 2; ++mode) {
      net.mode = mode;
      const SingleModeMeans m = stokes_means(net, state, shots, derive_seed(options.seed, 100 + mode));
      result.means_removed(2 * mode) = m.q_mean;
      result.means_removed(2 * mode + 1) = m.p_mean;
      result.shots_used += m.shots_used;
    }
    const SymplecticTransform shift(Matrix::Identity(4, 4), -result.means_removed);
    centered = apply_transform(state, shift);
  }
  if (options.sampled) {
    if (options.shots < kMinStokesShots) {
      std::ostringstream os;
      os << "Method 3 needs at least " << kMinStokesShots << " shots per observable (got " << options.shots << ")";
      throw InsufficientShotsError(os.str());
    }
    result.readouts = opa_readouts_sampled(centered, opa, options.shots, derive_seed(options.seed, 200));
  } else {
    result.readouts = opa_readouts_exact(centered, opa);
  }
  result.c = c_from_opa_readouts(result.readouts, opa);
  result.shots_used += result.c.shots_used;
  result.c.shots_used = result.shots_used;
  return result;
}

SeparabilityReport assemble_verdict(double det_a, double det_b, double det_c, double det_gamma) {
  return report_from_determinants(det_a, det_b, det_c, det_gamma);
}

SeparabilityReport assemble_verdict(const MomentEstimate& det_a, const MomentEstimate& det_b,
                                    const MomentEstimate& det_c, const MomentEstimate& det_gamma) {
  SeparabilityReport r = report_from_determinants(det_a.value, det_b.value, det_c.value, det_gamma.value);
  r.margin_error = std::sqrt(std::pow(det_a.std_error, 2) + std::pow(det_b.std_error, 2) +
                             4.0 * std::pow(det_c.std_error, 2) + 16.0 * std::pow(det_gamma.std_error, 2));
  return r;
}

std::string_view to_string(TwoCopyMethod m) {
  switch (m) {
    case TwoCopyMethod::M1:
      return "twocopy_m1";
    case TwoCopyMethod::M2:
      return "twocopy_m2";
    case TwoCopyMethod::M3:
      return "twocopy_m3";
  }
  return "?";
}

namespace {

MomentEstimate swap_det(const GaussianState& state, const TwoCopyConfig& config, std::uint64_t branch,
                        const char* what) {
  const SwapTestResult r = config.sampled ? swap_test(state, config.shots, derive_seed(config.seed, branch))
                                          : swap_test_exact(state);
  if (!r.det_hat) {
    std::ostringstream os;
    os << "SWAP test for " << what << " gave purity estimate " << r.purity_hat << " <= 0 with " << r.n_shots
       << " shots; increase shots";
    throw InsufficientShotsError(os.str());
  }
  return {*r.det_hat, *r.det_std_error, r.n_shots};
}

}  // namespace

TwoCopyResult run_twocopy(const GaussianState& state, const TwoCopyConfig& config) {
  require_two_mode(state);
  require_valid(state);
  TwoCopyResult result;
  result.method = config.method;
  result.det_a = swap_det(marginal(state, 0), config, 1, "det A");
  result.det_b = swap_det(marginal(state, 1), config, 2, "det B");
  result.det_gamma = swap_det(state, config, 3, "det Gamma");
  result.measurement_settings = 3;
  const std::size_t swap_shots = config.sampled ? 3 * config.shots : 0;

  switch (config.method) {
    case TwoCopyMethod::M1: {
      CEstimate c;
      if (config.sampled) {
        c = method1_c(state, config.shots, derive_seed(config.seed, 4));
      } else {
        c.c = blocks(state.cov()).c;
      }
      result.det_c = det_c_estimate(c);
      result.c = c;
      result.measurement_settings += 4;
      result.shots_used = swap_shots + c.shots_used;
      break;
    }
    case TwoCopyMethod::M2: {
      const MomentEstimate plus =
          swap_det(rotated_marginal(state, std::numbers::pi / 4.0), config, 5, "rotated marginal");
      Method2Inputs in{result.det_a.value, result.det_b.value, result.det_gamma.value, plus.value, std::nullopt};
      std::size_t method_shots = plus.n_shots;
      result.measurement_settings += 1;
      std::optional<MomentEstimate> minus;
      if (config.rotated_minus) {
        minus = swap_det(rotated_marginal(state, -std::numbers::pi / 4.0), config, 6, "rotated marginal");
        in.det_rotated_minus = minus->value;
        method_shots += minus->n_shots;
        result.measurement_settings += 1;
      }
      double tolerance = 1e-9;
      Vector x(4);
      Vector s(4);
      x << in.det_a, in.det_b, plus.value, minus ? minus->value : 0.0;
      s << result.det_a.std_error, result.det_b.std_error, plus.std_error, minus ? minus->std_error : 0.0;
      auto l_of = [](const Vector& v) { return std::sqrt(v(0)) + std::sqrt(v(1)); };
      auto st_of = [&](const Vector& v) { return 0.5 * (v(2) + v(3)) - 0.25 * l_of(v) * l_of(v); };
      if (config.sampled) {
        if (minus) {
          auto predicted = [&](const Vector& v) {
            const double lm = std::sqrt(v(0) * v(1));
            const double sigma = (v(2) - v(3)) / l_of(v);
            const double pi = st_of(v);
            return lm * lm - lm * (sigma * sigma - 2.0 * pi) + pi * pi;
          };
          tolerance = 5.0 * std::hypot(propagate_error(predicted, x, s), result.det_gamma.std_error) + 1e-9;
        } else {
          tolerance = 5.0 * s.head(3).maxCoeff() + 1e-9;
        }
      }
      const Method2Result m2 = method2_det_c(in, tolerance);
      result.method2 = m2;
      if (!m2.det_c) {
        throw ModelMismatchError(
            "Method 2: both roots give physical Simon-form covariances (ambiguous sign of det C); enable the "
            "-pi/4 rotated marginal to resolve");
      }
      result.det_c = {*m2.det_c, 0.0, method_shots};
      if (config.sampled && minus) result.det_c.std_error = propagate_error(st_of, x, s);
      result.shots_used = swap_shots + method_shots;
      break;
    }
    case TwoCopyMethod::M3: {
      const Method3Result m3 = method3_c(state, config.opa,
                                         {config.sampled, config.shots, derive_seed(config.seed, 7), config.assume_zero_mean});
      result.det_c = det_c_estimate(m3.c);
      result.c = m3.c;
      result.measurement_settings += 4;
      result.shots_used = swap_shots + m3.shots_used;
      break;
    }
  }
  result.report = config.sampled ? assemble_verdict(result.det_a, result.det_b, result.det_c, result.det_gamma)
                                 : assemble_verdict(result.det_a.value, result.det_b.value, result.det_c.value,
                                                    result.det_gamma.value);
  return result;
}

}  // namespace gaussep
