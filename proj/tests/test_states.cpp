#include "gaussep/errors.hpp"
#include "gaussep/sampler.hpp"
#include "gaussep/states.hpp"

#include "weyl.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace gaussep;

namespace {

ReferenceStateParams draw_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {u(rng), 1.5 * u(rng), 2.0 * std::numbers::pi * u(rng), 0.8 * u(rng), 2.0 * std::numbers::pi * u(rng)};
}

}  // namespace

TEST(ReferenceState, MomentsMatchWeylOracle) {
  std::mt19937_64 rng(21);
  const weyl::Poly q = weyl::Poly::variable(2, 0);
  const weyl::Poly p = weyl::Poly::variable(2, 1);
  for (int k = 0; k < 50; ++k) {
    const ReferenceStateParams prm = draw_params(rng);
    const GaussianState s = displaced_squeezed_thermal(prm);
    const ReferenceMoments m = reference_moments(prm);
    auto ex = [&](const weyl::Poly& f) { return weyl::gaussian_expectation(f, s.means(), s.cov()); };
    EXPECT_NEAR(m.q_mean, ex(q).real(), 1e-12);
    EXPECT_NEAR(m.p_mean, ex(p).real(), 1e-12);
    EXPECT_NEAR(m.q2, ex(q * q).real(), 1e-12);
    EXPECT_NEAR(m.p2, ex(p * p).real(), 1e-12);
    EXPECT_NEAR(std::abs(m.qp - ex(weyl::star(q, p))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(m.pq - ex(weyl::star(p, q))), 0.0, 1e-12);
    EXPECT_NEAR(m.q2_minus_p2, m.q2 - m.p2, 1e-12);
    EXPECT_NEAR(m.q2_plus_p2, m.q2 + m.p2, 1e-12);
  }
}

TEST(ReferenceState, ClosedFormSpecialCases) {
  // Coherent state |alpha>, alpha = 1: <q> = sqrt2, Var = 1/2.
  const ReferenceMoments coh = reference_moments({0.0, 1.0, 0.0, 0.0, 0.0});
  EXPECT_NEAR(coh.q_mean, std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(coh.q2, 2.5, 1e-14);
  EXPECT_NEAR(coh.p2, 0.5, 1e-14);
  // Squeezed vacuum along q: Var q = e^{-2 theta}/2.
  const ReferenceMoments sq = reference_moments({0.0, 0.0, 0.0, 0.4, 0.0});
  EXPECT_NEAR(sq.q2, std::exp(-0.8) / 2, 1e-14);
  EXPECT_NEAR(sq.p2, std::exp(0.8) / 2, 1e-14);
  EXPECT_NEAR(sq.qp.imag(), 0.5, 1e-15);
  EXPECT_NEAR(sq.pq.imag(), -0.5, 1e-15);
}

TEST(ReferenceState, RejectsBadParameters) {
  EXPECT_THROW(reference_moments({-0.1, 0.0, 0.0, 0.0, 0.0}), InputError);
  EXPECT_THROW(displaced_squeezed_thermal({0.0, -1.0, 0.0, 0.0, 0.0}), InputError);
  EXPECT_THROW(displaced_squeezed_thermal({0.0, 0.0, 0.0, std::nan(""), 0.0}), InputError);
}

TEST(ReferenceState, MonteCarloWithinFiveSigma) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 5; ++k) {
    const ReferenceStateParams prm = draw_params(rng);
    const ReferenceMoments m = reference_moments(prm);
    const ShotBatch b = sample_wigner(displaced_squeezed_thermal(prm), 100000, 1000 + k);
    const MomentEstimate q = estimate_functional(b, [](auto x) { return x[0]; });
    const MomentEstimate p2 = estimate_functional(b, [](auto x) { return x[1] * x[1]; });
    const MomentEstimate sym = estimate_functional(b, [](auto x) { return x[0] * x[1]; });
    EXPECT_LT(std::abs(q.value - m.q_mean), 5 * q.std_error);
    EXPECT_LT(std::abs(p2.value - m.p2), 5 * p2.std_error);
    EXPECT_LT(std::abs(sym.value - m.symmetrized_qp()), 5 * sym.std_error);
  }
}

TEST(Thermal, Covariance) {
  EXPECT_TRUE(thermal(1.5).cov().isApprox(2.0 * Matrix::Identity(2, 2)));
  EXPECT_THROW(thermal(-0.5), InputError);
}

TEST(SimonForm, PhysicalExample) {
  const GaussianState s = simon_form(0.8, 0.9, 0.3, -0.1);
  EXPECT_TRUE(validate(s));
  EXPECT_DOUBLE_EQ(s.cov()(0, 2), 0.3);
  EXPECT_DOUBLE_EQ(s.cov()(1, 3), -0.1);
}

TEST(SimonForm, RejectsUnphysicalCovariance) {
  // Satisfies lambda, mu >= 1/2 but violates Gamma + iJ/2 >= 0.
  EXPECT_THROW(simon_form(0.8, 0.6, 0.3, 0.1), InvalidCovarianceError);
  EXPECT_THROW(simon_form(0.4, 0.6, 0.0, 0.0), InvalidCovarianceError);
}

TEST(RandomState, PhysicalAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const GaussianState s = random_state(seed, 0.8, 1.0);
    EXPECT_TRUE(validate(s)) << seed;
    EXPECT_EQ(s.means().norm(), 0.0);
  }
  EXPECT_TRUE(random_state(5, 0.5, 0.5).cov() == random_state(5, 0.5, 0.5).cov());
  EXPECT_FALSE(random_state(5, 0.5, 0.5).cov() == random_state(6, 0.5, 0.5).cov());
}

TEST(RandomState, CoversBothVerdicts) {
  int entangled = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    entangled += is_entangled(simon_criterion(random_state(seed, 0.6, 0.6)).verdict);
  EXPECT_GT(entangled, 20);
  EXPECT_LT(entangled, 180);
}
