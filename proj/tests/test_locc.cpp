#include "gaussep/errors.hpp"
#include "gaussep/scheme_locc.hpp"
#include "gaussep/states.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gaussep;

namespace {

void expect_within_five_sigma(const LoccEstimate& e, const GaussianState& s) {
  for (int i = 0; i < 4; ++i) {
    EXPECT_LT(std::abs(e.means_hat(i) - s.means()(i)), 5 * e.means_std_errors(i)) << i;
    for (int j = 0; j < 4; ++j) {
      ASSERT_GT(e.std_errors(i, j), 0.0);
      EXPECT_LT(std::abs(e.gamma_hat(i, j) - s.cov()(i, j)), 5 * e.std_errors(i, j)) << i << "," << j;
    }
  }
}


SymplecticTransform shift(double dq1, double dp1, double dq2, double dp2) {
  return SymplecticTransform(Matrix::Identity(4, 4), (Vector(4) << dq1, dp1, dq2, dp2).finished());
}

}  // namespace

TEST(Locc, SchemeIRecoversTmsv) {
  const GaussianState s = two_mode_squeezed_vacuum(0.5);
  const LoccEstimate e = run_locc(s, {20000, LoccVariant::SchemeI}, 1);
  expect_within_five_sigma(e, s);
  EXPECT_TRUE(e.gamma_hat.isApprox(e.gamma_hat.transpose()));
  EXPECT_EQ(e.classical_bits, 0u);
  EXPECT_EQ(e.shots_used, 100000u);
  for (std::size_t n : e.group_shots) EXPECT_EQ(n, 20000u);
}

TEST(Locc, SchemeIRecoversDisplacedState) {
  const GaussianState s = apply_transform(random_state(4, 0.6, 0.6), shift(0.5, -0.3, 0.2, 0.4));
  expect_within_five_sigma(run_locc(s, {20000, LoccVariant::SchemeI}, 2), s);
}

TEST(Locc, SchemeIIRecoversTmsv) {
  const GaussianState s = two_mode_squeezed_vacuum(0.5);
  const LoccEstimate e = run_locc(s, {20000, LoccVariant::SchemeII}, 3);
  expect_within_five_sigma(e, s);
  EXPECT_EQ(e.classical_bits, 2u * 4u * 20000u + 1u);
  EXPECT_EQ(e.group_shots[0] + e.group_shots[1] + e.group_shots[3] + e.group_shots[4], 80000u);
  EXPECT_EQ(e.group_shots[2], 20000u);
}

TEST(Locc, ClassicalBitCount) {
  EXPECT_EQ((FiveGroupPlan{1000, LoccVariant::SchemeI}).classical_bits(), 0u);
  EXPECT_EQ((FiveGroupPlan{1000, LoccVariant::SchemeII}).classical_bits(), 8001u);
  EXPECT_EQ((FiveGroupPlan{1000, LoccVariant::SchemeII}).total_shots(), 5000u);
}

TEST(Locc, ErrorsShrinkWithShots) {
  const GaussianState s = two_mode_squeezed_vacuum(0.5);
  const double e1 = run_locc(s, {1000, LoccVariant::SchemeI}, 5).std_errors(0, 2);
  const double e2 = run_locc(s, {100000, LoccVariant::SchemeI}, 5).std_errors(0, 2);
  EXPECT_NEAR(e1 / e2, 10.0, 1.5);
}

TEST(Locc, Reproducible) {
  const GaussianState s = random_state(9, 0.5, 0.5);
  for (LoccVariant v : {LoccVariant::SchemeI, LoccVariant::SchemeII}) {
    const LoccEstimate a = run_locc(s, {5000, v}, 11);
    const LoccEstimate b = run_locc(s, {5000, v}, 11);
    EXPECT_TRUE(a.gamma_hat == b.gamma_hat);
    EXPECT_TRUE(a.std_errors == b.std_errors);
  }
}

TEST(Locc, Errors) {
  const GaussianState s = two_mode_squeezed_vacuum(0.5);
  EXPECT_THROW(run_locc(s, {99, LoccVariant::SchemeI}, 1), InsufficientShotsError);
  EXPECT_THROW(run_locc(thermal(0.5), {1000, LoccVariant::SchemeI}, 1), UnsupportedError);
  EXPECT_THROW(run_locc(GaussianState(Vector::Zero(4), 0.1 * Matrix::Identity(4, 4)), {1000, LoccVariant::SchemeI}, 1),
               InvalidCovarianceError);
}
