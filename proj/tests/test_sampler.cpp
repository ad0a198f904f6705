#include "gaussep/errors.hpp"
#include "gaussep/rng.hpp"
#include "gaussep/sampler.hpp"
#include "gaussep/states.hpp"

#include "fock.hpp"
#include "weyl.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <sstream>

using namespace gaussep;

namespace {

double evaluate(const weyl::Poly& f, std::span<const double> x) {
  std::complex<double> acc = 0.0;
  for (const auto& [e, c] : f.terms()) {
    double mono = 1.0;
    for (std::size_t i = 0; i < e.size(); ++i) mono *= std::pow(x[i], e[i]);
    acc += c * mono;
  }
  return acc.real();
}


SymplecticTransform shift(double dq1, double dp1, double dq2, double dp2) {
  return SymplecticTransform(Matrix::Identity(4, 4), (Vector(4) << dq1, dp1, dq2, dp2).finished());
}

}  // namespace

TEST(Rng, StreamsAreDistinctAndRepeatable) {
  Rng a = make_stream(1, 0);
  Rng b = make_stream(1, 0);
  Rng c = make_stream(1, 1);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_EQ(derive_seed(9, 4), derive_seed(9, 4));
}

TEST(Sampler, FixedSeedIsBitIdentical) {
  const GaussianState s = random_state(3, 0.5, 0.5);
  const ShotBatch a = sample_wigner(s, 10000, 42, 2);
  const ShotBatch b = sample_wigner(s, 10000, 42, 2);
  EXPECT_TRUE(a.samples == b.samples);
  const ShotBatch c = sample_wigner(s, 10000, 43, 2);
  EXPECT_FALSE(a.samples == c.samples);
  // A prefix of a longer batch equals the shorter one chunk for chunk.
  const ShotBatch longer = sample_wigner(s, 3 * kChunkShots, 42, 2);
  EXPECT_TRUE(longer.samples.topRows(kChunkShots) == sample_wigner(s, kChunkShots, 42, 2).samples);
}

TEST(Sampler, RejectsBadInput) {
  EXPECT_THROW(sample_wigner(GaussianState::vacuum(1), 0, 1), InputError);
  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  EXPECT_THROW(sample_wigner(GaussianState(Vector::Zero(2), singular), 10, 1), InvalidCovarianceError);
}

TEST(Sampler, SecondMomentsWithinFiveSigma) {
  const GaussianState s = apply_transform(random_state(8, 0.6, 0.6), shift(0.3, -0.2, -0.4, 0.1));
  const ShotBatch b = sample_wigner(s, 200000, 5);
  for (int i = 0; i < 4; ++i) {
    const MomentEstimate m = estimate_functional(b, [i](auto x) { return x[i]; });
    EXPECT_LT(std::abs(m.value - s.means()(i)), 5 * m.std_error) << i;
    for (int j = i; j < 4; ++j) {
      const double truth = s.cov()(i, j) + s.means()(i) * s.means()(j);
      const MomentEstimate mm = estimate_functional(b, [i, j](auto x) { return x[i] * x[j]; });
      EXPECT_LT(std::abs(mm.value - truth), 5 * mm.std_error) << i << j;
    }
  }
}

TEST(Sampler, NumberMomentsOfThermalMatchFockSums) {
  // Sample means of Weyl symbols reproduce operator expectations.
  for (double n_bar : {0.5, 2.0}) {
    const auto sums = fock::thermal_sums(n_bar);
    const weyl::Poly n = weyl::star(weyl::creation(2, 0), weyl::annihilation(2, 0));
    const weyl::Poly n2 = weyl::star(n, n);
    const ShotBatch b = sample_wigner(thermal(n_bar), 200000, 17);
    const MomentEstimate e1 = estimate_functional(b, [&](auto x) { return evaluate(n, x); });
    const MomentEstimate e2 = estimate_functional(b, [&](auto x) { return evaluate(n2, x); });
    EXPECT_LT(std::abs(e1.value - sums.mean_n), 5 * e1.std_error);
    EXPECT_LT(std::abs(e2.value - sums.mean_n2), 5 * e2.std_error);
  }
}

TEST(Sampler, MeanEstimate) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const MomentEstimate m = mean_estimate(v);
  EXPECT_DOUBLE_EQ(m.value, 2.5);
  EXPECT_NEAR(m.std_error, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_EQ(m.n_shots, 4u);
}

TEST(Sampler, CsvLayout) {
  std::ostringstream out;
  write_batch_csv(sample_wigner(GaussianState::vacuum(2), 3, 1), out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "q1,p1,q2,p2");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(ParallelChunks, VisitsEveryChunkOnce) {
  std::vector<std::atomic<int>> hits(257);
  parallel_chunks(hits.size(), [&](std::size_t c) { hits[c]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}
