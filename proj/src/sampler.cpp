#include "gaussep/sampler.hpp"

#include "gaussep/errors.hpp"
#include "gaussep/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <random>
#include <thread>
#include <vector>

namespace gaussep {

void parallel_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& body) {
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, n_chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < n_chunks; c = next++) body(c);
    });
  }
}

ShotBatch sample_wigner(const GaussianState& state, std::size_t n_shots, std::uint64_t seed, std::uint64_t stream) {
  if (n_shots == 0) throw InputError("sample_wigner needs at least one shot");
  Eigen::LLT<Matrix> llt(state.cov());
  if (llt.info() != Eigen::Success) {
    throw InvalidCovarianceError("covariance is not positive definite; no Wigner sampling law");
  }
  const Matrix lower = llt.matrixL();
  const Eigen::Index dim = state.means().size();

  ShotBatch batch;
  batch.samples.resize(static_cast<Eigen::Index>(n_shots), dim);
  batch.seed = seed;
  batch.stream = stream;
  batch.n_shots = n_shots;

  const std::size_t n_chunks = (n_shots + kChunkShots - 1) / kChunkShots;
  parallel_chunks(n_chunks, [&](std::size_t chunk) {
    Rng rng = make_stream(seed, stream, chunk);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector z(dim);
    const std::size_t begin = chunk * kChunkShots;
    const std::size_t end = std::min(n_shots, begin + kChunkShots);
    for (std::size_t i = begin; i < end; ++i) {
      for (Eigen::Index k = 0; k < dim; ++k) z(k) = normal(rng);
      batch.samples.row(static_cast<Eigen::Index>(i)) = (state.means() + lower * z).transpose();
    }
  });
  return batch;
}

MomentEstimate mean_estimate(std::span<const double> values) {
  MomentEstimate est;
  est.n_shots = values.size();
  if (values.empty()) return est;
  // Welford keeps the variance accurate for large offsets.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double v : values) {
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  }
  est.value = mean;
  if (values.size() > 1) {
    const double var = m2 / static_cast<double>(values.size() - 1);
    est.std_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return est;
}

MomentEstimate estimate_functional(const ShotBatch& batch, const ShotFunctional& f) {
  if (batch.n_shots == 0) throw InputError("empty shot batch");
  std::vector<double> values(batch.n_shots);
  for (std::size_t i = 0; i < batch.n_shots; ++i) values[i] = f(batch.row(i));
  return mean_estimate(values);
}

void write_batch_csv(const ShotBatch& batch, std::ostream& out) {
  const Eigen::Index dim = batch.samples.cols();
  for (Eigen::Index k = 0; k < dim; ++k) {
    out << (k % 2 == 0 ? "q" : "p") << (k / 2 + 1) << (k + 1 < dim ? "," : "\n");
  }
  const auto old_precision = out.precision(17);
  for (Eigen::Index i = 0; i < batch.samples.rows(); ++i) {
    for (Eigen::Index k = 0; k < dim; ++k) out << batch.samples(i, k) << (k + 1 < dim ? "," : "\n");
  }
  out.precision(old_precision);
}

}  // namespace gaussep
