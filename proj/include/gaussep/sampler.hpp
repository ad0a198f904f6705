#pragma once

// Monte Carlo sampling of Gaussian Wigner densities.
//
// Gaussian Wigner functions are nonnegative, so they are proper probability
// laws; samples reproduce symmetrically ordered (Weyl) moments. Shots are
// generated in chunks of kChunkShots, chunk c drawing from
// make_stream(seed, stream, c), which keeps batches bit-identical for any
// worker count.

#include "gaussep/symplectic.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>

namespace gaussep {

inline constexpr std::size_t kChunkShots = 4096;

struct ShotBatch {
  /// n_shots x 2n, one phase-space point per row.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> samples;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::size_t n_shots = 0;

  std::span<const double> row(std::size_t i) const {
    return {samples.data() + i * static_cast<std::size_t>(samples.cols()), static_cast<std::size_t>(samples.cols())};
  }
};

struct MomentEstimate {
  double value = 0.0;
  /// Sample standard deviation over sqrt(n).
  double std_error = 0.0;
  std::size_t n_shots = 0;
};

/// Throws InvalidCovarianceError if the covariance is not positive definite
/// and InputError for n_shots == 0.
ShotBatch sample_wigner(const GaussianState& state, std::size_t n_shots, std::uint64_t seed,
                        std::uint64_t stream = 0);

using ShotFunctional = std::function<double(std::span<const double>)>;

/// Sample mean and standard error of f over the rows of `batch`.
MomentEstimate estimate_functional(const ShotBatch& batch, const ShotFunctional& f);

MomentEstimate mean_estimate(std::span<const double> values);

/// Header q1,p1,q2,p2,... then one row per shot.
void write_batch_csv(const ShotBatch& batch, std::ostream& out);

/// Runs body(chunk) for chunk in [0, n_chunks) on up to
/// hardware_concurrency threads. Bodies must write to disjoint outputs.
void parallel_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& body);

}  // namespace gaussep
