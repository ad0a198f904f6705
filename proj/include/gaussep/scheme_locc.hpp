#pragma once

// Five-observable local measurement schemes.
//
// Observables, one per group of copies:
//   A = q1 (x) q2, B = p1 (x) p2, C = sym1 (x) sym2, D = q1 (x) p2, E = p1 (x) q2
// with sym = (qp + pq)/2. Scheme I measures each group on N copies.
// Scheme II measures one of A, B, D, E chosen uniformly at random on each of
// 4N copies (Alice and Bob pick their quadrature independently) and C on
// the remaining N.
//
// Quadrature pairs are drawn from the Wigner marginal, which is the exact
// joint law of commuting quadratures. Group C outcomes are Wigner-sampled
// products q*p per mode: unbiased for <sym> but not the true outcome law of
// that observable.

#include "gaussep/estimation.hpp"

#include <array>
#include <cstdint>

namespace gaussep {

enum class LoccVariant { SchemeI, SchemeII };

enum class LoccGroup { A = 0, B = 1, C = 2, D = 3, E = 4 };

struct FiveGroupPlan {
  std::size_t shots_per_group = 0;
  LoccVariant variant = LoccVariant::SchemeI;

  std::size_t total_shots() const { return 5 * shots_per_group; }

  /// Scheme I: 0. Scheme II: 2 bits per random-pair shot (both quadrature
  /// choices) plus 1 bit separating the two groups.
  std::uint64_t classical_bits() const;
};

struct LoccEstimate : CovarianceEstimate {
  std::uint64_t classical_bits = 0;
  /// Copies consumed by each group, indexed by LoccGroup.
  std::array<std::size_t, 5> group_shots{};
};

inline constexpr std::size_t kMinShotsPerGroup = 100;

/// Throws InsufficientShotsError below 100 shots per group (or when a Scheme
/// II pair ends up with fewer than two shots), UnsupportedError for n != 2,
/// InvalidCovarianceError for unphysical states.
LoccEstimate run_locc(const GaussianState& state, const FiveGroupPlan& plan, std::uint64_t seed);

}  // namespace gaussep
