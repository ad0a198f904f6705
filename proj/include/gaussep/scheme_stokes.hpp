#pragma once

// Interferometric (Stokes-like) reconstruction of a two-mode covariance.
//
// Single-mode network: signal mode k and a phase-shifted reference r meet on
// a 50-50 beam splitter, a1 = (a_k - a_r e^{i phi})/sqrt2,
// a2 = (a_k + a_r e^{i phi})/sqrt2, and S1(phi) = n2 - n1.
//
// Two-mode network: BS1 forms b- = (a1 - a2)/sqrt2 and b+ = (a1 + a2)/sqrt2;
// b- meets reference c (phase phi1) on BS2 giving a3 = (b- - c)/sqrt2,
// a4 = (b- + c)/sqrt2; b+ meets reference d (phase phi2) on BS3 giving
// a5 = (b+ - d)/sqrt2, a6 = (b+ + d)/sqrt2. Readouts are
//   S1(phi1) = n4 - n3,  S1(phi2) = n6 - n5,  S3 = i(a6^+ a3 - a3^+ a6).

#include "gaussep/estimation.hpp"
#include "gaussep/sampler.hpp"
#include "gaussep/states.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

namespace gaussep {

enum class StokesObservable { S1, S1Squared, S1xS1, S3 };

std::string_view to_string(StokesObservable o);

/// Which beam splitter an S1 readout is taken at.
enum class StokesPort { Single, C, D, Both };

struct StokesReadout {
  StokesObservable observable = StokesObservable::S1;
  StokesPort port = StokesPort::Single;
  double phi1 = 0.0;
  double phi2 = 0.0;
  /// Analytic readouts carry std_error = 0.
  MomentEstimate value;

  std::string label() const;
};

struct SingleModeNetwork {
  /// Signal mode (0-based) of a two-mode state; ignored for one-mode states.
  int mode = 0;
  ReferenceStateParams reference{0.0, 1.0, 0.0, 0.2, 0.0};
  /// Means use phases[0], phases[1]; second moments use all three.
  std::array<double, 3> phases{0.0, std::numbers::pi / 2.0, std::numbers::pi / 4.0};
};

struct TwoModeNetwork {
  ReferenceStateParams ref_c{0.0, 1.0, 0.0, 0.2, 0.0};
  ReferenceStateParams ref_d{0.0, 1.0, std::numbers::pi / 2.0, 0.2, 0.0};
  double phi1 = 0.0;
  double phi2 = 0.0;
  /// Second setting of phi2, sensitive to the symmetrized cross terms.
  double phi2_alt = std::numbers::pi / 4.0;
};

/// Symmetrized first and second moments of the signal, <{x_i, x_j}>/2,
/// i.e. covariance plus mean products.
struct SignalMoments {
  Vector means;
  Matrix second;

  static SignalMoments from_state(const GaussianState& state);
  Matrix covariance() const;
};

// Forward model from signal moments and closed-form reference moments.

double stokes_s1(const SignalMoments& signal, const ReferenceMoments& ref, double phi);
double stokes_s1_squared(const SignalMoments& signal, const ReferenceMoments& ref, double phi);
/// Two-mode signal; `port` is C (b- against c) or D (b+ against d).
double stokes_s1_squared(const SignalMoments& signal, StokesPort port, const ReferenceMoments& ref, double phi);
double stokes_s1_x_s1(const SignalMoments& signal, const ReferenceMoments& c, double phi1,
                      const ReferenceMoments& d, double phi2);
double stokes_s3(const SignalMoments& signal, const ReferenceMoments& c, double phi1, const ReferenceMoments& d,
                 double phi2);

/// Analytic readouts: S1 at phases[0..1], S1^2 at phases[0..2].
std::vector<StokesReadout> expect_stokes(const SingleModeNetwork& net, const GaussianState& state);

/// Analytic readouts: S1^2 at (C, phi1), (D, phi2), (D, phi2_alt), then
/// S1 x S1 and S3 at (phi1, phi2).
std::vector<StokesReadout> expect_stokes(const TwoModeNetwork& net, const GaussianState& state);

inline constexpr std::size_t kMinStokesShots = 1000;

/// Same readouts from Wigner samples of the network output. Each readout
/// uses its own batch (stream = readout index). Throws InsufficientShotsError
/// below 1000 shots.
std::vector<StokesReadout> sample_stokes(const SingleModeNetwork& net, const GaussianState& state,
                                         std::size_t shots, std::uint64_t seed);
std::vector<StokesReadout> sample_stokes(const TwoModeNetwork& net, const GaussianState& state,
                                         std::size_t shots, std::uint64_t seed);

/// Network output state (signal (x) references after all optical elements),
/// at phases[0] for the single-mode network and (phi1, phi2) for the two-mode one.
/// Single-mode output modes: (a1, a2). Two-mode: (a3, a5, a4, a6).
GaussianState stokes_output_state(const SingleModeNetwork& net, const GaussianState& state);
GaussianState stokes_output_state(const TwoModeNetwork& net, const GaussianState& state);

struct SingleModeMoments {
  double q_mean = 0.0;
  double p_mean = 0.0;
  double q2 = 0.0;
  double p2 = 0.0;
  /// <(qp + pq)/2>
  double sym = 0.0;
};

/// Throws ConditioningError naming the reference parameter to change when
/// either linear system is singular, InputError on a wrong readout set.
SingleModeMoments solve_single_mode(std::span<const StokesReadout> readouts, const SingleModeNetwork& net);

struct SingleModeMeans {
  double q_mean = 0.0;
  double p_mean = 0.0;
  double q_std_error = 0.0;
  double p_std_error = 0.0;
  std::size_t shots_used = 0;
};

/// Means only, from the two S1 readouts (analytic when shots == 0).
SingleModeMeans stokes_means(const SingleModeNetwork& net, const GaussianState& state, std::size_t shots,
                             std::uint64_t seed);

struct CBlockSolution {
  /// Covariance block C (cross moments minus mean products).
  Matrix2 c;
  /// Raw cross moments <x1 y2>, rows (q1, p1), columns (q2, p2).
  Matrix2 cross;
  /// True when S3 replaced S1 x S1 as the fourth equation.
  bool used_s3 = false;
};

/// |coefficient| of S1 x S1 below which S3 is used instead.
inline constexpr double kS1xS1Threshold = 1e-9;

CBlockSolution solve_C_block(std::span<const StokesReadout> readouts, const SingleModeMoments& mode1,
                             const SingleModeMoments& mode2, const TwoModeNetwork& net);

struct StokesConfig {
  /// Reference and phases for the single-mode runs (its `mode` is ignored).
  SingleModeNetwork single;
  TwoModeNetwork two_mode;
  bool sampled = false;
  std::size_t shots = 100000;
  std::uint64_t seed = 0;
};

struct StokesResult {
  CovarianceEstimate estimate;
  EstimatedVerdict verdict;
  std::vector<StokesReadout> readouts;
  bool used_s3 = false;
  /// Every covariance entry is reconstructed: this is full tomography.
  bool full_tomography = true;
};

StokesResult full_pipeline(const GaussianState& state, const StokesConfig& config);

/// Columns observable,port,phi1,phi2,value,std_error,n_shots.
void write_readouts_csv(std::span<const StokesReadout> readouts, std::ostream& out);

}  // namespace gaussep
