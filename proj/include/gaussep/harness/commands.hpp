#pragma once

// Subcommands of the gaussep tool. Each returns the process exit code.

#include "gaussep/harness/run.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gaussep::harness {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kSeparable = 0;
inline constexpr int kEntangled = 1;
inline constexpr int kInvalid = 2;
inline constexpr int kMalformed = 3;
inline constexpr int kConfig = 3;
inline constexpr int kScheme = 4;
}  // namespace exit_code

/// Exact analysis of a state file. 0 separable or boundary, 1 entangled,
/// 2 unphysical covariance, 3 malformed file.
int cmd_analyze(const std::filesystem::path& file, std::ostream& out, std::ostream& err);

/// Default directory for records: $GAUSSEP_OUTPUT_DIR, else the working
/// directory.
std::filesystem::path default_output_dir();

/// Writes the record JSON and appends a summary CSV row. 0 on success,
/// 3 on configuration errors, 4 when the scheme failed.
int cmd_simulate(const std::filesystem::path& config_file, std::optional<std::uint64_t> seed, std::ostream& out,
                 std::ostream& err);

enum class SweepAxis { Shots, Squeeze };

struct SweepRow {
  SweepAxis axis = SweepAxis::Shots;
  double value = 0.0;
  double true_margin = 0.0;
  /// Means over repeats that completed.
  std::optional<double> margin;
  std::optional<double> margin_err;
  /// Majority verdict over completed repeats.
  std::optional<Verdict> verdict;
  std::optional<double> verdict_accuracy;
  /// Root mean square over repeats of the per-run RMS error.
  std::optional<double> rms_gamma_error;
  int repeats = 0;
  int failures = 0;
  /// "ok" or the status of the first failed repeat.
  std::string status = "ok";
};

/// Squeeze sweeps set the parameter r of a tmsv state (ConfigError for any
/// other state kind). Repeat k of point i uses seed
/// derive_seed(derive_seed(seed, i), k).
std::vector<SweepRow> run_sweep(const ExperimentConfig& base, SweepAxis axis, const std::vector<double>& values,
                                int repeats);

/// Columns axis,value,true_margin,margin,margin_err,verdict,verdict_accuracy,
/// rms_gamma_error,repeats,failures,status.
std::string sweep_csv_header();
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

/// Parses "1e3,1e4,1e5"; an empty string gives an empty list.
std::vector<double> parse_values(const std::string& list);
SweepAxis parse_axis(std::string_view name);

int cmd_sweep(const std::filesystem::path& config_file, const std::string& axis, const std::string& values,
              int repeats, std::optional<std::uint64_t> seed, const std::optional<std::filesystem::path>& csv_out,
              std::ostream& out, std::ostream& err);

struct RandtestOptions {
  std::size_t n_states = 100;
  Scheme scheme = Scheme::Analytic;
  std::size_t shots = 100000;
  std::uint64_t seed = 0;
  double max_squeeze = 0.6;
  double max_thermal = 0.6;
  /// Scheme parameters (references, OPA); its state/scheme/shots/seed are
  /// replaced.
  std::optional<ExperimentConfig> base;
};

struct RandtestCase {
  std::size_t index = 0;
  double true_margin = 0.0;
  Verdict truth = Verdict::Boundary;
  std::optional<SeparabilityReport> estimate;
  std::string status = "ok";
  std::string message;
};

struct RandtestResult {
  RandtestOptions options;
  std::vector<RandtestCase> cases;

  /// Rows truth (entangled, not entangled), columns estimate.
  std::array<std::array<std::size_t, 2>, 2> confusion() const;
  std::size_t completed() const;
  /// Fraction of completed cases with matching verdicts; empty when none.
  std::optional<double> agreement() const;
  json to_json() const;
};

/// State i is random_state(derive_seed(derive_seed(seed, 1), i), ...), run
/// with scheme seed derive_seed(derive_seed(seed, 2), i).
RandtestResult run_randtest(const RandtestOptions& options);

int cmd_randtest(const RandtestOptions& options, std::ostream& out, std::ostream& err);

}  // namespace gaussep::harness
