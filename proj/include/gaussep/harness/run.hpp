#pragma once

// Running one configured experiment and recording it.

#include "gaussep/harness/config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gaussep::harness {

struct SchemeOutcome {
  SeparabilityReport report;
  /// Full covariance estimate (LOCC, Stokes, analytic).
  std::optional<Matrix> gamma_hat;
  std::optional<Matrix> gamma_std;
  /// C block estimate (every scheme except Method 2).
  std::optional<Matrix2> c_hat;
  std::optional<Matrix2> c_std;
  std::size_t shots_used = 0;
  json details = json::object();
  std::vector<StokesReadout> readouts;
};

/// Runs the configured scheme on `state`. Errors from the schemes propagate.
SchemeOutcome run_scheme(const GaussianState& state, const ExperimentConfig& config);

/// "ok", or the error class of a failed run.
std::string status_of(const std::exception& e);

struct RunRecord {
  json config;
  SeparabilityReport truth;
  std::optional<SchemeOutcome> outcome;
  std::string status = "ok";
  std::string message;
  double wall_time = 0.0;

  /// RMS of (estimate - truth) over the covariance entries, or over the C
  /// block when only C is estimated.
  std::optional<double> rms_error;
  bool verdict_agrees() const;

  /// Everything except wall_time; byte-reproducible for a fixed config.
  json payload() const;
  json to_json() const;
};

/// Runs the experiment; scheme errors are captured in status/message.
/// State construction errors propagate.
RunRecord simulate(const ExperimentConfig& config);

/// Header and row of the one-line run summary.
std::string summary_csv_header();
std::string summary_csv_row(const RunRecord& record);

/// Serialization shared by all records.
std::string dump(const json& j);

}  // namespace gaussep::harness
