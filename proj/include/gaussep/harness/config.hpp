#pragma once

// Experiment configuration and state specifications (JSON).

#include "gaussep/errors.hpp"
#include "gaussep/scheme_stokes.hpp"
#include "gaussep/scheme_twocopy.hpp"
#include "gaussep/states.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>

namespace gaussep::harness {

using json = nlohmann::json;

/// Configuration problems: unknown keys, wrong types, out-of-range values.
class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

struct VacuumSpec {};
struct ThermalSpec {
  double n_bar1 = 0.0;
  double n_bar2 = 0.0;
};
struct DstSpec {
  ReferenceStateParams mode1;
  ReferenceStateParams mode2;
};
struct TmsvSpec {
  double r = 0.0;
};
struct SimonSpec {
  double lambda = 0.5;
  double mu = 0.5;
  double s = 0.0;
  double t = 0.0;
};
struct RandomSpec {
  std::uint64_t seed = 0;
  double max_squeeze = 0.5;
  double max_thermal = 1.0;
};
struct CovarianceSpec {
  Vector means;
  Matrix cov;
};

using StateSpec = std::variant<VacuumSpec, ThermalSpec, DstSpec, TmsvSpec, SimonSpec, RandomSpec, CovarianceSpec>;

/// An object with "kind"; an object without "kind" but with "cov" is read as
/// an explicit covariance. Throws ConfigError.
StateSpec parse_state_spec(const json& j);
json to_json(const StateSpec& spec);

/// May throw InvalidCovarianceError (e.g. simon bounds) or InputError.
GaussianState build_state(const StateSpec& spec);

enum class Scheme { LoccI, LoccII, Stokes, TwoCopyM1, TwoCopyM2, TwoCopyM3, Analytic };

std::string_view to_string(Scheme s);
/// Throws ConfigError for unknown names.
Scheme parse_scheme(std::string_view name);

struct OutputPaths {
  std::optional<std::filesystem::path> record;
  std::optional<std::filesystem::path> summary_csv;
  std::optional<std::filesystem::path> readouts_csv;
};

struct ExperimentConfig {
  StateSpec state = TmsvSpec{0.5};
  Scheme scheme = Scheme::Analytic;
  /// LOCC: per group. Stokes: per readout. Two-copy: per SWAP test and per
  /// observable.
  std::size_t shots = 100000;
  std::uint64_t seed = 0;
  StokesConfig stokes;
  TwoCopyConfig twocopy;
  OutputPaths output;
};

ExperimentConfig parse_config(const json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
json to_json(const ExperimentConfig& config);

json to_json(const ReferenceStateParams& p);
json to_json(const SeparabilityReport& r);

/// Reads a whole JSON file; ConfigError on I/O or syntax errors.
json read_json_file(const std::filesystem::path& path);

}  // namespace gaussep::harness
