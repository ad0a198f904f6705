#include "gaussep/harness/commands.hpp"

#include "gaussep/errors.hpp"
#include "gaussep/rng.hpp"
#include "gaussep/sampler.hpp"
#include "gaussep/version.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace gaussep::harness {

int cmd_analyze(const std::filesystem::path& file, std::ostream& out, std::ostream& err) {
  std::optional<GaussianState> state;
  try {
    state = build_state(parse_state_spec(read_json_file(file)));
  } catch (const InvalidCovarianceError& e) {
    err << "invalid covariance: " << e.what() << '\n';
    return exit_code::kInvalid;
  } catch (const Error& e) {
    err << "malformed state file: " << e.what() << '\n';
    return exit_code::kMalformed;
  }
  if (state->n_modes() != 2) {
    err << "malformed state file: expected a two-mode state, got " << state->n_modes() << " modes\n";
    return exit_code::kMalformed;
  }
  json j;
  j["version"] = std::string(kVersion);
  const double min_eig = uncertainty_min_eigenvalue(state->cov());
  j["uncertainty_min_eigenvalue"] = min_eig;
  if (!validate(*state)) {
    j["valid"] = false;
    out << dump(j) << '\n';
    err << "invalid covariance: Gamma + iJ/2 has eigenvalue " << min_eig << '\n';
    return exit_code::kInvalid;
  }
  const SeparabilityReport report = simon_criterion(*state);
  j["valid"] = true;
  j["report"] = to_json(report);
  j["purity"] = purity(*state);
  out << dump(j) << '\n';
  return is_entangled(report.verdict) ? exit_code::kEntangled : exit_code::kSeparable;
}

std::filesystem::path default_output_dir() {
  if (const char* dir = std::getenv("GAUSSEP_OUTPUT_DIR"); dir != nullptr && *dir != '\0') return dir;
  return std::filesystem::current_path();
}

namespace {

std::filesystem::path resolve(const std::optional<std::filesystem::path>& p, const char* fallback) {
  if (!p) return default_output_dir() / fallback;
  if (p->is_absolute()) return *p;
  return default_output_dir() / *p;
}

void append_summary(const std::filesystem::path& path, const RunRecord& record) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream csv(path, std::ios::app);
  if (!csv) throw ConfigError("cannot write " + path.string());
  if (fresh) csv << summary_csv_header() << '\n';
  csv << summary_csv_row(record) << '\n';
}

}  // namespace

int cmd_simulate(const std::filesystem::path& config_file, std::optional<std::uint64_t> seed, std::ostream& out,
                 std::ostream& err) {
  RunRecord record;
  ExperimentConfig config;
  try {
    config = load_config(config_file);
    if (seed) config.seed = *seed;
    record = simulate(config);
  } catch (const Error& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_code::kConfig;
  }
  try {
    const std::filesystem::path record_path = resolve(config.output.record, "run_record.json");
    if (record_path.has_parent_path()) std::filesystem::create_directories(record_path.parent_path());
    std::ofstream f(record_path);
    if (!f) throw ConfigError("cannot write " + record_path.string());
    f << dump(record.to_json()) << '\n';
    append_summary(resolve(config.output.summary_csv, "run_summary.csv"), record);
    if (config.output.readouts_csv && record.outcome && !record.outcome->readouts.empty()) {
      std::ofstream r(resolve(config.output.readouts_csv, "readouts.csv"));
      write_readouts_csv(record.outcome->readouts, r);
    }
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << '\n';
    return exit_code::kConfig;
  }
  out << dump(record.to_json()) << '\n';
  if (record.status != "ok") {
    err << record.status << ": " << record.message << '\n';
    return exit_code::kScheme;
  }
  return exit_code::kOk;
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    const std::string token = item.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw ConfigError("sweep value \"" + token + "\" is not a number");
    }
    if (used != token.size() || !std::isfinite(v)) throw ConfigError("sweep value \"" + token + "\" is not a number");
    values.push_back(v);
  }
  return values;
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "shots") return SweepAxis::Shots;
  if (name == "squeeze") return SweepAxis::Squeeze;
  throw ConfigError("unknown sweep axis \"" + std::string(name) + "\" (expected shots or squeeze)");
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& base, SweepAxis axis, const std::vector<double>& values,
                                int repeats) {
  if (repeats < 1) throw ConfigError("sweep repeats must be >= 1");
  if (axis == SweepAxis::Squeeze && !std::holds_alternative<TmsvSpec>(base.state)) {
    throw ConfigError("squeeze sweeps need a tmsv state");
  }
  std::vector<ExperimentConfig> points;
  for (double v : values) {
    ExperimentConfig c = base;
    if (axis == SweepAxis::Shots) {
      if (v < 1.0 || v != std::floor(v)) throw ConfigError("shot counts must be positive integers");
      c.shots = static_cast<std::size_t>(v);
    } else {
      c.state = TmsvSpec{v};
    }
    points.push_back(std::move(c));
  }

  std::vector<SweepRow> rows(points.size());
  parallel_chunks(points.size(), [&](std::size_t i) {
    SweepRow row;
    row.axis = axis;
    row.value = values[i];
    row.repeats = repeats;
    row.true_margin = simon_criterion(build_state(points[i].state)).margin;
    double margin_sum = 0.0;
    double err_sum = 0.0;
    int err_count = 0;
    double rms_sq = 0.0;
    int rms_count = 0;
    int agree = 0;
    int done = 0;
    std::map<Verdict, int> votes;
    for (int k = 0; k < repeats; ++k) {
      ExperimentConfig c = points[i];
      c.seed = derive_seed(derive_seed(base.seed, i), static_cast<std::uint64_t>(k));
      const RunRecord r = simulate(c);
      if (!r.outcome) {
        ++row.failures;
        if (row.status == "ok") row.status = r.status;
        continue;
      }
      ++done;
      margin_sum += r.outcome->report.margin;
      if (r.outcome->report.margin_error) {
        err_sum += *r.outcome->report.margin_error;
        ++err_count;
      }
      if (r.rms_error) {
        rms_sq += *r.rms_error * *r.rms_error;
        ++rms_count;
      }
      agree += r.verdict_agrees() ? 1 : 0;
      ++votes[r.outcome->report.verdict];
    }
    if (done > 0) {
      row.margin = margin_sum / done;
      row.verdict_accuracy = static_cast<double>(agree) / done;
      Verdict best = votes.begin()->first;
      for (const auto& [v, n] : votes) {
        if (n > votes[best]) best = v;
      }
      row.verdict = best;
    }
    if (err_count > 0) row.margin_err = err_sum / err_count;
    if (rms_count > 0) row.rms_gamma_error = std::sqrt(rms_sq / rms_count);
    rows[i] = std::move(row);
  });
  return rows;
}

std::string sweep_csv_header() {
  return "axis,value,true_margin,margin,margin_err,verdict,verdict_accuracy,rms_gamma_error,repeats,failures,status";
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << sweep_csv_header() << '\n';
  auto opt = [](const std::optional<double>& v) {
    if (!v) return std::string();
    std::ostringstream os;
    os << std::setprecision(17) << *v;
    return os.str();
  };
  for (const SweepRow& r : rows) {
    out << (r.axis == SweepAxis::Shots ? "shots" : "squeeze") << ',' << opt(r.value) << ',' << opt(r.true_margin) << ','
        << opt(r.margin) << ',' << opt(r.margin_err) << ',' << (r.verdict ? std::string(to_string(*r.verdict)) : "")
        << ',' << opt(r.verdict_accuracy) << ',' << opt(r.rms_gamma_error) << ',' << r.repeats << ',' << r.failures
        << ',' << r.status << '\n';
  }
}

int cmd_sweep(const std::filesystem::path& config_file, const std::string& axis, const std::string& values,
              int repeats, std::optional<std::uint64_t> seed, const std::optional<std::filesystem::path>& csv_out,
              std::ostream& out, std::ostream& err) {
  std::vector<SweepRow> rows;
  try {
    ExperimentConfig config = load_config(config_file);
    if (seed) config.seed = *seed;
    rows = run_sweep(config, parse_axis(axis), parse_values(values), repeats);
  } catch (const Error& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_code::kConfig;
  }
  if (csv_out) {
    const std::filesystem::path path = csv_out->is_absolute() ? *csv_out : default_output_dir() / *csv_out;
    std::ofstream f(path);
    if (!f) {
      err << "cannot write " << path.string() << '\n';
      return exit_code::kConfig;
    }
    write_sweep_csv(rows, f);
  }
  write_sweep_csv(rows, out);
  return exit_code::kOk;
}

std::array<std::array<std::size_t, 2>, 2> RandtestResult::confusion() const {
  std::array<std::array<std::size_t, 2>, 2> m{};
  for (const RandtestCase& c : cases) {
    if (!c.estimate) continue;
    m[is_entangled(c.truth) ? 0 : 1][is_entangled(c.estimate->verdict) ? 0 : 1] += 1;
  }
  return m;
}

std::size_t RandtestResult::completed() const {
  std::size_t n = 0;
  for (const RandtestCase& c : cases) n += c.estimate ? 1 : 0;
  return n;
}

std::optional<double> RandtestResult::agreement() const {
  const std::size_t n = completed();
  if (n == 0) return std::nullopt;
  const auto m = confusion();
  return static_cast<double>(m[0][0] + m[1][1]) / static_cast<double>(n);
}

json RandtestResult::to_json() const {
  const auto m = confusion();
  json j;
  j["version"] = std::string(kVersion);
  j["scheme"] = std::string(to_string(options.scheme));
  j["n_states"] = options.n_states;
  j["shots"] = options.shots;
  j["seed"] = options.seed;
  j["max_squeeze"] = options.max_squeeze;
  j["max_thermal"] = options.max_thermal;
  j["confusion"] = {{"labels", {"entangled", "not_entangled"}},
                    {"rows", "truth"},
                    {"columns", "estimate"},
                    {"matrix", {{m[0][0], m[0][1]}, {m[1][0], m[1][1]}}}};
  j["completed"] = completed();
  const auto a = agreement();
  j["agreement"] = a ? json(*a) : json(nullptr);
  json dis = json::array();
  json failed = json::array();
  for (const RandtestCase& c : cases) {
    if (!c.estimate) {
      failed.push_back({{"index", c.index}, {"status", c.status}, {"message", c.message}});
      continue;
    }
    if (is_entangled(c.truth) == is_entangled(c.estimate->verdict)) continue;
    json d = {{"index", c.index},
              {"true_margin", c.true_margin},
              {"margin", c.estimate->margin},
              {"verdict", std::string(to_string(c.estimate->verdict))},
              {"true_verdict", std::string(to_string(c.truth))}};
    if (c.estimate->margin_error) {
      d["margin_err"] = *c.estimate->margin_error;
      d["within_5_sigma"] = std::abs(c.true_margin) < 5.0 * *c.estimate->margin_error;
    } else {
      d["margin_err"] = nullptr;
      d["within_5_sigma"] = nullptr;
    }
    dis.push_back(d);
  }
  j["disagreements"] = dis;
  j["failures"] = failed;
  return j;
}

RandtestResult run_randtest(const RandtestOptions& options) {
  RandtestResult result;
  result.options = options;
  result.cases.resize(options.n_states);
  const std::uint64_t state_seed = derive_seed(options.seed, 1);
  const std::uint64_t scheme_seed = derive_seed(options.seed, 2);
  parallel_chunks(options.n_states, [&](std::size_t i) {
    ExperimentConfig config = options.base.value_or(ExperimentConfig{});
    config.scheme = options.scheme;
    config.shots = options.shots;
    config.seed = derive_seed(scheme_seed, i);
    const GaussianState state = random_state(derive_seed(state_seed, i), options.max_squeeze, options.max_thermal);
    RandtestCase c;
    c.index = i;
    const SeparabilityReport truth = simon_criterion(state);
    c.true_margin = truth.margin;
    c.truth = truth.verdict;
    try {
      c.estimate = run_scheme(state, config).report;
    } catch (const Error& e) {
      c.status = status_of(e);
      c.message = e.what();
    }
    result.cases[i] = std::move(c);
  });
  return result;
}

int cmd_randtest(const RandtestOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.max_squeeze < 0.0 || options.max_thermal < 0.0) throw ConfigError("random bounds must be >= 0");
    out << dump(run_randtest(options).to_json()) << '\n';
  } catch (const Error& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_code::kConfig;
  }
  return exit_code::kOk;
}

}  // namespace gaussep::harness
