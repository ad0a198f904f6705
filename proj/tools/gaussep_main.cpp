#include "gaussep/harness/commands.hpp"
#include "gaussep/version.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  using namespace gaussep::harness;

  CLI::App app{"Two-mode Gaussian entanglement detection experiments"};
  app.set_version_flag("--version", std::string(gaussep::kVersion));
  app.require_subcommand(1);

  std::string analyze_file;
  auto* analyze = app.add_subcommand("analyze", "Exact PPT analysis of a state file");
  analyze->add_option("file", analyze_file, "State JSON")->required();

  std::string sim_config;
  std::optional<std::uint64_t> sim_seed;
  auto* simulate = app.add_subcommand("simulate", "Run one configured experiment");
  simulate->add_option("--config", sim_config, "Experiment JSON")->required();
  simulate->add_option("--seed", sim_seed, "Overrides the config seed");

  std::string sweep_config;
  std::string sweep_axis;
  std::string sweep_values;
  int sweep_repeats = 1;
  std::optional<std::uint64_t> sweep_seed;
  std::optional<std::string> sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Repeat an experiment over shot counts or squeezing");
  sweep->add_option("--config", sweep_config, "Experiment JSON template")->required();
  sweep->add_option("--axis", sweep_axis, "shots or squeeze")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values (may be empty)")->required();
  sweep->add_option("--repeats", sweep_repeats, "Runs per point")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_seed, "Overrides the config seed");
  sweep->add_option("--out", sweep_out, "Also write the CSV here (relative to the output directory)");

  RandtestOptions rt;
  std::string rt_scheme = "analytic";
  std::optional<std::string> rt_config;
  auto* randtest = app.add_subcommand("randtest", "Compare a scheme with the exact criterion on random states");
  randtest->add_option("--n", rt.n_states, "Number of random states");
  randtest->add_option("--scheme", rt_scheme, "Scheme name");
  randtest->add_option("--shots", rt.shots, "Shots (scheme-specific unit)")->check(CLI::PositiveNumber);
  randtest->add_option("--seed", rt.seed, "Seed");
  randtest->add_option("--max-squeeze", rt.max_squeeze, "Upper bound of local squeezing");
  randtest->add_option("--max-thermal", rt.max_thermal, "Upper bound of nu - 1/2");
  randtest->add_option("--config", rt_config, "Scheme parameters (references, OPA)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code::kMalformed;
  }

  if (*analyze) return cmd_analyze(analyze_file, std::cout, std::cerr);
  if (*simulate) return cmd_simulate(sim_config, sim_seed, std::cout, std::cerr);
  if (*sweep) {
    std::optional<std::filesystem::path> out;
    if (sweep_out) out = *sweep_out;
    return cmd_sweep(sweep_config, sweep_axis, sweep_values, sweep_repeats, sweep_seed, out, std::cout, std::cerr);
  }
  if (*randtest) {
    try {
      rt.scheme = parse_scheme(rt_scheme);
      if (rt_config) rt.base = load_config(*rt_config);
    } catch (const gaussep::Error& e) {
      std::cerr << "configuration error: " << e.what() << '\n';
      return exit_code::kConfig;
    }
    return cmd_randtest(rt, std::cout, std::cerr);
  }
  return exit_code::kMalformed;
}
