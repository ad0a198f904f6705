#include "gaussep/harness/commands.hpp"
#include "gaussep/harness/config.hpp"
#include "gaussep/harness/run.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gaussep;
using namespace gaussep::harness;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("gaussep_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p;
  }

 private:
  fs::path path_;
};

int analyze(const fs::path& file) {
  std::ostringstream out, err;
  return cmd_analyze(file, out, err);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Csv, GoldenHeaders) {
  EXPECT_EQ(summary_csv_header(),
            "scheme,state,shots,seed,true_margin,margin,margin_err,true_verdict,verdict,rms_error,status");
  EXPECT_EQ(sweep_csv_header(),
            "axis,value,true_margin,margin,margin_err,verdict,verdict_accuracy,rms_gamma_error,repeats,failures,status");
}

TEST(Analyze, ExitCodes) {
  const TempDir dir;
  EXPECT_EQ(analyze(dir.write("tmsv.json", R"({"kind": "tmsv", "r": 0.5})")), exit_code::kEntangled);
  EXPECT_EQ(analyze(dir.write("vac.json", R"({"kind": "vacuum"})")), exit_code::kSeparable);
  EXPECT_EQ(analyze(dir.write("thermal.json", R"({"kind": "thermal", "n_bar1": 1, "n_bar2": 1})")),
            exit_code::kSeparable);
  EXPECT_EQ(analyze(dir.write("bad.json",
                              R"({"cov": [[0.1,0,0,0],[0,0.1,0,0],[0,0,0.1,0],[0,0,0,0.1]]})")),
            exit_code::kInvalid);
  EXPECT_EQ(analyze(dir.write("broken.json", "{not json")), exit_code::kMalformed);
  EXPECT_EQ(analyze(dir.write("extra.json", R"({"kind": "tmsv", "r": 0.5, "colour": 1})")), exit_code::kMalformed);
  EXPECT_EQ(analyze(dir.path() / "missing.json"), exit_code::kMalformed);
}

TEST(Analyze, ReportContents) {
  const TempDir dir;
  std::ostringstream out, err;
  cmd_analyze(dir.write("tmsv.json", R"({"kind": "tmsv", "r": 0.5})"), out, err);
  const json j = json::parse(out.str());
  EXPECT_EQ(j.at("report").at("verdict").get<std::string>(), "Entangled");
  EXPECT_NEAR(j.at("report").at("log_negativity").get<double>(), 1.0, 1e-9);
  EXPECT_NEAR(j.at("purity").get<double>(), 1.0, 1e-12);
  EXPECT_TRUE(j.at("valid").get<bool>());
}

TEST(Config, RejectsUnknownKeys) {
  EXPECT_THROW(parse_config(json::parse(R"({"scheme": "stokes", "shotz": 10})")), ConfigError);
  EXPECT_THROW(parse_config(json::parse(R"({"stokes": {"backend": "sampled", "phase": 1}})")), ConfigError);
  EXPECT_THROW(parse_config(json::parse(R"({"scheme": "nope"})")), ConfigError);
  EXPECT_THROW(parse_config(json::parse(R"({"twocopy": {"backend": "maybe"}})")), ConfigError);
}

TEST(Config, RoundTrip) {
  const ExperimentConfig c = parse_config(json::parse(
      R"({"state": {"kind": "simon", "lambda": 0.8, "mu": 0.9, "s": 0.3, "t": -0.1}, "scheme": "twocopy_m2",
          "shots": 5000, "seed": 7, "twocopy": {"opa": {"g1": 0.4, "phi1": 0.1, "g2": 0.1, "phi2": 1.0}}})"));
  EXPECT_EQ(c.scheme, Scheme::TwoCopyM2);
  EXPECT_EQ(c.shots, 5000u);
  EXPECT_EQ(dump(to_json(parse_config(to_json(c)))), dump(to_json(c)));
  for (Scheme s : {Scheme::LoccI, Scheme::LoccII, Scheme::Stokes, Scheme::TwoCopyM1, Scheme::TwoCopyM2,
                   Scheme::TwoCopyM3, Scheme::Analytic})
    EXPECT_EQ(parse_scheme(to_string(s)), s);
}

TEST(Simulate, PayloadIsByteIdentical) {
  for (const char* scheme : {"locc_i", "locc_ii", "stokes", "twocopy_m1", "twocopy_m2", "twocopy_m3"}) {
    json j = {{"state", {{"kind", "tmsv"}, {"r", 0.5}}}, {"scheme", scheme}, {"shots", 20000}, {"seed", 5}};
    const ExperimentConfig c = parse_config(j);
    const RunRecord a = simulate(c);
    const RunRecord b = simulate(c);
    EXPECT_EQ(a.status, "ok") << scheme << ": " << a.message;
    EXPECT_EQ(dump(a.payload()), dump(b.payload())) << scheme;
    EXPECT_FALSE(a.payload().contains("wall_time"));
  }
}

TEST(Simulate, AnalyticSchemeIsExact) {
  const RunRecord r = simulate(parse_config(json::parse(R"({"state": {"kind": "tmsv", "r": 0.5}})")));
  EXPECT_TRUE(r.verdict_agrees());
  ASSERT_TRUE(r.rms_error.has_value());
  EXPECT_NEAR(*r.rms_error, 0.0, 1e-12);
}

TEST(Simulate, CommandWritesFilesAndExitCodes) {
  const TempDir dir;
  const std::string rec = (dir.path() / "rec.json").string();
  const std::string csv = (dir.path() / "sum.csv").string();
  const fs::path cfg = dir.write(
      "cfg.json", R"({"state": {"kind": "tmsv", "r": 0.5}, "scheme": "locc_i", "shots": 1000, "output": {"record": ")" +
                      rec + R"(", "summary_csv": ")" + csv + R"("}})");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_simulate(cfg, std::nullopt, out, err), exit_code::kOk);
  EXPECT_EQ(cmd_simulate(cfg, 9, out, err), exit_code::kOk);
  EXPECT_TRUE(fs::exists(rec));
  std::istringstream lines(read_file(csv));
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, summary_csv_header());
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 2);

  const fs::path too_few = dir.write(
      "few.json", R"({"scheme": "locc_i", "shots": 10, "output": {"record": ")" + rec + R"(", "summary_csv": ")" + csv +
                      R"("}})");
  EXPECT_EQ(cmd_simulate(too_few, std::nullopt, out, err), exit_code::kScheme);
  EXPECT_EQ(cmd_simulate(dir.write("bad.json", R"({"sceme": "locc_i"})"), std::nullopt, out, err), exit_code::kConfig);
}

TEST(Sweep, EmptyValuesGiveHeaderOnly) {
  EXPECT_TRUE(parse_values("").empty());
  const auto rows = run_sweep(ExperimentConfig{}, SweepAxis::Shots, {}, 3);
  std::ostringstream out;
  write_sweep_csv(rows, out);
  EXPECT_EQ(out.str(), sweep_csv_header() + "\n");
}

TEST(Sweep, ParsesAxesAndValues) {
  EXPECT_EQ(parse_values("1e3, 1e4,1e5"), (std::vector<double>{1e3, 1e4, 1e5}));
  EXPECT_EQ(parse_axis("shots"), SweepAxis::Shots);
  EXPECT_EQ(parse_axis("squeeze"), SweepAxis::Squeeze);
  EXPECT_THROW(parse_axis("temperature"), ConfigError);
  EXPECT_THROW(parse_values("1,x"), ConfigError);
}

TEST(Sweep, ShotsAxisShrinksError) {
  ExperimentConfig base = parse_config(json::parse(R"({"scheme": "locc_i", "seed": 3})"));
  const auto rows = run_sweep(base, SweepAxis::Shots, {1e3, 1e5}, 4);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].repeats, 4);
  EXPECT_GT(*rows[0].rms_gamma_error, 3.0 * *rows[1].rms_gamma_error);
  EXPECT_EQ(*rows[1].verdict, Verdict::Entangled);
}

TEST(Sweep, SqueezeAxisNeedsTmsv) {
  ExperimentConfig base = parse_config(json::parse(R"({"state": {"kind": "vacuum"}})"));
  EXPECT_THROW(run_sweep(base, SweepAxis::Squeeze, {0.1}, 1), ConfigError);
}

TEST(Randtest, ZeroStates) {
  RandtestOptions opt;
  opt.n_states = 0;
  const RandtestResult r = run_randtest(opt);
  EXPECT_EQ(r.completed(), 0u);
  EXPECT_FALSE(r.agreement().has_value());
  EXPECT_NO_THROW(dump(r.to_json()));
}

TEST(Randtest, AnalyticAgreesEverywhere) {
  RandtestOptions opt;
  opt.n_states = 50;
  const RandtestResult r = run_randtest(opt);
  EXPECT_EQ(r.completed(), 50u);
  EXPECT_DOUBLE_EQ(*r.agreement(), 1.0);
  const auto m = r.confusion();
  EXPECT_EQ(m[0][1] + m[1][0], 0u);
  EXPECT_EQ(m[0][0] + m[1][1], 50u);
}

TEST(Cli, ExitCodesThroughTheBinary) {
  const char* tool = std::getenv("GAUSSEP_TOOL");
  if (tool == nullptr) GTEST_SKIP() << "GAUSSEP_TOOL not set";
  const TempDir dir;
  auto run = [&](const std::string& args) {
    const std::string cmd = std::string("\"") + tool + "\" " + args + " > \"" + (dir.path() / "out.txt").string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };
  EXPECT_EQ(run("analyze \"" + dir.write("t.json", R"({"kind": "tmsv", "r": 0.5})").string() + "\""), 1);
  EXPECT_EQ(run("analyze \"" + dir.write("v.json", R"({"kind": "vacuum"})").string() + "\""), 0);
  EXPECT_EQ(run("--no-such-flag"), 3);
  EXPECT_EQ(run("--version"), 0);
}
