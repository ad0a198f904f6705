#include "gaussep/harness/config.hpp"

#include "gaussep/errors.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace gaussep::harness {

namespace {

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) throw ConfigError(std::string(where) + ": unknown key \"" + key + "\"");
  }
}

double get_double(const json& j, const char* key, double fallback, std::string_view where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string(where) + "." + key + ": expected a number");
  return v.get<double>();
}

double require_double(const json& j, const char* key, std::string_view where) {
  if (!j.contains(key)) throw ConfigError(std::string(where) + ": missing \"" + key + "\"");
  return get_double(j, key, 0.0, where);
}

std::uint64_t get_uint(const json& j, const char* key, std::uint64_t fallback, std::string_view where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError(std::string(where) + "." + key + ": expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

bool get_bool(const json& j, const char* key, bool fallback, std::string_view where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw ConfigError(std::string(where) + "." + key + ": expected true or false");
  return j.at(key).get<bool>();
}

ReferenceStateParams parse_reference(const json& j, const ReferenceStateParams& fallback, std::string_view where) {
  check_keys(j, {"n_bar", "d", "beta", "theta", "gamma"}, where);
  ReferenceStateParams p;
  p.n_bar = get_double(j, "n_bar", fallback.n_bar, where);
  p.d = get_double(j, "d", fallback.d, where);
  p.beta = get_double(j, "beta", fallback.beta, where);
  p.theta = get_double(j, "theta", fallback.theta, where);
  p.gamma = get_double(j, "gamma", fallback.gamma, where);
  try {
    p.check();
  } catch (const InputError& e) {
    throw ConfigError(std::string(where) + ": " + e.what());
  }
  return p;
}

bool parse_backend(const json& j, std::string_view where) {
  if (!j.contains("backend")) return true;
  const json& b = j.at("backend");
  if (b == "sampled") return true;
  if (b == "analytic") return false;
  throw ConfigError(std::string(where) + ".backend: expected \"sampled\" or \"analytic\"");
}

Vector parse_vector(const json& j, std::string_view where) {
  if (!j.is_array()) throw ConfigError(std::string(where) + ": expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(std::string(where) + ": expected an array of numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Matrix parse_matrix(const json& j, std::string_view where) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string(where) + ": expected a square array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector row = parse_vector(j[static_cast<std::size_t>(i)], where);
    if (row.size() != n) throw ConfigError(std::string(where) + ": matrix is not square");
    m.row(i) = row.transpose();
  }
  return m;
}

}  // namespace

StateSpec parse_state_spec(const json& j) {
  constexpr std::string_view where = "state";
  if (!j.is_object()) throw ConfigError("state: expected a JSON object");
  std::string kind;
  if (j.contains("kind")) {
    if (!j.at("kind").is_string()) throw ConfigError("state.kind: expected a string");
    kind = j.at("kind").get<std::string>();
  } else if (j.contains("cov")) {
    kind = "covariance";
  } else {
    throw ConfigError("state: missing \"kind\"");
  }

  if (kind == "vacuum") {
    check_keys(j, {"kind"}, where);
    return VacuumSpec{};
  }
  if (kind == "thermal") {
    check_keys(j, {"kind", "n_bar", "n_bar1", "n_bar2"}, where);
    const double n = get_double(j, "n_bar", 0.0, where);
    ThermalSpec s{get_double(j, "n_bar1", n, where), get_double(j, "n_bar2", n, where)};
    if (s.n_bar1 < 0.0 || s.n_bar2 < 0.0) throw ConfigError("state: thermal occupations must be >= 0");
    return s;
  }
  if (kind == "dst") {
    check_keys(j, {"kind", "mode1", "mode2"}, where);
    const ReferenceStateParams zero{};
    DstSpec s;
    s.mode1 = j.contains("mode1") ? parse_reference(j.at("mode1"), zero, "state.mode1") : zero;
    s.mode2 = j.contains("mode2") ? parse_reference(j.at("mode2"), zero, "state.mode2") : zero;
    return s;
  }
  if (kind == "tmsv") {
    check_keys(j, {"kind", "r"}, where);
    return TmsvSpec{require_double(j, "r", where)};
  }
  if (kind == "simon") {
    check_keys(j, {"kind", "lambda", "mu", "s", "t"}, where);
    return SimonSpec{require_double(j, "lambda", where), require_double(j, "mu", where), get_double(j, "s", 0.0, where),
                     get_double(j, "t", 0.0, where)};
  }
  if (kind == "random") {
    check_keys(j, {"kind", "seed", "max_squeeze", "max_thermal"}, where);
    RandomSpec s;
    s.seed = get_uint(j, "seed", 0, where);
    s.max_squeeze = get_double(j, "max_squeeze", s.max_squeeze, where);
    s.max_thermal = get_double(j, "max_thermal", s.max_thermal, where);
    if (s.max_squeeze < 0.0 || s.max_thermal < 0.0) throw ConfigError("state: random bounds must be >= 0");
    return s;
  }
  if (kind == "covariance") {
    check_keys(j, {"kind", "cov", "means"}, where);
    if (!j.contains("cov")) throw ConfigError("state: missing \"cov\"");
    CovarianceSpec s;
    s.cov = parse_matrix(j.at("cov"), "state.cov");
    s.means = j.contains("means") ? parse_vector(j.at("means"), "state.means") : Vector::Zero(s.cov.rows());
    if (s.cov.rows() % 2 != 0) throw ConfigError("state.cov: dimension must be even");
    if (s.means.size() != s.cov.rows()) throw ConfigError("state.means: length must match cov");
    return s;
  }
  throw ConfigError("state.kind: unknown kind \"" + kind + "\"");
}

json to_json(const ReferenceStateParams& p) {
  return {{"n_bar", p.n_bar}, {"d", p.d}, {"beta", p.beta}, {"theta", p.theta}, {"gamma", p.gamma}};
}

namespace {

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

struct SpecToJson {
  json operator()(const VacuumSpec&) const { return {{"kind", "vacuum"}}; }
  json operator()(const ThermalSpec& s) const { return {{"kind", "thermal"}, {"n_bar1", s.n_bar1}, {"n_bar2", s.n_bar2}}; }
  json operator()(const DstSpec& s) const {
    return {{"kind", "dst"}, {"mode1", to_json(s.mode1)}, {"mode2", to_json(s.mode2)}};
  }
  json operator()(const TmsvSpec& s) const { return {{"kind", "tmsv"}, {"r", s.r}}; }
  json operator()(const SimonSpec& s) const {
    return {{"kind", "simon"}, {"lambda", s.lambda}, {"mu", s.mu}, {"s", s.s}, {"t", s.t}};
  }
  json operator()(const RandomSpec& s) const {
    return {{"kind", "random"}, {"seed", s.seed}, {"max_squeeze", s.max_squeeze}, {"max_thermal", s.max_thermal}};
  }
  json operator()(const CovarianceSpec& s) const {
    return {{"kind", "covariance"}, {"cov", matrix_json(s.cov)}, {"means", vector_json(s.means)}};
  }
};

struct SpecBuilder {
  GaussianState operator()(const VacuumSpec&) const { return GaussianState::vacuum(2); }
  GaussianState operator()(const ThermalSpec& s) const { return tensor_product(thermal(s.n_bar1), thermal(s.n_bar2)); }
  GaussianState operator()(const DstSpec& s) const {
    return tensor_product(displaced_squeezed_thermal(s.mode1), displaced_squeezed_thermal(s.mode2));
  }
  GaussianState operator()(const TmsvSpec& s) const { return two_mode_squeezed_vacuum(s.r); }
  GaussianState operator()(const SimonSpec& s) const { return simon_form(s.lambda, s.mu, s.s, s.t); }
  GaussianState operator()(const RandomSpec& s) const { return random_state(s.seed, s.max_squeeze, s.max_thermal); }
  GaussianState operator()(const CovarianceSpec& s) const { return GaussianState(s.means, s.cov); }
};

}  // namespace

json to_json(const StateSpec& spec) { return std::visit(SpecToJson{}, spec); }

GaussianState build_state(const StateSpec& spec) { return std::visit(SpecBuilder{}, spec); }

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::LoccI:
      return "locc_i";
    case Scheme::LoccII:
      return "locc_ii";
    case Scheme::Stokes:
      return "stokes";
    case Scheme::TwoCopyM1:
      return "twocopy_m1";
    case Scheme::TwoCopyM2:
      return "twocopy_m2";
    case Scheme::TwoCopyM3:
      return "twocopy_m3";
    case Scheme::Analytic:
      return "analytic";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::LoccI, Scheme::LoccII, Scheme::Stokes, Scheme::TwoCopyM1, Scheme::TwoCopyM2,
                   Scheme::TwoCopyM3, Scheme::Analytic}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown scheme \"" + std::string(name) +
                    "\" (expected locc_i, locc_ii, stokes, twocopy_m1, twocopy_m2, twocopy_m3 or analytic)");
}

ExperimentConfig parse_config(const json& j) {
  check_keys(j, {"state", "scheme", "shots", "seed", "stokes", "twocopy", "output"}, "config");
  ExperimentConfig c;
  if (j.contains("state")) c.state = parse_state_spec(j.at("state"));
  if (j.contains("scheme")) {
    if (!j.at("scheme").is_string()) throw ConfigError("config.scheme: expected a string");
    c.scheme = parse_scheme(j.at("scheme").get<std::string>());
  }
  c.shots = get_uint(j, "shots", c.shots, "config");
  if (c.shots == 0) throw ConfigError("config.shots: must be positive");
  c.seed = get_uint(j, "seed", c.seed, "config");

  if (j.contains("stokes")) {
    const json& s = j.at("stokes");
    check_keys(s, {"backend", "reference", "reference_c", "reference_d", "phases", "phi1", "phi2", "phi2_alt"}, "stokes");
    StokesConfig& st = c.stokes;
    st.sampled = parse_backend(s, "stokes");
    if (s.contains("reference")) st.single.reference = parse_reference(s.at("reference"), st.single.reference, "stokes.reference");
    if (s.contains("reference_c")) {
      st.two_mode.ref_c = parse_reference(s.at("reference_c"), st.two_mode.ref_c, "stokes.reference_c");
    }
    if (s.contains("reference_d")) {
      st.two_mode.ref_d = parse_reference(s.at("reference_d"), st.two_mode.ref_d, "stokes.reference_d");
    }
    if (s.contains("phases")) {
      const Vector phases = parse_vector(s.at("phases"), "stokes.phases");
      if (phases.size() != 3) throw ConfigError("stokes.phases: expected three phases");
      for (int i = 0; i < 3; ++i) st.single.phases[static_cast<std::size_t>(i)] = phases(i);
    }
    st.two_mode.phi1 = get_double(s, "phi1", st.two_mode.phi1, "stokes");
    st.two_mode.phi2 = get_double(s, "phi2", st.two_mode.phi2, "stokes");
    st.two_mode.phi2_alt = get_double(s, "phi2_alt", st.two_mode.phi2_alt, "stokes");
  }
  if (j.contains("twocopy")) {
    const json& t = j.at("twocopy");
    check_keys(t, {"backend", "opa", "assume_zero_mean", "rotated_minus"}, "twocopy");
    TwoCopyConfig& tc = c.twocopy;
    tc.sampled = parse_backend(t, "twocopy");
    if (t.contains("opa")) {
      const json& o = t.at("opa");
      check_keys(o, {"g1", "phi1", "g2", "phi2"}, "twocopy.opa");
      tc.opa.g1 = get_double(o, "g1", tc.opa.g1, "twocopy.opa");
      tc.opa.phi1 = get_double(o, "phi1", tc.opa.phi1, "twocopy.opa");
      tc.opa.g2 = get_double(o, "g2", tc.opa.g2, "twocopy.opa");
      tc.opa.phi2 = get_double(o, "phi2", tc.opa.phi2, "twocopy.opa");
    }
    tc.assume_zero_mean = get_bool(t, "assume_zero_mean", tc.assume_zero_mean, "twocopy");
    tc.rotated_minus = get_bool(t, "rotated_minus", tc.rotated_minus, "twocopy");
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    check_keys(o, {"record", "summary_csv", "readouts_csv"}, "output");
    for (const char* key : {"record", "summary_csv", "readouts_csv"}) {
      if (o.contains(key) && !o.at(key).is_string()) throw ConfigError(std::string("output.") + key + ": expected a path");
    }
    if (o.contains("record")) c.output.record = o.at("record").get<std::string>();
    if (o.contains("summary_csv")) c.output.summary_csv = o.at("summary_csv").get<std::string>();
    if (o.contains("readouts_csv")) c.output.readouts_csv = o.at("readouts_csv").get<std::string>();
  }
  return c;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) { return parse_config(read_json_file(path)); }

json to_json(const ExperimentConfig& c) {
  json j;
  j["state"] = to_json(c.state);
  j["scheme"] = std::string(to_string(c.scheme));
  j["shots"] = c.shots;
  j["seed"] = c.seed;
  json phases = json::array();
  for (double p : c.stokes.single.phases) phases.push_back(p);
  j["stokes"] = {{"backend", c.stokes.sampled ? "sampled" : "analytic"},
                 {"reference", to_json(c.stokes.single.reference)},
                 {"reference_c", to_json(c.stokes.two_mode.ref_c)},
                 {"reference_d", to_json(c.stokes.two_mode.ref_d)},
                 {"phases", phases},
                 {"phi1", c.stokes.two_mode.phi1},
                 {"phi2", c.stokes.two_mode.phi2},
                 {"phi2_alt", c.stokes.two_mode.phi2_alt}};
  j["twocopy"] = {{"backend", c.twocopy.sampled ? "sampled" : "analytic"},
                  {"opa", {{"g1", c.twocopy.opa.g1}, {"phi1", c.twocopy.opa.phi1}, {"g2", c.twocopy.opa.g2},
                           {"phi2", c.twocopy.opa.phi2}}},
                  {"assume_zero_mean", c.twocopy.assume_zero_mean},
                  {"rotated_minus", c.twocopy.rotated_minus}};
  json out = json::object();
  if (c.output.record) out["record"] = c.output.record->string();
  if (c.output.summary_csv) out["summary_csv"] = c.output.summary_csv->string();
  if (c.output.readouts_csv) out["readouts_csv"] = c.output.readouts_csv->string();
  j["output"] = out;
  return j;
}

json to_json(const SeparabilityReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"det_a", r.det_a},
          {"det_b", r.det_b},
          {"det_c", r.det_c},
          {"det_gamma", r.det_gamma},
          {"d", r.d},
          {"margin", r.margin},
          {"margin_error", opt(r.margin_error)},
          {"verdict", std::string(to_string(r.verdict))},
          {"xi_min", opt(r.xi_min)},
          {"log_negativity", opt(r.log_negativity)},
          {"log_negativity_raw", opt(r.log_negativity_raw)},
          {"consistent", r.consistent}};
}

}  // namespace gaussep::harness
