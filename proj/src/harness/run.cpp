#include "gaussep/harness/run.hpp"

#include "gaussep/errors.hpp"
#include "gaussep/scheme_locc.hpp"
#include "gaussep/version.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace gaussep::harness {

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

SchemeOutcome from_covariance(const CovarianceEstimate& est, const EstimatedVerdict& v) {
  SchemeOutcome o;
  o.report = v.report;
  o.gamma_hat = est.gamma_hat;
  o.gamma_std = est.std_errors;
  o.c_hat = est.gamma_hat.topRightCorner(2, 2);
  o.c_std = est.std_errors.topRightCorner(2, 2);
  o.shots_used = est.shots_used;
  o.details["projection_epsilon"] = v.projection_epsilon;
  o.details["gamma_projected"] = matrix_json(v.gamma_projected);
  return o;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

SchemeOutcome run_scheme(const GaussianState& state, const ExperimentConfig& config) {
  switch (config.scheme) {
    case Scheme::LoccI:
    case Scheme::LoccII: {
      const FiveGroupPlan plan{config.shots,
                               config.scheme == Scheme::LoccI ? LoccVariant::SchemeI : LoccVariant::SchemeII};
      const LoccEstimate est = run_locc(state, plan, config.seed);
      SchemeOutcome o = from_covariance(est, verdict_from_estimate(est.gamma_hat, est.std_errors));
      o.details["classical_bits"] = est.classical_bits;
      o.details["group_shots"] = est.group_shots;
      return o;
    }
    case Scheme::Stokes: {
      StokesConfig sc = config.stokes;
      sc.shots = config.shots;
      sc.seed = config.seed;
      const StokesResult r = full_pipeline(state, sc);
      SchemeOutcome o = from_covariance(r.estimate, r.verdict);
      if (!sc.sampled) o.shots_used = 0;
      o.readouts = r.readouts;
      o.details["used_s3"] = r.used_s3;
      o.details["full_tomography"] = r.full_tomography;
      o.details["backend"] = sc.sampled ? "sampled" : "analytic";
      return o;
    }
    case Scheme::TwoCopyM1:
    case Scheme::TwoCopyM2:
    case Scheme::TwoCopyM3: {
      TwoCopyConfig tc = config.twocopy;
      tc.method = config.scheme == Scheme::TwoCopyM1   ? TwoCopyMethod::M1
                  : config.scheme == Scheme::TwoCopyM2 ? TwoCopyMethod::M2
                                                       : TwoCopyMethod::M3;
      tc.shots = config.shots;
      tc.seed = config.seed;
      const TwoCopyResult r = run_twocopy(state, tc);
      SchemeOutcome o;
      o.report = r.report;
      o.shots_used = r.shots_used;
      if (r.c) {
        o.c_hat = r.c->c;
        o.c_std = r.c->std_errors;
      }
      auto est = [](const MomentEstimate& m) { return json{{"value", m.value}, {"std_error", m.std_error}}; };
      o.details["det_a"] = est(r.det_a);
      o.details["det_b"] = est(r.det_b);
      o.details["det_c"] = est(r.det_c);
      o.details["det_gamma"] = est(r.det_gamma);
      o.details["measurement_settings"] = r.measurement_settings;
      o.details["tomography_settings"] = TwoCopyResult::kTomographySettings;
      o.details["backend"] = tc.sampled ? "sampled" : "analytic";
      if (r.method2) {
        json cands = json::array();
        for (const Method2Candidate& c : r.method2->candidates) {
          cands.push_back({{"s_plus_t", c.s_plus_t}, {"st", c.st}, {"valid", c.valid}});
        }
        o.details["method2_candidates"] = cands;
        if (r.method2->det_gamma_predicted) o.details["det_gamma_predicted"] = *r.method2->det_gamma_predicted;
      }
      return o;
    }
    case Scheme::Analytic: {
      SchemeOutcome o;
      o.report = simon_criterion(state);
      o.gamma_hat = state.cov();
      o.gamma_std = Matrix::Zero(state.cov().rows(), state.cov().cols());
      o.c_hat = blocks(state.cov()).c;
      o.c_std = Matrix2::Zero();
      return o;
    }
  }
  throw InputError("unknown scheme");
}

std::string status_of(const std::exception& e) {
  if (dynamic_cast<const ConditioningError*>(&e)) return "conditioning_error";
  if (dynamic_cast<const InsufficientShotsError*>(&e)) return "insufficient_shots";
  if (dynamic_cast<const ModelMismatchError*>(&e)) return "model_mismatch";
  if (dynamic_cast<const InvalidCovarianceError*>(&e)) return "invalid_covariance";
  if (dynamic_cast<const UnsupportedError*>(&e)) return "unsupported";
  if (dynamic_cast<const InputError*>(&e)) return "input_error";
  return "error";
}

bool RunRecord::verdict_agrees() const {
  return outcome && is_entangled(outcome->report.verdict) == is_entangled(truth.verdict);
}

json RunRecord::payload() const {
  json j;
  j["version"] = std::string(kVersion);
  j["config"] = config;
  j["truth"] = harness::to_json(truth);
  j["status"] = status;
  j["message"] = message;
  if (outcome) {
    json e = harness::to_json(outcome->report);
    if (outcome->gamma_hat) e["gamma_hat"] = matrix_json(*outcome->gamma_hat);
    if (outcome->gamma_std) e["gamma_std_errors"] = matrix_json(*outcome->gamma_std);
    if (outcome->c_hat) e["c_hat"] = matrix_json(*outcome->c_hat);
    if (outcome->c_std) e["c_std_errors"] = matrix_json(*outcome->c_std);
    e["shots_used"] = outcome->shots_used;
    e["details"] = outcome->details;
    j["estimate"] = e;
    j["verdict_agrees"] = verdict_agrees();
  } else {
    j["estimate"] = nullptr;
    j["verdict_agrees"] = nullptr;
  }
  j["rms_error"] = rms_error ? json(*rms_error) : json(nullptr);
  return j;
}

json RunRecord::to_json() const {
  json j = payload();
  j["wall_time"] = wall_time;
  return j;
}

RunRecord simulate(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunRecord record;
  record.config = harness::to_json(config);
  const GaussianState state = build_state(config.state);
  record.truth = simon_criterion(state);
  try {
    SchemeOutcome o = run_scheme(state, config);
    if (o.gamma_hat) {
      record.rms_error = std::sqrt((*o.gamma_hat - state.cov()).squaredNorm() / 16.0);
      o.details["gamma_error"] = matrix_json(*o.gamma_hat - state.cov());
    } else if (o.c_hat) {
      const Matrix2 diff = *o.c_hat - blocks(state.cov()).c;
      record.rms_error = std::sqrt(diff.squaredNorm() / 4.0);
      o.details["c_error"] = matrix_json(diff);
    }
    record.outcome = std::move(o);
  } catch (const Error& e) {
    record.status = status_of(e);
    record.message = e.what();
  }
  record.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

std::string summary_csv_header() {
  return "scheme,state,shots,seed,true_margin,margin,margin_err,true_verdict,verdict,rms_error,status";
}

std::string summary_csv_row(const RunRecord& r) {
  std::ostringstream os;
  os << r.config.at("scheme").get<std::string>() << ',' << r.config.at("state").at("kind").get<std::string>() << ','
     << r.config.at("shots").get<std::uint64_t>() << ',' << r.config.at("seed").get<std::uint64_t>() << ','
     << format_double(r.truth.margin) << ',';
  if (r.outcome) {
    os << format_double(r.outcome->report.margin) << ','
       << (r.outcome->report.margin_error ? format_double(*r.outcome->report.margin_error) : "") << ',';
  } else {
    os << ",,";
  }
  os << to_string(r.truth.verdict) << ',' << (r.outcome ? std::string(to_string(r.outcome->report.verdict)) : "")
     << ',' << (r.rms_error ? format_double(*r.rms_error) : "") << ',' << r.status;
  return os.str();
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace gaussep::harness
