#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>

#include <json.hpp>

#include "damflow/damsolver.hpp"
#include "damflow/verify.hpp"

namespace damflow::io {

/// Malformed input: unreadable JSON, missing keys, wrong types.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SampleSpec {
  double t = 1.0;
  double x_min = -1.0;
  double x_max = 1.0;
  int n = 101;
};

struct ProblemConfig {
  double h_l = 0.0;
  double u_l = 0.0;
  double b0 = 0.0;
  double b1 = 0.0;
  double g = 9.81;
  std::optional<SampleSpec> sample;
  std::optional<double> epsilon;

  [[nodiscard]] DamProblem problem() const {
    return DamProblem{{h_l, u_l}, BedStep{b0, b1, Gravity{g}}};
  }
};

/// Shortest decimal with 12 significant digits, '.' separator regardless of
/// locale.
inline std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 12);
  return {buf.data(), res.ptr};
}

/// `v` rounded to 12 significant digits, so JSON serialisation prints the
/// same digits as `format_number`.
inline double round12(double v) {
  if (!std::isfinite(v)) return v;
  const std::string s = format_number(v);
  double out = v;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out == 0.0 ? 0.0 : out;
}

namespace detail {

inline double require_number(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key)) throw config_error(std::string("missing key '") + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw config_error(std::string("key '") + key + "' must be a number");
  return v.get<double>();
}

inline std::optional<double> optional_number(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return require_number(obj, key);
}

}  // namespace detail

/// Validates ordering/positivity; throws damflow::domain_error.
inline void validate(const ProblemConfig& c) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw domain_error(std::string(what) + " must be positive");
  };
  positive(c.h_l, "h_l");
  positive(c.u_l, "u_l");
  positive(c.g, "g");
  if (!std::isfinite(c.b0) || !std::isfinite(c.b1)) throw domain_error("bed levels must be finite");
  if (!(c.b1 > c.b0)) throw domain_error("b1 must exceed b0");
  if (c.sample) {
    positive(c.sample->t, "sample.t");
    if (c.sample->n < 1) throw domain_error("sample.n must be at least 1");
    if (!(c.sample->x_max >= c.sample->x_min)) throw domain_error("sample.x_max must be >= sample.x_min");
  }
  if (c.epsilon) positive(*c.epsilon, "epsilon");
}

inline ProblemConfig parse_config(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config must be a JSON object");

  ProblemConfig c;
  c.h_l = detail::require_number(j, "h_l");
  c.u_l = detail::require_number(j, "u_l");
  c.b0 = detail::require_number(j, "b0");
  c.b1 = detail::require_number(j, "b1");
  c.g = detail::optional_number(j, "g").value_or(9.81);
  c.epsilon = detail::optional_number(j, "epsilon");
  if (j.contains("sample") && !j.at("sample").is_null()) {
    const auto& s = j.at("sample");
    if (!s.is_object()) throw config_error("'sample' must be an object");
    SampleSpec spec;
    spec.t = detail::optional_number(s, "t").value_or(spec.t);
    spec.x_min = detail::optional_number(s, "x_min").value_or(spec.x_min);
    spec.x_max = detail::optional_number(s, "x_max").value_or(spec.x_max);
    if (s.contains("n")) {
      if (!s.at("n").is_number_integer()) throw config_error("'sample.n' must be an integer");
      spec.n = s.at("n").get<int>();
    }
    c.sample = spec;
  }
  validate(c);
  return c;
}

inline nlohmann::json interval_json(double h_tilde, double h_under, std::optional<double> h_hat) {
  nlohmann::json iv;
  iv["h_tilde"] = round12(h_tilde);
  iv["h_under"] = round12(h_under);
  iv["h_hat"] = h_hat ? nlohmann::json(round12(*h_hat)) : nlohmann::json(nullptr);
  return iv;
}

inline nlohmann::json summary_json(const DamOutcome& outcome) {
  nlohmann::json j;
  if (const auto* nf = std::get_if<NoFlow>(&outcome)) {
    j["status"] = "no_flow";
    j["reason"] = to_string(nf->reason);
    j["interval"] = interval_json(nf->h_tilde, nf->h_under, std::nullopt);
    if (nf->reason == NoFlowReason::rest_state) {
      j["h0"] = round12(nf->h_under);
      j["u0"] = 0.0;
      j["h1"] = 0.0;
      j["u1"] = 0.0;
    }
    return j;
  }
  const auto& s = std::get<DamSolution>(outcome);
  j["status"] = "flow";
  j["h0"] = round12(s.behind.h);
  j["u0"] = round12(s.behind.u);
  j["c1"] = round12(s.c1);
  j["h1"] = round12(s.conn.right.h);
  j["u1"] = round12(s.conn.right.u);
  j["chi"] = round12(s.conn.chi);
  j["chi_bar"] = round12(chi_bar(s.behind.h, s.behind.u, s.problem.step).chi_bar);
  j["u_m"] = round12(s.u_m);
  j["u_m_alt"] = round12(s.u_m_alt);
  j["branch"] = to_string(s.branch);
  j["E"] = round12(s.energy);
  j["M1"] = round12(s.m1);
  j["M2"] = s.m2 ? nlohmann::json(round12(*s.m2)) : nlohmann::json(nullptr);
  j["tie_flag"] = s.tie;
  j["left_waves"] = to_string(s.left_waves.kind);
  j["interval"] = interval_json(s.interval.h_tilde, s.interval.h_under, s.interval.h_hat);
  return j;
}

inline nlohmann::json report_json(const verify::ResidualReport& r, const verify::Tolerances& tol = {}) {
  nlohmann::json j;
  j["mass_flux"] = round12(r.mass_flux);
  j["momentum_source"] = round12(r.momentum_source);
  j["chi"] = round12(r.chi);
  j["chi_bar"] = round12(r.chi_bar);
  j["chi_in_bounds"] = r.chi_in_bounds;
  j["entropy"] = r.entropy;
  j["froude_right"] = round12(r.froude_right);
  if (r.rh_mass) j["rankine_hugoniot"] = {{"mass", round12(*r.rh_mass)}, {"momentum", round12(*r.rh_momentum)}};
  if (r.shock_speed) j["shock_speed"] = round12(*r.shock_speed);
  if (r.fan_foot_speed) j["fan_foot_speed"] = round12(*r.fan_foot_speed);
  nlohmann::json checks = nlohmann::json::object();
  for (const auto& c : r.checks(tol)) checks[c.name] = c.ok;
  j["checks"] = checks;
  j["passed"] = r.passed(tol);
  return j;
}

}  // namespace damflow::io
