#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "chenciner/errors.hpp"
#include "chenciner/model.hpp"

namespace chenciner {

// Parsed model description. Coefficients are exact rationals: JSON carries
// them as decimal strings ("0.25", "1e-3") or fractions ("1/3"); integral
// JSON numbers are accepted, non-integral ones rejected (they were already
// rounded to binary by the JSON writer).
struct ModelConfig {
  std::string name;
  ExactSeries beta1, beta2, l2;  // l2 includes the constant term L0
  Rational L0 = 0;
  Rational theta0 = 0;
  Rational epsilon = Rational(1, 10);
  Tolerances tol;

  friend bool operator==(const ModelConfig& a, const ModelConfig& b) {
    auto teq = [](const Tolerances& x, const Tolerances& y) {
      return x.degeneracy_tol == y.degeneracy_tol &&
             x.delta_band_scale == y.delta_band_scale &&
             x.beta_band_scale == y.beta_band_scale &&
             x.root_zero_band == y.root_zero_band && x.trace_tol == y.trace_tol &&
             x.resid_const == y.resid_const;
    };
    return a.name == b.name && a.beta1 == b.beta1 && a.beta2 == b.beta2 &&
           a.l2 == b.l2 && a.L0 == b.L0 && a.theta0 == b.theta0 &&
           a.epsilon == b.epsilon && teq(a.tol, b.tol);
  }
};

namespace detail {

using Json = nlohmann::ordered_json;

inline Rational json_rational(const Json& j, const std::string& field) {
  if (j.is_string()) {
    try {
      return rational_from_string(j.get<std::string>());
    } catch (const Error& e) {
      throw ConfigError(field, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (std::floor(v) == v && std::abs(v) < 1e15) return rational_from_double(v);
    throw ConfigError(field,
                      "non-integral JSON number; use a decimal string for exactness");
  }
  throw ConfigError(field, "expected a number or a numeric string");
}

inline ExactSeries json_series(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field, "expected an array of {i, j, value} terms");
  ExactSeries s;
  for (size_t n = 0; n < j.size(); ++n) {
    std::string at = field + "[" + std::to_string(n) + "]";
    const Json& t = j[n];
    if (!t.is_object()) throw ConfigError(at, "expected an object {i, j, value}");
    for (const auto& [key, val] : t.items())
      if (key != "i" && key != "j" && key != "value")
        throw ConfigError(at + "." + key, "unknown field");
    if (!t.contains("i") || !t.contains("j") || !t.contains("value"))
      throw ConfigError(at, "term needs i, j and value");
    if (!t["i"].is_number_integer() && !t["i"].is_number_unsigned())
      throw ConfigError(at + ".i", "expected a non-negative integer");
    if (!t["j"].is_number_integer() && !t["j"].is_number_unsigned())
      throw ConfigError(at + ".j", "expected a non-negative integer");
    std::int64_t i = t["i"].get<std::int64_t>(), jj = t["j"].get<std::int64_t>();
    if (i < 0 || jj < 0 || i > 32 || jj > 32)
      throw ConfigError(at, "exponents must lie in [0, 32]");
    if (s.coefficient(static_cast<int>(i), static_cast<int>(jj)) != 0)
      throw ConfigError(at, "duplicate term (" + std::to_string(i) + ", " +
                                std::to_string(jj) + ")");
    s.set(static_cast<int>(i), static_cast<int>(jj), json_rational(t["value"], at + ".value"));
  }
  return s;
}

}  // namespace detail

inline ModelConfig parse_model_config(const std::string& text) {
  detail::Json j;
  try {
    j = detail::Json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("$", "top level must be an object");

  static const char* known[] = {"name", "L0",      "theta0",    "epsilon",
                                "beta1", "beta2",  "l2",        "tolerances"};
  for (const auto& [key, val] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(key, "unknown field");
  }
  for (const char* req : {"L0", "theta0", "beta1", "beta2"})
    if (!j.contains(req)) throw ConfigError(req, "missing required field");

  ModelConfig cfg;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ConfigError("name", "expected a string");
    cfg.name = j["name"].get<std::string>();
  }
  cfg.L0 = detail::json_rational(j["L0"], "L0");
  if (cfg.L0 == 0) throw ConfigError("L0", "must be nonzero");
  cfg.theta0 = detail::json_rational(j["theta0"], "theta0");
  if (j.contains("epsilon")) cfg.epsilon = detail::json_rational(j["epsilon"], "epsilon");
  cfg.beta1 = detail::json_series(j["beta1"], "beta1");
  cfg.beta2 = detail::json_series(j["beta2"], "beta2");
  if (j.contains("l2")) cfg.l2 = detail::json_series(j["l2"], "l2");

  Rational l2c = cfg.l2.coefficient(0, 0);
  if (l2c == 0) {
    cfg.l2.set(0, 0, cfg.L0);
  } else if (l2c != cfg.L0) {
    throw ConfigError("l2", "constant term disagrees with L0");
  }

  if (j.contains("tolerances")) {
    const detail::Json& t = j["tolerances"];
    if (!t.is_object()) throw ConfigError("tolerances", "expected an object");
    auto field = [&](const char* name, double* dst) {
      if (!t.contains(name)) return;
      Rational r = detail::json_rational(t[name], std::string("tolerances.") + name);
      *dst = to_double(r);
      if (!(*dst > 0)) throw ConfigError(std::string("tolerances.") + name, "must be positive");
    };
    for (const auto& [key, val] : t.items())
      if (key != "degeneracy_tol" && key != "delta_band_scale" &&
          key != "beta_band_scale" && key != "root_zero_band" && key != "trace_tol" &&
          key != "resid_const")
        throw ConfigError("tolerances." + key, "unknown field");
    field("degeneracy_tol", &cfg.tol.degeneracy_tol);
    field("delta_band_scale", &cfg.tol.delta_band_scale);
    field("beta_band_scale", &cfg.tol.beta_band_scale);
    field("root_zero_band", &cfg.tol.root_zero_band);
    field("trace_tol", &cfg.tol.trace_tol);
    field("resid_const", &cfg.tol.resid_const);
  }
  return cfg;
}

inline std::string serialize_model_config(const ModelConfig& cfg) {
  detail::Json j = detail::Json::object();
  if (!cfg.name.empty()) j["name"] = cfg.name;
  j["L0"] = to_exact_string(cfg.L0);
  j["theta0"] = to_exact_string(cfg.theta0);
  j["epsilon"] = to_exact_string(cfg.epsilon);
  auto series = [](const ExactSeries& s) {
    detail::Json arr = detail::Json::array();
    for (const auto& [ij, c] : s.terms()) {
      detail::Json t = detail::Json::object();
      t["i"] = ij.first;
      t["j"] = ij.second;
      t["value"] = to_exact_string(c);
      arr.push_back(t);
    }
    return arr;
  };
  j["beta1"] = series(cfg.beta1);
  j["beta2"] = series(cfg.beta2);
  ExactSeries l2_rest = cfg.l2;
  l2_rest.set(0, 0, Rational(0));  // the constant lives in L0
  j["l2"] = series(l2_rest);
  detail::Json t = detail::Json::object();
  auto tfield = [&](const char* name, double v) {
    t[name] = to_exact_string(rational_from_double(v));
  };
  tfield("degeneracy_tol", cfg.tol.degeneracy_tol);
  tfield("delta_band_scale", cfg.tol.delta_band_scale);
  tfield("beta_band_scale", cfg.tol.beta_band_scale);
  tfield("root_zero_band", cfg.tol.root_zero_band);
  tfield("trace_tol", cfg.tol.trace_tol);
  tfield("resid_const", cfg.tol.resid_const);
  j["tolerances"] = t;
  return j.dump(2) + "\n";
}

inline NormalFormModel to_model(const ModelConfig& cfg) {
  return NormalFormModel(cfg.beta1, cfg.beta2, cfg.l2, to_double(cfg.theta0),
                         to_double(cfg.epsilon), cfg.tol);
}

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string config_digest(const ModelConfig& cfg) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(serialize_model_config(cfg))));
  return buf;
}

}  // namespace chenciner
