#include "polymv/model.hpp"

#include <cmath>

#include <json.hpp>

namespace polymv {

using nlohmann::json;

std::string to_string(StateSpace s) {
  switch (s) {
    case StateSpace::kReal:
      return "R";
    case StateSpace::kNonneg:
      return "R+";
    case StateSpace::kUnitInterval:
      return "[0,1]";
  }
  return "R";
}

StateSpace state_space_from_string(const std::string& s) {
  if (s == "R") return StateSpace::kReal;
  if (s == "R+") return StateSpace::kNonneg;
  if (s == "[0,1]") return StateSpace::kUnitInterval;
  throw ConfigError("state_space must be one of \"R\", \"R+\", \"[0,1]\"");
}

std::vector<double> ModelSpec::initial_moment_vector() const {
  std::vector<double> v(static_cast<std::size_t>(N) + 1);
  v[0] = 1.0;
  for (int k = 1; k <= N; ++k) v[k] = initial_moments[k - 1];
  return v;
}

namespace {

bool in_space(double z, StateSpace s) {
  switch (s) {
    case StateSpace::kReal:
      return std::isfinite(z);
    case StateSpace::kNonneg:
      return std::isfinite(z) && z >= 0.0;
    case StateSpace::kUnitInterval:
      return std::isfinite(z) && z >= 0.0 && z <= 1.0;
  }
  return false;
}

ExprPtr parse_map(const json& j, const char* name, int N) {
  if (!j.contains(name))
    throw ConfigError(std::string("missing required map \"") + name + "\"");
  if (!j.at(name).is_string())
    throw ConfigError(std::string("map \"") + name + "\" must be a string");
  ExprPtr e;
  try {
    e = parse_expr(j.at(name).get<std::string>());
  } catch (const ParseError& ex) {
    throw ConfigError(std::string("map \"") + name + "\": " + ex.what());
  }
  int top = max_var_index(*e);
  if (top > N)
    throw ConfigError(std::string("map \"") + name + "\" references x" +
                      std::to_string(top) + " but N=" + std::to_string(N));
  return e;
}

}  // namespace

ModelSpec parse_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("invalid JSON: ") + ex.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  ModelSpec spec;
  if (!j.contains("N") || !j.at("N").is_number_integer())
    throw ConfigError("\"N\" must be an integer");
  spec.N = j.at("N").get<int>();
  if (spec.N < 1) throw ConfigError("N must be >= 1");

  spec.b = parse_map(j, "b", spec.N);
  spec.beta = parse_map(j, "beta", spec.N);
  spec.c = parse_map(j, "c", spec.N);
  spec.gamma = parse_map(j, "gamma", spec.N);
  spec.Gamma = parse_map(j, "Gamma", spec.N);

  const bool has_l = j.contains("l");
  const bool has_L = j.contains("Lambda");
  if (has_l != has_L)
    throw ConfigError("common-noise maps \"l\" and \"Lambda\" must be given together");
  if (has_l) {
    spec.l = parse_map(j, "l", spec.N);
    spec.Lambda = parse_map(j, "Lambda", spec.N);
  }

  spec.state_space = j.contains("state_space")
                         ? state_space_from_string(
                               j.at("state_space").get<std::string>())
                         : StateSpace::kReal;

  const bool has_z0 = j.contains("z0");
  const bool has_m = j.contains("moments");
  if (has_z0 == has_m)
    throw ConfigError("exactly one of \"z0\" or \"moments\" is required");
  if (has_z0) {
    if (!j.at("z0").is_number()) throw ConfigError("\"z0\" must be a number");
    double z0 = j.at("z0").get<double>();
    if (!in_space(z0, spec.state_space))
      throw ConfigError("z0 = " + std::to_string(z0) + " lies outside state space " +
                        to_string(spec.state_space));
    spec.z0 = z0;
    spec.initial_moments.resize(spec.N);
    double p = 1.0;
    for (int k = 1; k <= spec.N; ++k) {
      p *= z0;
      spec.initial_moments[k - 1] = p;
    }
  } else {
    if (!j.at("moments").is_array())
      throw ConfigError("\"moments\" must be an array of numbers");
    spec.initial_moments = j.at("moments").get<std::vector<double>>();
    if (static_cast<int>(spec.initial_moments.size()) != spec.N)
      throw ConfigError("\"moments\" must have exactly N entries");
    for (double m : spec.initial_moments)
      if (!std::isfinite(m)) throw ConfigError("moments must be finite");
  }
  return spec;
}

std::string render_model(const ModelSpec& spec) {
  json j;
  j["N"] = spec.N;
  j["b"] = render_expr(*spec.b);
  j["beta"] = render_expr(*spec.beta);
  j["c"] = render_expr(*spec.c);
  j["gamma"] = render_expr(*spec.gamma);
  j["Gamma"] = render_expr(*spec.Gamma);
  if (spec.has_common_noise()) {
    j["l"] = render_expr(*spec.l);
    j["Lambda"] = render_expr(*spec.Lambda);
  }
  j["state_space"] = to_string(spec.state_space);
  if (spec.z0)
    j["z0"] = *spec.z0;
  else
    j["moments"] = spec.initial_moments;
  return j.dump(2);
}

bool model_equal(const ModelSpec& a, const ModelSpec& b) {
  if (a.N != b.N || a.state_space != b.state_space) return false;
  if (a.z0.has_value() != b.z0.has_value()) return false;
  if (a.z0 && *a.z0 != *b.z0) return false;
  if (a.initial_moments != b.initial_moments) return false;
  if (a.has_common_noise() != b.has_common_noise()) return false;
  if (!expr_equal(*a.b, *b.b) || !expr_equal(*a.beta, *b.beta) ||
      !expr_equal(*a.c, *b.c) || !expr_equal(*a.gamma, *b.gamma) ||
      !expr_equal(*a.Gamma, *b.Gamma))
    return false;
  if (a.has_common_noise() &&
      (!expr_equal(*a.l, *b.l) || !expr_equal(*a.Lambda, *b.Lambda)))
    return false;
  return true;
}

}  // namespace polymv
