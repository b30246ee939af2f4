#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polymv/expr.hpp"

namespace polymv {

/// Configuration / semantic errors raised while assembling a model.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StateSpace { kReal, kNonneg, kUnitInterval };

std::string to_string(StateSpace s);
StateSpace state_space_from_string(const std::string& s);

/// A polynomial McKean-Vlasov model: moment order N, the coefficient maps
/// b, beta, c, gamma, Gamma (and optionally the common-noise maps l, Lambda),
/// a state space, and an initial condition given either as a point z0 in S or
/// as a raw moment vector (E[Z_0], ..., E[Z_0^N]).
struct ModelSpec {
  int N = 1;
  ExprPtr b, beta, c, gamma, Gamma;
  ExprPtr l, Lambda;  // null unless common noise present
  StateSpace state_space = StateSpace::kReal;
  std::optional<double> z0;            // point initial condition
  std::vector<double> initial_moments; // (m_1, ..., m_N); derived from z0 if set

  bool has_common_noise() const { return l != nullptr && Lambda != nullptr; }

  /// (1, m_1, ..., m_N) as the moment-ODE initial state.
  std::vector<double> initial_moment_vector() const;
};

/// Parse and validate a UTF-8 JSON model config (see README for the schema).
ModelSpec parse_model(const std::string& json_text);

/// Inverse of parse_model up to JSON field order.
std::string render_model(const ModelSpec& spec);

bool model_equal(const ModelSpec& a, const ModelSpec& b);

}  // namespace polymv
