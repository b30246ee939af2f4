#pragma once

#include <string>
#include <vector>

#include "polymv/model.hpp"
#include "polymv/ode.hpp"

namespace polymv {

/// Anisotropic norm (sum_i |x_i|^(2/i))^(1/2) used by all growth conditions.
double norm_N(const std::vector<double>& x);

/// The (N+1)x(N+1) matrix of the nonlinear moment ODE zbar' = L(z) zbar:
/// row 0 is zero; for k >= 1,
///   L(k,k)   = k*beta(z) + k(k-1)/2 * Gamma(z)
///   L(k,k-1) = k*b(z)    + k(k-1)/2 * gamma(z)
///   L(k,k-2) = k(k-1)/2 * c(z)
Matrix build_L(const ModelSpec& spec, const std::vector<double>& z);

enum class SolStatus { kCompleted, kBlowup };

/// Moment trajectory with dense output. Component 0 is pinned to 1 at every
/// accepted step. On blow-up, t_star is the last grid time at which
/// ||z||_N^(2N) was still below the threshold.
struct OdeSolution {
  int N = 0;
  OdePath path;
  SolStatus status = SolStatus::kCompleted;
  double t_star = 0.0;  // meaningful when status == kBlowup

  double t_begin() const { return path.steps.front().t; }
  double t_end() const { return path.steps.back().t; }
  /// Full moment vector (1, z_1, ..., z_N) at time t.
  std::vector<double> at(double t) const { return path.at(t); }
  /// Moments (z_1, ..., z_N) at time t.
  std::vector<double> z_at(double t) const;
};

inline constexpr double kBlowupThreshold = 1e12;  // on ||z||_N^(2N)

/// Integrate the moment ODE on [0, min(T, t*)] with Dormand-Prince 5(4).
OdeSolution integrate_moments(const ModelSpec& spec, double T, double rel_tol,
                              double abs_tol);

/// The a-priori first-moment bound (|E[Z_0]| + b0*t) * exp((b0 + beta0)*t),
/// with beta0 read from a constant beta and b0 from an affine-in-|x1| b.
/// Throws ConfigError when the constants are not structurally extractable.
double gronwall_bound(const ModelSpec& spec, double t);

/// True when the constants needed by gronwall_bound are extractable.
bool gronwall_constants(const ModelSpec& spec, double* b0, double* beta0);

/// CSV rows `t,z0,z1,...,zN` at the accepted grid points, 17 significant
/// digits, \n line endings.
std::string trajectory_csv(const OdeSolution& sol);

}  // namespace polymv
