#pragma once

#include <functional>
#include <vector>

#include "polymv/linalg.hpp"

namespace polymv {

/// Raised when the controller cannot meet the tolerance: the step size fell
/// under min_step while the error estimate still exceeded 1.
class StepUnderflow : public NumericError {
 public:
  StepUnderflow(const std::string& msg, double t) : NumericError(msg), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

struct OdeOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double initial_step = 0.0;  // 0 => 1e-4 * (t1 - t0)
  double min_step = 0.0;      // 0 => 1e-14 * (t1 - t0)
  long max_steps = 50'000'000;
};

enum class StepControl { kContinue, kStop };

/// One accepted step of the solution path.
struct OdeStep {
  double t;
  std::vector<double> y;
  std::vector<double> f;  // derivative at t, for Hermite dense output
  double error;           // controller error estimate of the step into t
};

using OdeRhs =
    std::function<void(double t, const std::vector<double>& y, std::vector<double>& dydt)>;
/// Called after each accepted step; may adjust y in place (e.g. to re-pin an
/// exactly-known component) and may stop the integration.
using OdeMonitor = std::function<StepControl(double t, std::vector<double>& y)>;

struct OdePath {
  std::vector<OdeStep> steps;  // strictly increasing t, steps.front().t == t0
  bool stopped = false;        // monitor requested stop before reaching t1

  /// Cubic Hermite dense output; t must lie within the covered span.
  std::vector<double> at(double t) const;
  const OdeStep& last() const { return steps.back(); }
};

/// Adaptive Dormand-Prince 5(4) with PI step-size control.
OdePath integrate_dopri5(const OdeRhs& rhs, double t0, double t1,
                         std::vector<double> y0, const OdeOptions& opts,
                         const OdeMonitor& monitor = nullptr);

}  // namespace polymv
