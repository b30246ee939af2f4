#include "polymv/ode.hpp"

#include <algorithm>
#include <cmath>

namespace polymv {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// embedded 4th-order error weights (b - bhat)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace

std::vector<double> OdePath::at(double t) const {
  if (steps.empty()) throw NumericError("dense output: empty path");
  const double t_lo = steps.front().t, t_hi = steps.back().t;
  const double span = std::max(std::fabs(t_hi - t_lo), 1.0);
  if (t < t_lo - 1e-12 * span || t > t_hi + 1e-12 * span)
    throw NumericError("dense output: t outside solution span");
  t = std::clamp(t, t_lo, t_hi);
  // binary search for the bracketing step
  std::size_t lo = 0, hi = steps.size() - 1;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (steps[mid].t <= t)
      lo = mid;
    else
      hi = mid;
  }
  const OdeStep& s0 = steps[lo];
  const OdeStep& s1 = steps[hi];
  if (t == s0.t) return s0.y;
  if (t == s1.t) return s1.y;
  const double h = s1.t - s0.t;
  const double u = (t - s0.t) / h;
  const double u2 = u * u, u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1;
  const double h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2;
  const double h11 = u3 - u2;
  std::vector<double> y(s0.y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = h00 * s0.y[i] + h10 * h * s0.f[i] + h01 * s1.y[i] + h11 * h * s1.f[i];
  return y;
}

OdePath integrate_dopri5(const OdeRhs& rhs, double t0, double t1,
                         std::vector<double> y0, const OdeOptions& opts,
                         const OdeMonitor& monitor) {
  if (!(t1 > t0)) throw NumericError("integrate: t1 must exceed t0");
  const double span = t1 - t0;
  const double h_init = opts.initial_step > 0 ? opts.initial_step : 1e-4 * span;
  const double h_min = opts.min_step > 0 ? opts.min_step : 1e-14 * span;
  const std::size_t n = y0.size();

  OdePath path;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  std::vector<double> ytmp(n), ynew(n);

  double t = t0;
  rhs(t, y0, k1);
  path.steps.push_back({t, y0, k1, 0.0});

  double h = std::min(h_init, span);
  double err_old = 1e-4;
  long steps_taken = 0;

  while (t < t1) {
    if (++steps_taken > opts.max_steps)
      throw NumericError("integrate: max step count exceeded");
    h = std::min(h, t1 - t);

    ytmp = y0;
    axpy(ytmp, h * a21, k1);
    rhs(t + c2 * h, ytmp, k2);

    ytmp = y0;
    axpy(ytmp, h * a31, k1);
    axpy(ytmp, h * a32, k2);
    rhs(t + c3 * h, ytmp, k3);

    ytmp = y0;
    axpy(ytmp, h * a41, k1);
    axpy(ytmp, h * a42, k2);
    axpy(ytmp, h * a43, k3);
    rhs(t + c4 * h, ytmp, k4);

    ytmp = y0;
    axpy(ytmp, h * a51, k1);
    axpy(ytmp, h * a52, k2);
    axpy(ytmp, h * a53, k3);
    axpy(ytmp, h * a54, k4);
    rhs(t + c5 * h, ytmp, k5);

    ytmp = y0;
    axpy(ytmp, h * a61, k1);
    axpy(ytmp, h * a62, k2);
    axpy(ytmp, h * a63, k3);
    axpy(ytmp, h * a64, k4);
    axpy(ytmp, h * a65, k5);
    rhs(t + h, ytmp, k6);

    ynew = y0;
    axpy(ynew, h * b1, k1);
    axpy(ynew, h * b3, k3);
    axpy(ynew, h * b4, k4);
    axpy(ynew, h * b5, k5);
    axpy(ynew, h * b6, k6);
    rhs(t + h, ynew, k7);  // FSAL

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(ynew[i])) {
        finite = false;
        break;
      }
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc =
          opts.abs_tol +
          opts.rel_tol * std::max(std::fabs(y0[i]), std::fabs(ynew[i]));
      err += (ei / sc) * (ei / sc);
    }
    err = finite ? std::sqrt(err / double(n)) : 1e10;

    if (err <= 1.0) {
      t += h;
      y0 = ynew;
      StepControl ctl = StepControl::kContinue;
      if (monitor) {
        ctl = monitor(t, y0);
        if (ctl == StepControl::kStop || y0 != ynew) rhs(t, y0, k7);
      }
      path.steps.push_back({t, y0, k7, err});
      if (ctl == StepControl::kStop) {
        path.stopped = true;
        return path;
      }
      k1 = k7;
      // PI controller (Hairer II.4): stabilized step growth
      const double fac =
          0.9 * std::pow(std::max(err, 1e-16), -0.17) * std::pow(err_old, 0.04);
      h *= std::clamp(fac, 0.2, 5.0);
      err_old = std::max(err, 1e-16);
    } else {
      const double fac = std::max(0.2, 0.9 * std::pow(err, -0.2));
      h *= fac;
    }
    if (h < h_min && t < t1)
      throw StepUnderflow("integrate: step size underflow", t);
  }
  return path;
}

}  // namespace polymv
