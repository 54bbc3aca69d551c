#include "kgb/ode.hpp"

#include <algorithm>
#include <cmath>

#include "kgb/error.hpp"

namespace kgb {

namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

}  // namespace

std::vector<double> integrate_dopri5(const std::function<double(double, double)>& f, double t0,
                                     double y0, std::span<const double> targets,
                                     const OdeOptions& options, OdeStats* stats) {
  std::vector<double> out;
  out.reserve(targets.size());
  if (targets.empty()) {
    return out;
  }
  const double direction = targets.front() >= t0 ? 1.0 : -1.0;
  double prev = t0;
  for (double target : targets) {
    if ((target - prev) * direction < 0.0) {
      throw Error(ErrorCode::InvalidParam, "ODE targets must be monotone away from t0");
    }
    prev = target;
  }
  if (!(options.rtol > 0.0) || options.atol < 0.0) {
    throw Error(ErrorCode::InvalidParam, "ODE tolerances must be positive");
  }

  double t = t0;
  double y = y0;
  double k1 = f(t, y);
  double h = std::min(std::abs(options.h_init), options.h_max);
  std::size_t steps = 0;
  OdeStats local;

  for (double target : targets) {
    while ((target - t) * direction > 0.0) {
      if (++steps > options.max_steps) {
        throw Error(ErrorCode::ToleranceNotMet, "ODE integration exceeded the step budget");
      }
      const double remaining = std::abs(target - t);
      bool lands = false;
      double step = std::min(h, options.h_max);
      if (step >= remaining) {
        step = remaining;
        lands = true;
      }
      const double hs = direction * step;

      const double k2 = f(t + c2 * hs, y + hs * a21 * k1);
      const double k3 = f(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
      const double k4 = f(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
      const double k5 = f(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const double k6 =
          f(t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const double y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const double t_new = lands ? target : t + hs;
      const double k7 = f(t_new, y_new);

      const double err_abs =
          std::abs(hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
      const double scale = options.atol + options.rtol * std::max(std::abs(y), std::abs(y_new));
      const double err = scale > 0.0 ? err_abs / scale : (err_abs > 0.0 ? HUGE_VAL : 0.0);
      if (!std::isfinite(y_new)) {
        throw Error(ErrorCode::ToleranceNotMet, "ODE integration produced a non-finite value");
      }

      if (err <= 1.0) {
        t = t_new;
        y = y_new;
        k1 = k7;
        ++local.accepted;
        const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        // A step clipped to hit a target says nothing about the natural size.
        if (!lands || step == h) {
          h = step * grow;
        }
      } else {
        ++local.rejected;
        h = step * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
          throw Error(ErrorCode::ToleranceNotMet, "ODE step size underflow");
        }
      }
    }
    out.push_back(y);
  }
  if (stats != nullptr) {
    *stats = local;
  }
  return out;
}

}  // namespace kgb
