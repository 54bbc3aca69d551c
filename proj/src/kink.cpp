#include "kgb/kink.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kgb/error.hpp"
#include "kgb/ode.hpp"

namespace kgb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// sqrt(sqrt(1 + b^2 (1 - cos w)) - 1) for w in (0, pi].
double implicit_denominator(double b, double w) {
  const double s = std::sin(0.5 * w);
  const double y = 2.0 * b * b * s * s;
  return std::sqrt(2.0) * b * s / std::sqrt(std::sqrt(1.0 + y) + 1.0);
}

// Integral from q to pi of dw / denominator(w), 0 < q <= pi, with w = e^s.
double integral_to_pi(double b, double q) {
  if (q >= kPi) {
    return 0.0;
  }
  auto integrand = [b](double s) {
    const double w = std::exp(s);
    return w / implicit_denominator(b, w);
  };
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, std::log(q), std::log(kPi), 20, 1e-14, &error);
}

}  // namespace

double kink_slope(double b, double u) noexcept {
  const double s = std::sin(0.5 * u);
  const double y = 2.0 * b * b * s * s;
  return 2.0 * std::sqrt(2.0) * b * s / std::sqrt(std::sqrt(1.0 + y) + 1.0);
}

double kink_implicit_integral(double b, double u) {
  if (!(b > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "kink requires b > 0");
  }
  if (!(u > 0.0 && u < kTwoPi)) {
    throw Error(ErrorCode::InvalidParam, "kink integral defined for u in (0, 2 pi)");
  }
  if (u <= kPi) {
    return -integral_to_pi(b, u);
  }
  // The integrand is symmetric about pi.
  return integral_to_pi(b, kTwoPi - u);
}

KinkProfile::KinkProfile(double b, std::vector<double> xi, std::vector<double> u)
    : b_(b), xi_(std::move(xi)), u_(std::move(u)) {
  if (xi_.size() != u_.size() || xi_.size() < 2) {
    throw Error(ErrorCode::InvalidParam, "kink profile needs matching xi/u samples");
  }
}

double KinkProfile::operator()(double xi) const {
  if (xi <= xi_.front()) {
    return u_.front();
  }
  if (xi >= xi_.back()) {
    return u_.back();
  }
  const double h = (xi_.back() - xi_.front()) / static_cast<double>(xi_.size() - 1);
  auto k = static_cast<std::size_t>((xi - xi_.front()) / h);
  k = std::min(k, xi_.size() - 2);
  const double x0 = xi_[k];
  const double x1 = xi_[k + 1];
  const double span = x1 - x0;
  const double s = (xi - x0) / span;
  const double u0 = u_[k];
  const double u1 = u_[k + 1];
  const double m0 = kink_slope(b_, u0) * span;
  const double m1 = kink_slope(b_, u1) * span;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2.0 * s3 - 3.0 * s2 + 1.0) * u0 + (s3 - 2.0 * s2 + s) * m0 +
         (-2.0 * s3 + 3.0 * s2) * u1 + (s3 - s2) * m1;
}

KinkProfile kink_profile(double b, double xi_max, std::size_t n_points, const KinkOptions& options) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidParam, "kink requires b > 0");
  }
  if (!(xi_max > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "kink requires xi_max > 0");
  }
  if (!(options.tol > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "kink requires tol > 0");
  }
  if (n_points < 3 || n_points % 2 == 0) {
    throw Error(ErrorCode::InvalidParam, "kink n_points must be odd and >= 3 so that xi = 0 is a sample");
  }

  const std::size_t half = n_points / 2;
  const double h = xi_max / static_cast<double>(half);
  std::vector<double> xi(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    xi[i] = (static_cast<double>(i) - static_cast<double>(half)) * h;
  }
  xi[half] = 0.0;

  std::vector<double> distance(half);
  for (std::size_t k = 0; k < half; ++k) {
    distance[k] = h * static_cast<double>(k + 1);
  }

  OdeOptions ode;
  ode.rtol = options.tol;
  ode.atol = 0.0;
  ode.h_init = std::min(0.01, h);
  ode.h_max = 0.5;

  // Left branch: q(s) = u(-s) falls from pi toward 0.
  const auto left = integrate_dopri5([b](double, double q) { return -kink_slope(b, q); }, 0.0, kPi,
                                     distance, ode);
  // Right branch in the distance to the upper vacuum, y = 2 pi - u, so that the
  // error control stays relative to how far u is from 2 pi. The slope is even
  // about pi, slope(2 pi - y) = slope(y); evaluating it at y keeps it exact once
  // y drops below the spacing of doubles near 2 pi.
  const auto right = integrate_dopri5([b](double, double y) { return -kink_slope(b, y); }, 0.0, kPi,
                                      distance, ode);

  std::vector<double> u(n_points);
  u[half] = kPi;
  for (std::size_t k = 0; k < half; ++k) {
    u[half - 1 - k] = left[k];
    u[half + 1 + k] = kTwoPi - right[k];
  }

  // Quadrature cross-check at probe samples. Near a vacuum the integral grows
  // like log(distance) / b, so rounding u to a double alone moves it by
  // ulp(u) / (du/dxi / 2); samples where that exceeds tol cannot be checked.
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < n_points; ++i) {
    const double ulp = std::nextafter(u[i], kTwoPi) - u[i];
    const double slope = kink_slope(b, u[i]);
    if (slope > 0.0 && 2.0 * ulp / slope <= options.tol && u[i] < kTwoPi) {
      eligible.push_back(i);
    }
  }
  const std::size_t probes = std::min(options.probes, eligible.size());
  for (std::size_t p = 0; p < probes; ++p) {
    const std::size_t idx =
        probes == 1 ? eligible.front() : eligible[p * (eligible.size() - 1) / (probes - 1)];
    const double lhs = kink_implicit_integral(b, u[idx]);
    if (std::abs(lhs - 2.0 * xi[idx]) > 10.0 * options.tol) {
      throw Error(ErrorCode::ToleranceNotMet,
                  "kink quadrature cross-check failed at xi = " + std::to_string(xi[idx]));
    }
  }
  return KinkProfile(b, std::move(xi), std::move(u));
}

double kink_length_scale(double b, double v) {
  if (!(b > 0.0) || !(std::abs(v) < 1.0)) {
    throw Error(ErrorCode::InvalidParam, "kink requires b > 0 and |v| < 1");
  }
  return b * std::sqrt(1.0 - v * v);
}

double traveling_kink(const KinkProfile& profile, double v, double x, double t) {
  return profile((x - v * t) / kink_length_scale(profile.b(), v));
}

FieldState kink_initial_state(double b, double v, const Grid1D& grid, double dt) {
  const double length = kink_length_scale(b, v);
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "dt must be positive");
  }
  const double reach = std::max(std::abs(grid.x_min()), std::abs(grid.x_max())) + std::abs(v) * dt;
  const double xi_max = reach / length + 1.0;
  auto n = static_cast<std::size_t>(std::ceil(xi_max / 0.01));
  const KinkProfile profile = kink_profile(b, xi_max, 2 * n + 1);

  const double left = traveling_kink(profile, v, grid.x_min(), 0.0);
  const double right = traveling_kink(profile, v, grid.x_max(), 0.0);
  if (!(left < 1e-6) || !(std::abs(right - 2.0 * kPi) < 1e-6)) {
    throw Error(ErrorCode::GridTooSmall,
                "kink does not reach its asymptotes within the grid (u(x_min) = " + std::to_string(left) +
                    ", 2 pi - u(x_max) = " + std::to_string(2.0 * kPi - right) + ")");
  }

  FieldState state;
  state.dt = dt;
  state.t = dt;
  state.u_prev.resize(grid.nx());
  state.u_curr.resize(grid.nx());
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    state.u_prev[i] = traveling_kink(profile, v, grid.x(i), 0.0);
    state.u_curr[i] = traveling_kink(profile, v, grid.x(i), dt);
  }
  return state;
}

}  // namespace kgb
