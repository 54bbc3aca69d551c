#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "doctest.h"
#include "kgb/kink.hpp"
#include "support.hpp"

using namespace kgb;
using kgb::testing::error_of;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Integral from pi to u of dw / sqrt(sqrt(1 + b^2 (1 - cos w)) - 1), by tanh-sinh.
double reference_integral(double b, double u) {
  auto integrand = [b](double w) {
    const double s = std::sin(0.5 * w);
    const double y = 2.0 * b * b * s * s;
    return 1.0 / std::sqrt(y / (std::sqrt(1.0 + y) + 1.0));
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  // integrand is even about pi; integrate from the near vacuum side so w stays exact
  if (u < std::numbers::pi) return -ts.integrate(integrand, u, std::numbers::pi, 1e-14);
  return ts.integrate(integrand, two_pi - u, std::numbers::pi, 1e-14);
}

// Rounding u to a double shifts the integral by ulp(u) times its derivative.
bool resolvable(double b, double u, double tol) {
  return 2.0 * (std::nextafter(u, 10.0) - u) / kink_slope(b, u) <= tol;
}

double width(const KinkProfile& p) {
  const auto& xi = p.xi();
  const auto& u = p.u();
  const auto lo = std::find_if(u.begin(), u.end(), [](double v) { return v >= 0.1; }) - u.begin();
  const auto hi = std::find_if(u.begin(), u.end(), [](double v) { return v >= two_pi - 0.1; }) - u.begin();
  return xi[hi] - xi[lo];
}

}  // namespace

TEST_CASE("kink is anchored at pi and point symmetric") {
  for (double b : {0.3, 0.9, 2.0}) {
    const auto p = kink_profile(b, 20.0, 4001);
    const std::size_t mid = p.xi().size() / 2;
    CHECK(p.xi()[mid] == 0.0);
    CHECK(p.u()[mid] == std::numbers::pi);
    CHECK(p(0.0) == std::numbers::pi);
    for (std::size_t i = 0; i < p.xi().size(); ++i) {
      CHECK(std::abs(p.u()[i] + p.u()[p.xi().size() - 1 - i] - two_pi) < 1e-9);
    }
  }
}

TEST_CASE("kink slope at the centre") {
  CHECK(kink_slope(0.9, std::numbers::pi) == doctest::Approx(2 * std::sqrt(std::sqrt(2.62) - 1)).epsilon(1e-14));
  CHECK(kink_slope(0.9, std::numbers::pi) == doctest::Approx(1.573075).epsilon(1e-6));
  const auto p = kink_profile(0.9, 10.0, 2001);
  const double h = 1e-4;
  CHECK((p(h) - p(-h)) / (2 * h) == doctest::Approx(1.573075).epsilon(1e-6));
}

TEST_CASE("kink agrees with the implicit integral") {
  for (double b : {0.5, 0.9, 1.5}) {
    const auto p = kink_profile(b, 20.0, 4001);
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < p.xi().size(); ++i) {
      if (resolvable(b, p.u()[i], 1e-10)) usable.push_back(i);
    }
    REQUIRE(usable.size() > 100);
    for (std::size_t k = 0; k < 32; ++k) {
      const std::size_t i = usable[k * (usable.size() - 1) / 31];
      const double u = p.u()[i];
      CHECK(std::abs(reference_integral(b, u) - 2 * p.xi()[i]) < 1e-9);
      CHECK(std::abs(kink_implicit_integral(b, u) - reference_integral(b, u)) < 1e-10);
    }
  }
}

TEST_CASE("kink is increasing and approaches the vacua exponentially") {
  const double b = 0.9;
  const auto p = kink_profile(b, 20.0, 4001);
  for (std::size_t i = 1; i < p.u().size(); ++i) CHECK(p.u()[i] > p.u()[i - 1]);
  CHECK(p.u().front() < 1e-6);
  CHECK(two_pi - p.u().back() < 1e-6);

  // near u = 0 the slope is b u, so 2 pi - u ~ C exp(-b xi)
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < p.xi().size(); ++i) {
    if (p.xi()[i] >= 6.0 && p.xi()[i] <= 14.0) {
      xs.push_back(p.xi()[i]);
      ys.push_back(std::log(two_pi - p.u()[i]));
    }
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i] / n, my += ys[i] / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  CHECK(sxy * sxy / (sxx * syy) > 0.999);
  CHECK(sxy / sxx == doctest::Approx(-b).epsilon(0.01));
}

TEST_CASE("kink narrows as b grows") {
  const double w1 = width(kink_profile(0.5, 40.0, 8001));
  const double w2 = width(kink_profile(0.9, 40.0, 8001));
  const double w3 = width(kink_profile(1.5, 40.0, 8001));
  CHECK(w1 > w2);
  CHECK(w2 > w3);
}

TEST_CASE("kink profile rejects bad input") {
  CHECK(error_of([] { kink_profile(0.0, 10.0, 101); }) == ErrorCode::InvalidParam);
  CHECK(error_of([] { kink_profile(0.9, -1.0, 101); }) == ErrorCode::InvalidParam);
  CHECK(error_of([] { kink_profile(0.9, 10.0, 100); }) == ErrorCode::InvalidParam);
  CHECK(error_of([] { kink_profile(0.9, 10.0, 101, KinkOptions{0.0, 32}); }) == ErrorCode::InvalidParam);
}

TEST_CASE("kink initial state") {
  const Grid1D grid(-60.0, 60.0, 2401);
  const auto s = kink_initial_state(0.9, 0.5, grid, 0.025);
  CHECK(s.u_prev.front() < 1e-6);
  CHECK(std::abs(s.u_prev.back() - two_pi) < 1e-6);
  CHECK((s.u_prev.back() - s.u_prev.front()) / two_pi == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s.t == 0.025);
  CHECK(s.u_curr[grid.nearest(0.0)] < s.u_prev[grid.nearest(0.0)]);
  CHECK(s.u_prev[grid.nearest(0.0)] == doctest::Approx(std::numbers::pi).epsilon(1e-12));

  const auto rest = kink_initial_state(0.9, 0.0, grid, 0.025);
  for (std::size_t i = 0; i < grid.nx(); ++i) CHECK(rest.u_prev[i] == rest.u_curr[i]);

  CHECK(kink_length_scale(0.9, 0.6) == doctest::Approx(0.9 * 0.8));
  CHECK(error_of([] { kink_initial_state(0.9, 0.0, Grid1D(-5.0, 5.0, 201), 0.025); }) == ErrorCode::GridTooSmall);
  CHECK(error_of([] { kink_length_scale(0.9, 1.0); }) == ErrorCode::InvalidParam);
}

TEST_CASE("traveling kink moves at v") {
  const auto p = kink_profile(0.9, 30.0, 6001);
  for (double t : {0.0, 3.0, 10.0}) {
    CHECK(traveling_kink(p, 0.6, 0.6 * t, t) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK(traveling_kink(p, 0.6, 0.6 * t + 1.0, t) == doctest::Approx(p(1.0 / (0.9 * 0.8))).epsilon(1e-12));
  }
}
