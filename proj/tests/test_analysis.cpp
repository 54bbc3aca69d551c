#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "doctest.h"
#include "kgb/analysis.hpp"
#include "kgb/analytic.hpp"
#include "support.hpp"

using namespace kgb;
using kgb::testing::error_of;

namespace {

std::vector<double> sample(const Grid1D& g, double (*f)(double)) {
  std::vector<double> u(g.nx());
  for (std::size_t i = 0; i < g.nx(); ++i) u[i] = f(g.x(i));
  return u;
}

double pulse10(double x) { return std::cos(10 * x) / std::cosh(x); }
double pulse30(double x) { return std::cos(30 * x) / std::cosh(x); }
double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

TEST_CASE("extrema of a modulated pulse") {
  const Grid1D g(-10.0, 10.0, 20001);
  const auto e = find_extrema(sample(g, pulse10), g, 0.01, 1.5);
  CHECK(e.t == 1.5);
  REQUIRE(e.points.size() > 20);
  for (std::size_t i = 1; i < e.points.size(); ++i) CHECK(e.points[i].x > e.points[i - 1].x);
  for (const auto& p : e.points) {
    CHECK(p.amplitude > 0.01);
    // true local maximum of the continuous |u|
    const auto r = boost::math::tools::brent_find_minima([](double x) { return -std::abs(pulse10(x)); },
                                                         p.x - 0.1, p.x + 0.1, 40);
    CHECK(std::abs(p.x - r.first) < 1e-4);
    CHECK(std::abs(p.amplitude + r.second) < 1e-6);
    // the local maximum sits above sech by sech tanh^2 / 200 at most
    CHECK(std::abs(p.amplitude - sech(p.x)) < 1.93e-3);
  }
  // a faster carrier tracks the envelope nine times more closely
  const auto fast = find_extrema(sample(g, pulse30), g, 0.01);
  for (const auto& p : fast.points) CHECK(std::abs(p.amplitude - sech(p.x)) < 1e-3);
}

TEST_CASE("extrema edge cases") {
  const Grid1D g(0.0, 1.0, 101);
  std::vector<double> u(g.nx(), 0.0);
  CHECK(error_of([&] { find_extrema(u, g, 0.01); }) == ErrorCode::NoExtremaFound);
  u[40] = 0.5;
  const auto e = find_extrema(u, g, 0.01);
  REQUIRE(e.points.size() == 1);
  CHECK(e.points[0].x == doctest::Approx(g.x(40)));
  CHECK(e.points[0].amplitude == doctest::Approx(0.5));
  CHECK(error_of([&] { find_extrema(u, g, 0.0); }) == ErrorCode::InvalidParam);
  u[40] = -0.5;
  CHECK(find_extrema(u, g, 0.01).points.size() == 1);
}

TEST_CASE("envelope through the extrema") {
  const Grid1D g(-10.0, 10.0, 20001);
  const auto u = sample(g, pulse10);
  const auto e = find_extrema(u, g, 0.01);
  const auto env = envelope(e);
  for (const auto& k : e.points) CHECK(env(k.x) == k.amplitude);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.nx(); ++i) {
    const double x = g.x(i);
    if (x < env.x_lo() || x > env.x_hi()) continue;
    worst = std::max(worst, std::abs(env(x) - sech(x)));
  }
  CHECK(worst < 1e-2);
  CHECK(env(-100.0) == env(env.x_lo()));
  CHECK(env(100.0) >= 0.0);

  const double spacing = std::numbers::pi / 10;
  CHECK(std::abs(locate_max(env)) < spacing);

  std::size_t inside = 0, covered = 0;
  for (std::size_t i = 0; i < g.nx(); ++i) {
    const double x = g.x(i);
    if (x <= env.x_lo() || x >= env.x_hi()) continue;
    ++inside;
    if (env(x) >= std::abs(u[i]) - 0.02) ++covered;
  }
  CHECK(static_cast<double>(covered) >= 0.95 * static_cast<double>(inside));
}

TEST_CASE("envelope maximum of a shifted pulse") {
  const Grid1D g(0.0, 60.0, 6001);
  std::vector<double> u(g.nx());
  for (std::size_t i = 0; i < g.nx(); ++i) u[i] = std::cos(6 * g.x(i)) / std::cosh(0.4 * (g.x(i) - 31.3));
  const auto env = envelope(find_extrema(u, g, 0.01));
  // crests of |u| are pi / 6 apart; the maximum is resolved to one knot spacing
  CHECK(std::abs(locate_max(env) - 31.3) < std::numbers::pi / 6);
}

TEST_CASE("envelope needs four knots") {
  ExtremaSet e;
  e.points = {{0.0, 1.0}, {1.0, 2.0}, {2.0, 1.0}};
  CHECK(error_of([&] { envelope(e); }) == ErrorCode::TooFewExtrema);
}

TEST_CASE("correlation coefficient") {
  const std::vector<double> a{0.3, -1.2, 2.2, 0.7, 1.9, -0.4};
  std::vector<double> neg(a.size()), affine(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    neg[i] = -a[i];
    affine[i] = 3.7 * a[i] - 12.5;
  }
  const std::vector<double> b{1.0, -0.5, 2.0, 0.1, 1.2, 0.3};
  CHECK(correlation_coefficient(a, a) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(correlation_coefficient(a, neg) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(correlation_coefficient(affine, b) - correlation_coefficient(a, b)) < 1e-12);

  // direct evaluation of the definition with sample standard deviations
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) ma += a[i] / n, mb += b[i] / n;
  double cov = 0, va = 0, vb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  const double ref = cov / (std::sqrt(va / (n - 1)) * std::sqrt(vb / (n - 1)) * (n - 1));
  CHECK(correlation_coefficient(a, b) == doctest::Approx(ref).epsilon(1e-14));

  const std::vector<double> flat(6, 2.5);
  CHECK(error_of([&] { correlation_coefficient(a, flat); }) == ErrorCode::DegenerateVariance);
  CHECK(error_of([&] { correlation_coefficient(std::vector<double>{1.0}, std::vector<double>{1.0}); }) ==
        ErrorCode::InvalidParam);
}

TEST_CASE("window sampling") {
  const auto xs = sample_window(50.0, 10.0, 1000, 42, 12.5);
  for (double x : xs) {
    CHECK(x >= 40.0);
    CHECK(x <= 60.0);
  }
  CHECK(xs == sample_window(50.0, 10.0, 1000, 42, 12.5));
  CHECK(xs != sample_window(50.0, 10.0, 1000, 43, 12.5));
  CHECK(xs != sample_window(50.0, 10.0, 1000, 42, 12.75));
  double mean = 0.0;
  for (double x : xs) mean += x / 1000.0;
  CHECK(mean == doctest::Approx(50.0).epsilon(0.01));
}

TEST_CASE("windowed correlation against an analytic profile") {
  const Grid1D g(-20.0, 20.0, 4001);
  const auto u = sample(g, pulse10);
  auto f = [](double x) { return pulse10(x); };
  const auto rec = correlation(u, g, f, 0.0, 10.0, 200, 7, 0.0);
  CHECK(rec.n == 200);
  CHECK(rec.seed == 7);
  CHECK(rec.half_width == 10.0);
  CHECK(rec.k_corr > 0.999);
  CHECK(rec.k_corr <= 1.0);
  const auto again = correlation(u, g, f, 0.0, 10.0, 200, 7, 0.0);
  CHECK(again.k_corr == rec.k_corr);
  const auto flipped = correlation(u, g, [](double x) { return -5.0 * pulse10(x) + 1.0; }, 0.0, 10.0, 200, 7, 0.0);
  CHECK(flipped.k_corr == doctest::Approx(-rec.k_corr).epsilon(1e-12));
  CHECK(error_of([&] { correlation(u, g, f, 15.0, 10.0, 200, 7); }) == ErrorCode::WindowOutsideGrid);
  CHECK(error_of([&] { correlation(u, g, f, 0.0, 10.0, 1, 7); }) == ErrorCode::InvalidParam);
  CHECK(error_of([&] { correlation(u, g, [](double) { return 1.0; }, 0.0, 10.0, 50, 7); }) ==
        ErrorCode::DegenerateVariance);
}

TEST_CASE("correlation series of an analytic breather against itself") {
  const BreatherParams p(0.97, 0.9);
  auto exact = [&](double x, double t) { return small_amplitude_breather(x, t, p, 0.369167); };
  const Grid1D g(-40.0, 80.0, 12001);
  std::vector<Snapshot> snaps;
  for (int k = 0; k <= 8; ++k) {
    Snapshot s{5.0 * k, std::vector<double>(g.nx())};
    for (std::size_t i = 0; i < g.nx(); ++i) s.u[i] = exact(g.x(i), s.t);
    snaps.push_back(std::move(s));
  }
  AnalysisOptions opt;
  const auto series = correlation_timeseries(snaps, g, exact, opt);
  REQUIRE(series.size() == 9);
  // crests of |u| are pi / (2 omega gamma v) apart along x
  const double crest = std::numbers::pi / (2 * p.omega() * p.boost());
  double st = 0, sx = 0, stt = 0, stx = 0;
  for (const auto& e : series) {
    REQUIRE(e.record);
    CHECK(e.record->k_corr == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(std::abs(e.record->x_max - 0.9 * e.t) <= crest);
    st += e.t, sx += e.record->x_max, stt += e.t * e.t, stx += e.t * e.record->x_max;
  }
  const double n = static_cast<double>(series.size());
  CHECK((n * stx - st * sx) / (n * stt - st * st) == doctest::Approx(0.9).epsilon(0.05));

  opt.cadence = 4;
  CHECK(correlation_timeseries(snaps, g, exact, opt).size() == 3);

  // a snapshot with nothing above epsilon becomes a gap, not a failure
  snaps.push_back({45.0, std::vector<double>(g.nx(), 0.0)});
  opt.cadence = 1;
  const auto gapped = correlation_timeseries(snaps, g, exact, opt);
  CHECK(!gapped.back().record);
  CHECK(gapped.back().gap == "NoExtremaFound");
  CHECK(correlation_trend(gapped) == doctest::Approx(0.0).scale(1.0).epsilon(1e-5));
}
