#include "kgb/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

// Boost 1.74's pchip calls isnan unqualified; make ::isnan visible to it.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/minima.hpp>

#include "kgb/error.hpp"

namespace kgb {

ExtremaSet find_extrema(std::span<const double> u, const Grid1D& grid, double epsilon, double t) {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "extrema threshold must be positive");
  }
  if (u.size() != grid.nx()) {
    throw Error(ErrorCode::InvalidParam, "field size does not match the grid");
  }
  ExtremaSet out;
  out.t = t;
  const double dx = grid.dx();
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    const double left = std::abs(u[i - 1]);
    const double mid = std::abs(u[i]);
    const double right = std::abs(u[i + 1]);
    // Strict on the left so a flat top is reported once.
    if (!(mid > epsilon && mid > left && mid >= right)) {
      continue;
    }
    double x = grid.x(i);
    double amp = mid;
    const double curvature = left - 2.0 * mid + right;
    if (curvature < 0.0) {
      const double offset = 0.5 * (left - right) / curvature;
      if (std::abs(offset) <= 0.5) {
        x += offset * dx;
        amp = mid - 0.25 * (left - right) * offset;
      }
    }
    out.points.push_back({x, amp});
  }
  if (out.points.empty()) {
    throw Error(ErrorCode::NoExtremaFound, "no extrema of |u| above " + std::to_string(epsilon) +
                                               " at t = " + std::to_string(t));
  }
  return out;
}

struct EnvelopeModel::Impl {
  boost::math::interpolators::pchip<std::vector<double>> spline;
};

EnvelopeModel::EnvelopeModel(const ExtremaSet& extrema) : knots_(extrema.points), t_(extrema.t) {
  if (knots_.size() < 4) {
    throw Error(ErrorCode::TooFewExtrema,
                "envelope needs at least 4 extrema, got " + std::to_string(knots_.size()));
  }
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(knots_.size());
  ys.reserve(knots_.size());
  for (const auto& k : knots_) {
    xs.push_back(k.x);
    ys.push_back(k.amplitude);
  }
  impl_ = std::make_shared<const Impl>(Impl{{std::move(xs), std::move(ys)}});
}

double EnvelopeModel::operator()(double x) const {
  const double clamped = std::clamp(x, x_lo(), x_hi());
  return std::max(0.0, impl_->spline(clamped));
}

EnvelopeModel envelope(const ExtremaSet& extrema) { return EnvelopeModel(extrema); }

double locate_max(const EnvelopeModel& env) {
  const auto& knots = env.knots();
  std::size_t best = 0;
  for (std::size_t k = 1; k < knots.size(); ++k) {
    if (knots[k].amplitude > knots[best].amplitude) {
      best = k;
    }
  }
  const double lo = knots[best == 0 ? 0 : best - 1].x;
  const double hi = knots[std::min(best + 1, knots.size() - 1)].x;
  // 1e-3 absolute in x over brackets of a few units: ~12 bits is plenty,
  // use 20 to stay well inside the tolerance.
  const auto [x, neg] =
      boost::math::tools::brent_find_minima([&env](double s) { return -env(s); }, lo, hi, 20);
  // Brent can stop inside a flat stretch below the best knot; keep the knot if so.
  if (-neg < knots[best].amplitude) {
    return knots[best].x;
  }
  return x;
}

double correlation_coefficient(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw Error(ErrorCode::InvalidParam, "correlation needs two vectors of equal length >= 2");
  }
  const auto n = static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  double max_a = 0.0;
  double max_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
    max_a = std::max(max_a, std::abs(a[i]));
    max_b = std::max(max_b, std::abs(b[i]));
  }
  mean_a /= n;
  mean_b /= n;
  double saa = 0.0;
  double sbb = 0.0;
  double sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  const double sigma_a = std::sqrt(saa / (n - 1.0));
  const double sigma_b = std::sqrt(sbb / (n - 1.0));
  if (!(sigma_a >= 1e-12 * max_a) || !(sigma_b >= 1e-12 * max_b) || sigma_a == 0.0 || sigma_b == 0.0) {
    throw Error(ErrorCode::DegenerateVariance, "sample vector is constant");
  }
  const double k = sab / (sigma_a * sigma_b * (n - 1.0));
  return std::clamp(k, -1.0, 1.0);
}

std::vector<double> sample_window(double x_max, double half_width, std::size_t n, std::uint64_t seed,
                                  double t) {
  const auto t_bits = std::bit_cast<std::uint64_t>(t);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t_bits), static_cast<std::uint32_t>(t_bits >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<double> xs(n);
  const double lo = x_max - half_width;
  for (auto& x : xs) {
    // 53 random bits -> [0, 1); spelled out so results do not depend on the
    // standard library's distribution implementation.
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    x = std::min(lo + 2.0 * half_width * unit, x_max + half_width);
  }
  return xs;
}

double interpolate_linear(std::span<const double> u, const Grid1D& grid, double x) {
  const double pos = (x - grid.x_min()) / grid.dx();
  if (pos <= 0.0) {
    return u.front();
  }
  auto i = static_cast<std::size_t>(pos);
  if (i >= grid.nx() - 1) {
    return u.back();
  }
  const double frac = pos - static_cast<double>(i);
  return u[i] + frac * (u[i + 1] - u[i]);
}

CorrelationRecord correlation(std::span<const double> numeric, const Grid1D& grid,
                              const std::function<double(double)>& analytic, double x_max,
                              double half_width, std::size_t n, std::uint64_t seed, double t) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidParam, "correlation needs N >= 2");
  }
  if (!(half_width > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "window half width must be positive");
  }
  if (numeric.size() != grid.nx()) {
    throw Error(ErrorCode::InvalidParam, "field size does not match the grid");
  }
  if (x_max - half_width < grid.x_min() || x_max + half_width > grid.x_max()) {
    throw Error(ErrorCode::WindowOutsideGrid, "window [" + std::to_string(x_max - half_width) + ", " +
                                                  std::to_string(x_max + half_width) + "] leaves the grid");
  }
  const auto xs = sample_window(x_max, half_width, n, seed, t);
  std::vector<double> a(n);
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = analytic(xs[i]);
    b[i] = interpolate_linear(numeric, grid, xs[i]);
  }
  return {t, x_max, correlation_coefficient(a, b), n, seed, half_width};
}

std::vector<SnapshotAnalysis> correlation_timeseries(std::span<const Snapshot> snapshots, const Grid1D& grid,
                                                     const SpaceTimeFunction& analytic,
                                                     const AnalysisOptions& options) {
  std::vector<SnapshotAnalysis> out;
  if (snapshots.empty()) {
    return out;
  }
  if (options.cadence < 1) {
    throw Error(ErrorCode::InvalidParam, "analysis cadence must be at least 1");
  }
  double epsilon = 0.0;
  if (options.epsilon) {
    epsilon = *options.epsilon;
  } else {
    for (double v : snapshots.front().u) {
      epsilon = std::max(epsilon, std::abs(v));
    }
    epsilon *= 0.01;
  }

  for (std::size_t s = 0; s < snapshots.size(); s += options.cadence) {
    const Snapshot& snap = snapshots[s];
    SnapshotAnalysis entry;
    entry.t = snap.t;
    try {
      entry.extrema = find_extrema(snap.u, grid, epsilon, snap.t);
      entry.envelope.emplace(entry.extrema);
      const double x_max = locate_max(*entry.envelope);
      const double t = snap.t;
      entry.record = correlation(
          snap.u, grid, [&analytic, t](double x) { return analytic(x, t); }, x_max, options.half_width,
          options.samples, options.seed, t);
    } catch (const Error& e) {
      entry.gap = std::string(to_string(e.code()));
    }
    out.push_back(std::move(entry));
  }
  return out;
}

double correlation_trend(std::span<const SnapshotAnalysis> series) {
  double st = 0.0;
  double sk = 0.0;
  double n = 0.0;
  for (const auto& e : series) {
    if (e.record) {
      st += e.t;
      sk += e.record->k_corr;
      n += 1.0;
    }
  }
  if (n < 2.0) {
    throw Error(ErrorCode::InvalidParam, "trend needs at least two correlation records");
  }
  const double mt = st / n;
  const double mk = sk / n;
  double num = 0.0;
  double den = 0.0;
  for (const auto& e : series) {
    if (e.record) {
      num += (e.t - mt) * (e.record->k_corr - mk);
      den += (e.t - mt) * (e.t - mt);
    }
  }
  return num / den;
}

}  // namespace kgb
