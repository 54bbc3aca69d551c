#ifndef KGB_ANALYSIS_HPP
#define KGB_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kgb/field.hpp"
#include "kgb/solver.hpp"

namespace kgb {

struct Extremum {
  double x = 0.0;
  double amplitude = 0.0;
};

struct ExtremaSet {
  double t = 0.0;
  std::vector<Extremum> points;  // strictly increasing x
};

// Local maxima of |u| above epsilon, refined by a parabola through the three
// neighbouring samples. End samples are never reported.
//   NoExtremaFound  nothing exceeds epsilon
ExtremaSet find_extrema(std::span<const double> u, const Grid1D& grid, double epsilon, double t = 0.0);

// Monotone piecewise-cubic (PCHIP) interpolant through extrema magnitudes.
class EnvelopeModel {
 public:
  //   TooFewExtrema  fewer than 4 knots
  explicit EnvelopeModel(const ExtremaSet& extrema);

  // Clamped to [x_lo, x_hi] and to non-negative values.
  double operator()(double x) const;

  double x_lo() const noexcept { return knots_.front().x; }
  double x_hi() const noexcept { return knots_.back().x; }
  double t() const noexcept { return t_; }
  const std::vector<Extremum>& knots() const noexcept { return knots_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  std::vector<Extremum> knots_;
  double t_ = 0.0;
};

EnvelopeModel envelope(const ExtremaSet& extrema);

// Argmax of the envelope: largest knot, then Brent (golden section with
// parabolic steps) over the two adjacent knot intervals, to 1e-3 in x.
double locate_max(const EnvelopeModel& env);

// Pearson correlation with sample standard deviations (N - 1 normalisation).
//   DegenerateVariance  either vector is constant
double correlation_coefficient(std::span<const double> a, std::span<const double> b);

struct CorrelationRecord {
  double t = 0.0;
  double x_max = 0.0;
  double k_corr = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double half_width = 0.0;
};

// Uniform draws on [x_max - L, x_max + L] from a generator seeded by (seed, t),
// so a record depends only on its own inputs.
std::vector<double> sample_window(double x_max, double half_width, std::size_t n, std::uint64_t seed, double t);

// Linear interpolation of grid samples at x (x inside the grid).
double interpolate_linear(std::span<const double> u, const Grid1D& grid, double x);

// a_i = analytic(x_i), b_i = numeric interpolated at x_i, K = Pearson(a, b).
//   WindowOutsideGrid   window leaves the grid
//   InvalidParam        n < 2 or L <= 0
//   DegenerateVariance  a or b constant
CorrelationRecord correlation(std::span<const double> numeric, const Grid1D& grid,
                              const std::function<double(double)>& analytic, double x_max,
                              double half_width, std::size_t n, std::uint64_t seed, double t = 0.0);

struct AnalysisOptions {
  // Extrema threshold; unset means 1% of max|u| in the first snapshot.
  std::optional<double> epsilon;
  double half_width = 10.0;
  std::size_t samples = 200;
  std::uint64_t seed = 42;
  // Use every cadence-th snapshot.
  std::size_t cadence = 1;
};

struct SnapshotAnalysis {
  double t = 0.0;
  ExtremaSet extrema;
  std::optional<EnvelopeModel> envelope;
  std::optional<CorrelationRecord> record;
  // Why record is missing, empty otherwise.
  std::string gap;
};

// One entry per analysed snapshot. Failures (pulse gone, window off-grid,
// degenerate samples) become gap entries instead of errors.
std::vector<SnapshotAnalysis> correlation_timeseries(std::span<const Snapshot> snapshots, const Grid1D& grid,
                                                     const SpaceTimeFunction& analytic,
                                                     const AnalysisOptions& options);

// Least-squares slope of k_corr against t over the non-gap entries.
double correlation_trend(std::span<const SnapshotAnalysis> series);

}  // namespace kgb

#endif  // KGB_ANALYSIS_HPP
