#include "kgb/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgb/error.hpp"

namespace kgb {

BreatherParams::BreatherParams(double omega, double v) : omega_(omega), v_(v) {
  if (!(omega > 0.0 && omega < 1.0)) {
    throw Error(ErrorCode::InvalidParam, "breather omega must lie in (0, 1), got " + std::to_string(omega));
  }
  if (!(std::abs(v) < 1.0)) {
    throw Error(ErrorCode::InvalidParam, "breather velocity must satisfy |v| < 1, got " + std::to_string(v));
  }
  gamma_ = 1.0 / std::sqrt(1.0 - v * v);
  detuning_ = std::sqrt(1.0 - omega * omega);
  // sqrt(gamma^2 - 1) = |v| gamma; keep the sign of v so that v < 0 moves left.
  boost_ = v * gamma_;
}

CoMovingCoord::CoMovingCoord(double x, double t, const BreatherParams& p)
    : zeta_(p.gamma() * x * p.detuning() - t * p.detuning() * p.boost()) {}

double carrier_phase(double x, double t, const BreatherParams& p) noexcept {
  return p.gamma() * p.omega() * t - p.omega() * x * p.boost();
}

double sg_traveling_breather(double x, double t, const BreatherParams& p) {
  const double zeta = CoMovingCoord(x, t, p).zeta();
  const double ratio = p.detuning() / p.omega();
  return 4.0 * std::atan(ratio * std::cos(carrier_phase(x, t, p)) / std::cosh(zeta));
}

double sg_standing_breather(double x, double t, double omega) {
  if (!(omega > 0.0 && omega < 1.0)) {
    throw Error(ErrorCode::InvalidParam, "breather omega must lie in (0, 1)");
  }
  const double detuning = std::sqrt(1.0 - omega * omega);
  return 4.0 * std::atan(detuning / omega * std::sin(omega * t) / std::cosh(x * detuning));
}

double amplitude_A(double zeta, double omega, double beta) {
  if (!(omega > 0.0 && omega < 1.0)) {
    throw Error(ErrorCode::InvalidParam, "amplitude_A requires omega in (0, 1)");
  }
  if (!(beta > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "amplitude_A requires beta > 0");
  }
  return std::sqrt(8.0 * (1.0 - omega * omega) / (3.0 * beta)) / std::cosh(zeta);
}

double small_amplitude_breather(double x, double t, const BreatherParams& p, double beta) {
  const double zeta = CoMovingCoord(x, t, p).zeta();
  return amplitude_A(zeta, p.omega(), beta) * std::cos(carrier_phase(x, t, p));
}

double gsl_breather_dimensional(double x_phys, double t_phys, const BreatherParams& p,
                                const PhysicalScales& scales) {
  const SpaceTime r = rescale_to_dimensionless({x_phys, t_phys}, scales);
  const double beta = beta_for(NonlinearityModel::graphene_sl(scales.b));
  return small_amplitude_breather(r.x, r.t, p, beta);
}

std::vector<double> default_zeta_grid(double half_width, std::size_t n) {
  if (n < 5 || !(half_width > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "zeta grid needs n >= 5 and a positive half width");
  }
  std::vector<double> grid(n);
  const double h = 2.0 * half_width / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = -half_width + h * static_cast<double>(i);
  }
  grid.back() = half_width;
  return grid;
}

HarmonicProfiles solve_B_correction(double omega, double beta, std::span<const double> zeta_grid) {
  if (!(omega > 0.0 && omega < 1.0) || !(beta > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "solve_B_correction requires omega in (0, 1) and beta > 0");
  }
  const std::size_t n = zeta_grid.size();
  if (n < 5) {
    throw Error(ErrorCode::InvalidParam, "zeta grid needs at least 5 points");
  }
  const double h = (zeta_grid.back() - zeta_grid.front()) / static_cast<double>(n - 1);
  if (!(h > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "zeta grid must be increasing");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((zeta_grid[i] - zeta_grid[i - 1]) - h) > 1e-9 * h) {
      throw Error(ErrorCode::InvalidParam, "zeta grid must be uniform");
    }
  }
  const double edge = std::min(std::abs(zeta_grid.front()), std::abs(zeta_grid.back()));
  if (1.0 / std::cosh(edge) > 1e-6) {
    throw Error(ErrorCode::GridTooNarrow, "sech at the zeta grid end exceeds 1e-6; widen the grid");
  }

  HarmonicProfiles out;
  out.zeta.assign(zeta_grid.begin(), zeta_grid.end());
  out.A.resize(n);
  out.B.assign(n, 0.0);

  std::vector<double> rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.A[i] = amplitude_A(zeta_grid[i], omega, beta);
    rhs[i] = -0.25 * beta * out.A[i] * out.A[i] * out.A[i];
    out.forcing_max = std::max(out.forcing_max, std::abs(rhs[i]));
  }

  // Interior unknowns 1..n-2; B_0 = B_{n-1} = 0.
  const double d2 = 1.0 - omega * omega;
  const double off = d2 / (h * h);
  const double diag = -2.0 * off + (9.0 * omega * omega - 1.0);
  const std::size_t m = n - 2;

  // Thomas algorithm with a pivot check for the resonant case.
  std::vector<double> c_prime(m, 0.0);
  std::vector<double> d_prime(m, 0.0);
  const double scale = std::abs(diag) + 2.0 * std::abs(off);
  double pivot = diag;
  if (std::abs(pivot) < 1e-12 * scale) {
    throw Error(ErrorCode::SingularSystem, "B-correction operator is singular on this grid");
  }
  c_prime[0] = off / pivot;
  d_prime[0] = rhs[1] / pivot;
  for (std::size_t k = 1; k < m; ++k) {
    pivot = diag - off * c_prime[k - 1];
    if (std::abs(pivot) < 1e-12 * scale) {
      throw Error(ErrorCode::SingularSystem, "B-correction operator is singular on this grid");
    }
    c_prime[k] = off / pivot;
    d_prime[k] = (rhs[k + 1] - off * d_prime[k - 1]) / pivot;
  }
  for (std::size_t k = m - 1; k-- > 0;) {
    d_prime[k] -= c_prime[k] * d_prime[k + 1];
  }
  for (std::size_t k = 0; k < m; ++k) {
    out.B[k + 1] = d_prime[k];
  }

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double lhs = off * (out.B[i + 1] - 2.0 * out.B[i] + out.B[i - 1]) +
                       (9.0 * omega * omega - 1.0) * out.B[i];
    out.residual_max = std::max(out.residual_max, std::abs(lhs - rhs[i]));
  }
  if (!std::isfinite(out.residual_max)) {
    throw Error(ErrorCode::SingularSystem, "B-correction solve produced non-finite values");
  }
  return out;
}

}  // namespace kgb
