#ifndef KGB_KINK_HPP
#define KGB_KINK_HPP

#include <cstddef>
#include <vector>

#include "kgb/field.hpp"

namespace kgb {

// 2 pi-pulse of the graphene superlattice equation on a uniform xi grid,
// xi = (x - v t) / L0. Samples run from -xi_max to xi_max with u(0) = pi.
class KinkProfile {
 public:
  KinkProfile(double b, std::vector<double> xi, std::vector<double> u);

  double b() const noexcept { return b_; }
  const std::vector<double>& xi() const noexcept { return xi_; }
  const std::vector<double>& u() const noexcept { return u_; }

  // Cubic Hermite interpolation between samples using exact slopes from the
  // ODE; beyond the sampled range the value is held at the end sample.
  double operator()(double xi) const;

 private:
  double b_;
  std::vector<double> xi_;
  std::vector<double> u_;
};

// du/dxi = 2 sqrt(sqrt(1 + b^2 (1 - cos u)) - 1), written so that it stays
// accurate (and changes sign) near the vacua 0 and 2 pi.
double kink_slope(double b, double u) noexcept;

// Integral from pi to u of dw / sqrt(sqrt(1 + b^2 (1 - cos w)) - 1). For the
// exact kink this equals 2 xi(u). Evaluated by adaptive Gauss-Kronrod in a
// logarithmic variable so the endpoint growth near the vacua is harmless.
double kink_implicit_integral(double b, double u);

struct KinkOptions {
  double tol = 1e-10;
  std::size_t probes = 32;
};

// Integrates the ODE outward from xi = 0 in both directions with adaptive
// Dormand-Prince at relative tolerance tol, then verifies the implicit
// integral relation at `probes` sample points within 10 tol.
//   InvalidParam     b <= 0, xi_max <= 0, tol <= 0, n_points < 3 or even
//   ToleranceNotMet  the quadrature cross-check fails
KinkProfile kink_profile(double b, double xi_max, std::size_t n_points, const KinkOptions& options = {});

// Kink width scale L0 in rescaled units: b sqrt(1 - v^2).
double kink_length_scale(double b, double v);

// Samples the traveling kink u((x - v t) / L0) at t = 0 and t = dt.
//   GridTooSmall  u is not within 1e-6 of its asymptotes at the grid ends
FieldState kink_initial_state(double b, double v, const Grid1D& grid, double dt);

// u((x - v t) / L0) for a kink evaluated through an existing profile.
double traveling_kink(const KinkProfile& profile, double v, double x, double t);

}  // namespace kgb

#endif  // KGB_KINK_HPP
