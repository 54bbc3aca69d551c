#ifndef KGB_ANALYTIC_HPP
#define KGB_ANALYTIC_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "kgb/models.hpp"

namespace kgb {

// Internal frequency omega in (0, 1) and envelope velocity v, |v| < 1 (units of c).
class BreatherParams {
 public:
  BreatherParams(double omega, double v);

  double omega() const noexcept { return omega_; }
  double v() const noexcept { return v_; }
  double gamma() const noexcept { return gamma_; }

  // sqrt(1 - omega^2)
  double detuning() const noexcept { return detuning_; }
  // sqrt(gamma^2 - 1), equal to gamma * v
  double boost() const noexcept { return boost_; }

 private:
  double omega_;
  double v_;
  double gamma_;
  double detuning_;
  double boost_;
};

// zeta = gamma x sqrt(1 - omega^2) - t sqrt(1 - omega^2) sqrt(gamma^2 - 1)
class CoMovingCoord {
 public:
  CoMovingCoord(double x, double t, const BreatherParams& p);
  double zeta() const noexcept { return zeta_; }

 private:
  double zeta_;
};

// Carrier phase gamma omega t - omega x sqrt(gamma^2 - 1).
double carrier_phase(double x, double t, const BreatherParams& p) noexcept;

// Exact traveling breather of the sine-Gordon equation.
double sg_traveling_breather(double x, double t, const BreatherParams& p);

// Exact standing breather of the sine-Gordon equation, zero at t = 0.
double sg_standing_breather(double x, double t, double omega);

// First-harmonic amplitude sqrt(8 (1 - omega^2) / (3 beta)) sech(zeta).
double amplitude_A(double zeta, double omega, double beta);

// A(zeta(x, t)) cos(carrier phase). beta = 1/6 gives the sine-Gordon small
// breather, beta = b^2/4 + 1/6 the graphene superlattice one.
double small_amplitude_breather(double x, double t, const BreatherParams& p, double beta);

// Small-amplitude breather of the graphene superlattice equation in physical
// coordinates: rescale, then evaluate with beta = b^2/4 + 1/6.
double gsl_breather_dimensional(double x_phys, double t_phys, const BreatherParams& p,
                                const PhysicalScales& scales);

struct HarmonicProfiles {
  std::vector<double> zeta;
  std::vector<double> A;
  std::vector<double> B;
  // max over interior nodes of the discrete residual of the B equation
  double residual_max = 0.0;
  // max |beta A^3 / 4|
  double forcing_max = 0.0;
};

// Uniform zeta grid, [-25, 25] with 2001 points unless told otherwise.
std::vector<double> default_zeta_grid(double half_width = 25.0, std::size_t n = 2001);

// Third-harmonic correction from
//   (1 - omega^2) B'' + (9 omega^2 - 1) B = -beta A^3 / 4,  B = 0 at both ends,
// discretised with second-order central differences and solved as a
// tridiagonal system. B is a diagnostic only; the breathers above stop at
// the first harmonic.
HarmonicProfiles solve_B_correction(double omega, double beta, std::span<const double> zeta_grid);

}  // namespace kgb

#endif  // KGB_ANALYTIC_HPP
