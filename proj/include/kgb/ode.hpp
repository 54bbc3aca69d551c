#ifndef KGB_ODE_HPP
#define KGB_ODE_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace kgb {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 0.0;
  double h_init = 1e-3;
  double h_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 1'000'000;
};

struct OdeStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

// Adaptive Dormand-Prince 5(4) for a scalar ODE y' = f(t, y). Steps are
// shortened so that every target is hit exactly; the returned values are the
// solution at the targets. Targets must be strictly monotone and lie on one
// side of t0.
std::vector<double> integrate_dopri5(const std::function<double(double, double)>& f, double t0,
                                     double y0, std::span<const double> targets,
                                     const OdeOptions& options = {}, OdeStats* stats = nullptr);

}  // namespace kgb

#endif  // KGB_ODE_HPP
