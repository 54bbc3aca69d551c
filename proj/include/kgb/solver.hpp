#ifndef KGB_SOLVER_HPP
#define KGB_SOLVER_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "kgb/field.hpp"
#include "kgb/models.hpp"

namespace kgb {

// Explicit three-level leapfrog (Stormer) scheme for u_tt - u_xx + F(u) = 0:
//   u_next = 2 u - u_prev + dt^2 (D_xx u - F(u)).

inline constexpr double kMaxCourant = 0.9;
inline constexpr double kBlowupThreshold = 1e6;

using SpaceTimeFunction = std::function<double(double x, double t)>;

// u_prev = sol(., 0), u_curr = sol(., dt), t = dt.
FieldState init_from_solution(const SpaceTimeFunction& sol, const Grid1D& grid, double dt);

// Advances states in place and reuses its scratch buffer between steps.
class LeapfrogStepper {
 public:
  LeapfrogStepper(NonlinearityModel model, Grid1D grid, Boundary boundary);

  // CflViolation if dt/dx > 0.9, NumericalBlowup if max|u| exceeds 1e6.
  void advance(FieldState& state);

  const Grid1D& grid() const noexcept { return grid_; }

 private:
  template <class Kernel>
  double update(const FieldState& state, Kernel kernel);

  NonlinearityModel model_;
  Grid1D grid_;
  Boundary boundary_;
  std::vector<double> next_;
};

void check_courant(const Grid1D& grid, double dt);

FieldState step(FieldState state, const NonlinearityModel& model, const Grid1D& grid, Boundary boundary);

struct EnergyRecord {
  double t = 0.0;
  double energy = 0.0;
};

// Discrete energy of the pair (u_prev, u_curr), stamped at the midpoint time
// t - dt/2:
//   E = sum dx [ (u_t)^2 / 2 + D+u_prev D+u_curr / 2 + (V(u_prev) + V(u_curr)) / 2 ]
// with u_t = (u_curr - u_prev) / dt. For the linear part this is exactly the
// quantity the leapfrog scheme conserves. A state with u_prev == u_curr gives
// the static energy of that profile.
EnergyRecord energy(const FieldState& state, const NonlinearityModel& model, const Grid1D& grid,
                    Boundary boundary = Boundary::Dirichlet0);

struct SimConfig {
  NonlinearityModel model = NonlinearityModel::sine_gordon();
  Grid1D grid{0.0, 1.0, 16};
  double dt = 0.025;
  double t_end = 1.0;
  Boundary boundary = Boundary::Dirichlet0;
  std::size_t snapshot_every = 1;
  // Positions whose field value is recorded every step.
  std::vector<double> probes;

  void validate() const;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> u;
};

struct ProbeTrace {
  double x = 0.0;  // grid node actually sampled
  std::vector<double> t;
  std::vector<double> u;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::vector<EnergyRecord> energy;
  std::vector<ProbeTrace> probes;
};

using SnapshotCallback = std::function<void(const Snapshot&)>;

// Steps from the initial two-level state until t_end. Snapshot n holds the
// field at step n * snapshot_every (step 0 is u_prev of the initial state);
// each snapshot gets an energy record. If `on_snapshot` is given, snapshots
// are handed to it instead of being stored.
RunResult run(const SimConfig& config, FieldState initial, const SnapshotCallback& on_snapshot = {});

}  // namespace kgb

#endif  // KGB_SOLVER_HPP
