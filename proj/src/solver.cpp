#include "kgb/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgb/error.hpp"

namespace kgb {

Grid1D::Grid1D(double x_min, double x_max, std::size_t nx) : x_min_(x_min), x_max_(x_max), nx_(nx) {
  if (nx < 16) {
    throw Error(ErrorCode::InvalidParam, "grid needs at least 16 samples, got " + std::to_string(nx));
  }
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw Error(ErrorCode::InvalidParam, "grid requires finite x_min < x_max");
  }
  dx_ = (x_max - x_min) / static_cast<double>(nx - 1);
}

Grid1D Grid1D::with_spacing(double x_min, double x_max, double dx) {
  if (!(dx > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "grid spacing must be positive");
  }
  // Small slack so that (x_max - x_min) / dx landing on an integer is honoured.
  const double cells = std::ceil((x_max - x_min) / dx - 1e-9);
  return Grid1D(x_min, x_max, static_cast<std::size_t>(std::max(cells, 1.0)) + 1);
}

std::size_t Grid1D::nearest(double x) const noexcept {
  const double r = std::round((x - x_min_) / dx_);
  if (r <= 0.0) {
    return 0;
  }
  return std::min(static_cast<std::size_t>(r), nx_ - 1);
}

std::string_view to_string(Boundary b) noexcept {
  switch (b) {
    case Boundary::Dirichlet0: return "dirichlet";
    case Boundary::Clamped: return "clamped";
    case Boundary::Periodic: return "periodic";
  }
  return "dirichlet";
}

Boundary boundary_from_string(std::string_view s) {
  if (s == "dirichlet") return Boundary::Dirichlet0;
  if (s == "clamped") return Boundary::Clamped;
  if (s == "periodic") return Boundary::Periodic;
  throw Error(ErrorCode::InvalidParam,
              "unknown boundary '" + std::string(s) + "' (expected dirichlet, clamped or periodic)");
}

FieldState init_from_solution(const SpaceTimeFunction& sol, const Grid1D& grid, double dt) {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "dt must be positive");
  }
  FieldState state;
  state.dt = dt;
  state.t = dt;
  state.u_prev.resize(grid.nx());
  state.u_curr.resize(grid.nx());
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    const double x = grid.x(i);
    state.u_prev[i] = sol(x, 0.0);
    state.u_curr[i] = sol(x, dt);
    if (!std::isfinite(state.u_prev[i]) || !std::isfinite(state.u_curr[i])) {
      throw Error(ErrorCode::NonFiniteSample, "initial solution is not finite at x = " + std::to_string(x));
    }
  }
  return state;
}

void check_courant(const Grid1D& grid, double dt) {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "dt must be positive");
  }
  const double courant = dt / grid.dx();
  if (courant > kMaxCourant) {
    throw Error(ErrorCode::CflViolation, "dt/dx = " + std::to_string(courant) + " exceeds " +
                                             std::to_string(kMaxCourant));
  }
}

LeapfrogStepper::LeapfrogStepper(NonlinearityModel model, Grid1D grid, Boundary boundary)
    : model_(model), grid_(grid), boundary_(boundary), next_(grid.nx()) {}

template <class Kernel>
double LeapfrogStepper::update(const FieldState& state, Kernel kernel) {
  const std::size_t n = grid_.nx();
  const double* uc = state.u_curr.data();
  const double* up = state.u_prev.data();
  double* un = next_.data();
  const double dt2 = state.dt * state.dt;
  const double inv_dx2 = 1.0 / (grid_.dx() * grid_.dx());
  double peak = 0.0;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double lap = (uc[i + 1] - 2.0 * uc[i] + uc[i - 1]) * inv_dx2;
    un[i] = 2.0 * uc[i] - up[i] + dt2 * (lap - force(kernel, uc[i]));
    peak = std::max(peak, std::abs(un[i]));
  }
  switch (boundary_) {
    case Boundary::Dirichlet0:
      un[0] = 0.0;
      un[n - 1] = 0.0;
      break;
    case Boundary::Clamped:
      un[0] = uc[0];
      un[n - 1] = uc[n - 1];
      break;
    case Boundary::Periodic: {
      const double lap0 = (uc[1] - 2.0 * uc[0] + uc[n - 1]) * inv_dx2;
      const double lapn = (uc[0] - 2.0 * uc[n - 1] + uc[n - 2]) * inv_dx2;
      un[0] = 2.0 * uc[0] - up[0] + dt2 * (lap0 - force(kernel, uc[0]));
      un[n - 1] = 2.0 * uc[n - 1] - up[n - 1] + dt2 * (lapn - force(kernel, uc[n - 1]));
      break;
    }
  }
  peak = std::max({peak, std::abs(un[0]), std::abs(un[n - 1])});
  return peak;
}

void LeapfrogStepper::advance(FieldState& state) {
  if (state.u_curr.size() != grid_.nx() || state.u_prev.size() != grid_.nx()) {
    throw Error(ErrorCode::InvalidParam, "state size does not match the grid");
  }
  check_courant(grid_, state.dt);
  const double peak = std::visit([&](auto kernel) { return update(state, kernel); }, model_.variant());
  // NaN compares false, so test the negation.
  if (!(peak <= kBlowupThreshold)) {
    throw Error(ErrorCode::NumericalBlowup, "max|u| exceeded 1e6 at t = " + std::to_string(state.t + state.dt));
  }
  // Rotate levels: prev <- curr <- next, scratch <- old prev.
  std::swap(state.u_prev, state.u_curr);
  std::swap(state.u_curr, next_);
  state.t += state.dt;
}

FieldState step(FieldState state, const NonlinearityModel& model, const Grid1D& grid, Boundary boundary) {
  LeapfrogStepper stepper(model, grid, boundary);
  stepper.advance(state);
  return state;
}

EnergyRecord energy(const FieldState& state, const NonlinearityModel& model, const Grid1D& grid,
                    Boundary boundary) {
  const std::size_t n = grid.nx();
  if (state.u_curr.size() != n || state.u_prev.size() != n) {
    throw Error(ErrorCode::InvalidParam, "state size does not match the grid");
  }
  const auto& up = state.u_prev;
  const auto& uc = state.u_curr;
  const double dx = grid.dx();
  const double dt = state.dt;

  double kinetic = 0.0;
  double local = 0.0;
  std::visit(
      [&](auto kernel) {
        for (std::size_t i = 0; i < n; ++i) {
          if (dt > 0.0) {
            const double ut = (uc[i] - up[i]) / dt;
            kinetic += 0.5 * ut * ut;
          }
          local += 0.5 * (potential(kernel, up[i]) + potential(kernel, uc[i]));
        }
      },
      model.variant());

  double gradient = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    gradient += 0.5 * (up[i + 1] - up[i]) * (uc[i + 1] - uc[i]);
  }
  if (boundary == Boundary::Periodic) {
    gradient += 0.5 * (up[0] - up[n - 1]) * (uc[0] - uc[n - 1]);
  }
  gradient /= dx * dx;

  return {state.t - 0.5 * dt, dx * (kinetic + local + gradient)};
}

void SimConfig::validate() const {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "dt must be positive");
  }
  if (!(t_end > 0.0)) {
    throw Error(ErrorCode::InvalidParam, "t_end must be positive");
  }
  if (snapshot_every < 1) {
    throw Error(ErrorCode::InvalidParam, "snapshot_every must be at least 1");
  }
  for (double p : probes) {
    if (!grid.contains(p)) {
      throw Error(ErrorCode::InvalidParam, "probe x = " + std::to_string(p) + " lies outside the grid");
    }
  }
}

RunResult run(const SimConfig& config, FieldState initial, const SnapshotCallback& on_snapshot) {
  config.validate();
  check_courant(config.grid, config.dt);
  if (std::abs(initial.dt - config.dt) > 1e-12 * config.dt) {
    throw Error(ErrorCode::InvalidParam, "initial state dt does not match the configured dt");
  }

  RunResult result;
  LeapfrogStepper stepper(config.model, config.grid, config.boundary);
  const auto total_steps = static_cast<std::size_t>(std::llround(config.t_end / config.dt));
  const double t0 = initial.t - initial.dt;

  std::vector<std::size_t> probe_index;
  for (double p : config.probes) {
    const std::size_t idx = config.grid.nearest(p);
    probe_index.push_back(idx);
    result.probes.push_back({config.grid.x(idx), {}, {}});
  }
  auto record_probes = [&](double t, const std::vector<double>& u) {
    for (std::size_t k = 0; k < probe_index.size(); ++k) {
      result.probes[k].t.push_back(t);
      result.probes[k].u.push_back(u[probe_index[k]]);
    }
  };
  auto emit = [&](Snapshot snap) {
    if (on_snapshot) {
      on_snapshot(snap);
    } else {
      result.snapshots.push_back(std::move(snap));
    }
  };

  FieldState state = std::move(initial);
  // Step 0 lives in u_prev of the initial state.
  emit({t0, state.u_prev});
  result.energy.push_back(energy(state, config.model, config.grid, config.boundary));
  record_probes(t0, state.u_prev);

  for (std::size_t n = 1; n <= total_steps; ++n) {
    if (n > 1) {
      stepper.advance(state);
    }
    // After the advance, u_curr is the field at step n.
    const double t = t0 + static_cast<double>(n) * config.dt;
    state.t = t;
    record_probes(t, state.u_curr);
    if (n % config.snapshot_every == 0) {
      emit({t, state.u_curr});
      result.energy.push_back(energy(state, config.model, config.grid, config.boundary));
    }
  }
  return result;
}

}  // namespace kgb
