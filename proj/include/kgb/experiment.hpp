#ifndef KGB_EXPERIMENT_HPP
#define KGB_EXPERIMENT_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kgb/analysis.hpp"
#include "kgb/config.hpp"
#include "kgb/error.hpp"
#include "kgb/solver.hpp"

namespace kgb {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumeric = 2;

// Environment variable that, when set, prefixes relative output directories.
inline constexpr const char* kOutputRootEnv = "KGB_OUTPUT_ROOT";

int exit_code_for(ErrorCode code) noexcept;

std::filesystem::path resolve_output_dir(const ExperimentConfig& config);

// Grid implied by the config, sizing unset bounds from the pulse: the analytic
// envelope (or kink tail) must fall below ~1e-8 with 20 units of margin on
// both sides of the path travelled by t_end.
Grid1D resolve_grid(const ExperimentConfig& config);

// Closed-form solution matching the initial data: the small-amplitude
// breather (beta from the model), the exact sine-Gordon breathers, the
// traveling kink or zero.
SpaceTimeFunction analytic_solution(const ExperimentConfig& config);

FieldState initial_state(const ExperimentConfig& config, const Grid1D& grid);

SimConfig sim_config(const ExperimentConfig& config, const Grid1D& grid);

struct SimulationOutput {
  Grid1D grid;
  RunResult run;
};

struct ComparisonOutput {
  SimulationOutput simulation;
  std::vector<SnapshotAnalysis> series;
  std::optional<CorrelationRecord> final_record;
};

// Library entry points: run and write files, throwing kgb::Error on failure.
SimulationOutput simulate(const ExperimentConfig& config);
SimulationOutput simulate_and_write(const ExperimentConfig& config);
ComparisonOutput compare_and_write(const ExperimentConfig& config);

// Pulse duration at a probe: first to last time |u| exceeds `fraction` of
// the trace maximum, with linear interpolation of the crossings.
double burst_duration(const ProbeTrace& trace, double fraction = 0.05);

// Subcommands: progress to `log`, failures to `err`; return an exit code, never throw.
int cmd_simulate(const ExperimentConfig& config, std::ostream& log, std::ostream& err);
int cmd_compare(const ExperimentConfig& config, std::ostream& log, std::ostream& err);
int cmd_kink(double b, double xi_max, std::size_t n_points, double tol, const std::filesystem::path& out,
             std::ostream& log, std::ostream& err);
int cmd_sweep(const ExperimentConfig& config, std::ostream& log, std::ostream& err);

struct SweepPoint {
  double omega = 0.0;
  double b = 0.0;
  double v = 0.0;
};

// Cartesian product omega x b x v, empty lists replaced by the scalar value.
std::vector<SweepPoint> sweep_points(const ExperimentConfig& config);

}  // namespace kgb

#endif  // KGB_EXPERIMENT_HPP
