#include "kgb/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include "kgb/analytic.hpp"
#include "kgb/csv.hpp"
#include "kgb/error.hpp"
#include "kgb/kink.hpp"
#include "kgb/plot.hpp"

namespace kgb {

namespace fs = std::filesystem;

namespace {

constexpr double kDomainMargin = 20.0;
// acosh(1e8): sech falls below 1e-8 beyond this many envelope lengths.
const double kSechTail = std::acosh(1e8);
// Kink tail in xi units for b = 1 (u ~ C exp(b xi) with C < 10).
constexpr double kKinkTail = 21.0;

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::string probe_name(double x) {
  std::string s = format_number(x);
  std::replace(s.begin(), s.end(), '-', 'm');
  return "probe_x" + s;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
}

// Evenly spaced picks of at most `count` indices out of n.
std::vector<std::size_t> pick(std::size_t n, std::size_t count) {
  std::vector<std::size_t> out;
  if (n == 0) return out;
  count = std::min(count, n);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(count == 1 ? 0 : k * (n - 1) / (count - 1));
  }
  return out;
}

const char* kPalette[] = {"#c0392b", "#2471a3", "#1e8449", "#7d3c98", "#b9770e", "#17202a"};

void write_simulation_files(const ExperimentConfig& config, const SimulationOutput& sim, const fs::path& dir,
                            const SpaceTimeFunction& analytic) {
  const Grid1D& grid = sim.grid;
  const RunResult& run = sim.run;

  write_text(dir / "config.cfg", to_text(config));
  {
    std::ostringstream meta;
    meta << "created = " << timestamp() << "\n"
         << "nx = " << grid.nx() << "\n"
         << "dx = " << format_number(grid.dx()) << "\n"
         << "x_min = " << format_number(grid.x_min()) << "\n"
         << "x_max = " << format_number(grid.x_max()) << "\n"
         << "snapshots = " << run.snapshots.size() << "\n";
    write_text(dir / "metadata.txt", meta.str());
  }

  if (config.snapshots) {
    if (config.format == SnapshotFormat::PerSnapshot) {
      fs::create_directories(dir / "snapshots");
      for (std::size_t s = 0; s < run.snapshots.size(); ++s) {
        const Snapshot& snap = run.snapshots[s];
        char name[40];
        std::snprintf(name, sizeof name, "snapshot_%05zu.csv", s);
        CsvWriter csv = config.overlay ? CsvWriter(dir / "snapshots" / name, {"x", "u", "u_analytic"})
                                       : CsvWriter(dir / "snapshots" / name, {"x", "u"});
        for (std::size_t i = 0; i < grid.nx(); ++i) {
          csv << grid.x(i) << snap.u[i];
          if (config.overlay) csv << analytic(grid.x(i), snap.t);
          csv.end_row();
        }
      }
    } else {
      auto wide = [&](const fs::path& path, bool analytic_values) {
        std::ofstream out(path);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
        out << "t";
        for (std::size_t i = 0; i < grid.nx(); ++i) out << ',' << format_number(grid.x(i));
        out << '\n';
        for (const auto& snap : run.snapshots) {
          out << format_number(snap.t);
          for (std::size_t i = 0; i < grid.nx(); ++i) {
            out << ',' << format_number(analytic_values ? analytic(grid.x(i), snap.t) : snap.u[i]);
          }
          out << '\n';
        }
      };
      wide(dir / "snapshots.csv", false);
      if (config.overlay) wide(dir / "snapshots_analytic.csv", true);
    }
  }

  {
    CsvWriter csv(dir / "energy.csv", {"t", "E"});
    for (const auto& e : run.energy) {
      csv << e.t << e.energy;
      csv.end_row();
    }
  }

  for (const auto& probe : run.probes) {
    CsvWriter csv(dir / (probe_name(probe.x) + ".csv"), {"t", "u", "u_analytic"});
    for (std::size_t k = 0; k < probe.t.size(); ++k) {
      csv << probe.t[k] << probe.u[k] << analytic(probe.x, probe.t[k]);
      csv.end_row();
    }
  }

  if (!config.svg) return;

  if (!run.snapshots.empty()) {
    std::vector<PlotSeries> series;
    const auto picks = pick(run.snapshots.size(), 6);
    for (std::size_t k = 0; k < picks.size(); ++k) {
      const Snapshot& snap = run.snapshots[picks[k]];
      PlotSeries num{"t = " + format_number(snap.t), {}, {}, kPalette[k % 6], false, false};
      PlotSeries ana{"", {}, {}, "#2471a3", true, false};
      for (std::size_t i = 0; i < grid.nx(); i += 2) {
        num.x.push_back(grid.x(i));
        num.y.push_back(snap.u[i]);
        if (config.overlay) {
          ana.x.push_back(grid.x(i));
          ana.y.push_back(analytic(grid.x(i), snap.t));
        }
      }
      series.push_back(std::move(num));
      if (config.overlay) series.push_back(std::move(ana));
    }
    write_svg_plot(dir / "snapshots.svg", "numerical (solid) and analytic (dashed) fields", "x", "u", series);
  }
  for (const auto& probe : run.probes) {
    PlotSeries num{"numerical", probe.t, probe.u, "#c0392b", false, false};
    PlotSeries ana{"analytic", probe.t, {}, "#2471a3", true, false};
    for (double t : probe.t) ana.y.push_back(analytic(probe.x, t));
    write_svg_plot(dir / (probe_name(probe.x) + ".svg"), "u(t) at x = " + format_number(probe.x), "t", "u",
                   {num, ana});
  }
}

void write_analysis_files(const ExperimentConfig& config, const ComparisonOutput& cmp, const fs::path& dir) {
  const Grid1D& grid = cmp.simulation.grid;
  {
    CsvWriter csv(dir / "correlation.csv", {"t", "x_max", "K_corr", "N", "seed"});
    for (const auto& e : cmp.series) {
      csv << e.t;
      if (e.record) {
        csv << e.record->x_max << e.record->k_corr;
      } else {
        csv << std::nan("") << std::nan("");
      }
      csv << static_cast<unsigned long long>(config.samples) << static_cast<unsigned long long>(config.seed);
      csv.end_row();
    }
  }
  {
    CsvWriter csv(dir / "extrema.csv", {"t", "x", "amp"});
    for (const auto& e : cmp.series) {
      for (const auto& p : e.extrema.points) {
        csv << e.t << p.x << p.amplitude;
        csv.end_row();
      }
    }
  }
  {
    CsvWriter csv(dir / "envelope.csv", {"t", "x", "env"});
    for (const auto& e : cmp.series) {
      if (!e.envelope || !e.record) continue;
      const double lo = std::max(e.envelope->x_lo(), e.record->x_max - 2.0 * config.half_width);
      const double hi = std::min(e.envelope->x_hi(), e.record->x_max + 2.0 * config.half_width);
      const double step = grid.dx() * 2.0;
      for (double x = lo; x <= hi; x += step) {
        csv << e.t << x << (*e.envelope)(x);
        csv.end_row();
      }
    }
  }

  if (!config.svg) return;

  PlotSeries k{"K_corr", {}, {}, "#2471a3", false, true};
  for (const auto& e : cmp.series) {
    if (!e.record) continue;
    k.x.push_back(e.t);
    k.y.push_back(e.record->k_corr);
  }
  write_svg_plot(dir / "correlation.svg", "correlation of numerical and analytic solution", "t", "K_corr", {k});

  std::vector<PlotSeries> envs;
  std::vector<std::size_t> usable;
  for (std::size_t s = 0; s < cmp.series.size(); ++s) {
    if (cmp.series[s].envelope && cmp.series[s].record) usable.push_back(s);
  }
  const auto picks = pick(usable.size(), 5);
  for (std::size_t n = 0; n < picks.size(); ++n) {
    const auto& e = cmp.series[usable[picks[n]]];
    PlotSeries curve{"t = " + format_number(e.t), {}, {}, kPalette[n % 6], false, false};
    PlotSeries knots{"", {}, {}, kPalette[n % 6], true, true};
    const double lo = std::max(e.envelope->x_lo(), e.record->x_max - config.half_width);
    const double hi = std::min(e.envelope->x_hi(), e.record->x_max + config.half_width);
    for (double x = lo; x <= hi; x += grid.dx()) {
      curve.x.push_back(x);
      curve.y.push_back((*e.envelope)(x));
    }
    for (const auto& p : e.extrema.points) {
      if (p.x >= lo && p.x <= hi) {
        knots.x.push_back(p.x);
        knots.y.push_back(p.amplitude);
      }
    }
    envs.push_back(std::move(curve));
    envs.push_back(std::move(knots));
  }
  write_svg_plot(dir / "envelope.svg", "envelope of |u| near its maximum", "x", "|u|", envs);
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidParam:
    case ErrorCode::IoError:
      return kExitConfig;
    default:
      return kExitNumeric;
  }
}

fs::path resolve_output_dir(const ExperimentConfig& config) {
  fs::path dir(config.dir);
  if (dir.is_relative()) {
    if (const char* root = std::getenv(kOutputRootEnv); root != nullptr && *root != '\0') {
      return fs::path(root) / dir;
    }
  }
  return dir;
}

Grid1D resolve_grid(const ExperimentConfig& config) {
  double half = 50.0;
  double lo_path = 0.0;
  double hi_path = 0.0;
  switch (config.initial) {
    case InitialKind::Breather:
    case InitialKind::SgExact:
    case InitialKind::SgStanding: {
      const double v = config.initial == InitialKind::SgStanding ? 0.0 : config.v;
      const BreatherParams p(config.omega, v);
      half = kSechTail / (p.gamma() * p.detuning()) + kDomainMargin;
      lo_path = std::min(0.0, v * config.t_end);
      hi_path = std::max(0.0, v * config.t_end);
      break;
    }
    case InitialKind::Kink: {
      const double length = kink_length_scale(config.b, config.v);
      half = length * kKinkTail / config.b + kDomainMargin;
      lo_path = std::min(0.0, config.v * config.t_end);
      hi_path = std::max(0.0, config.v * config.t_end);
      break;
    }
    case InitialKind::Zero:
      break;
  }
  const double x_min = config.x_min.value_or(std::floor(lo_path - half));
  const double x_max = config.x_max.value_or(std::ceil(hi_path + half));
  return Grid1D::with_spacing(x_min, x_max, config.dx);
}

SpaceTimeFunction analytic_solution(const ExperimentConfig& config) {
  switch (config.initial) {
    case InitialKind::Breather: {
      const BreatherParams p(config.omega, config.v);
      const double beta = beta_for(config.model());
      return [p, beta](double x, double t) { return small_amplitude_breather(x, t, p, beta); };
    }
    case InitialKind::SgExact: {
      const BreatherParams p(config.omega, config.v);
      return [p](double x, double t) { return sg_traveling_breather(x, t, p); };
    }
    case InitialKind::SgStanding: {
      const double omega = config.omega;
      return [omega](double x, double t) { return sg_standing_breather(x, t, omega); };
    }
    case InitialKind::Kink: {
      const Grid1D grid = resolve_grid(config);
      const double length = kink_length_scale(config.b, config.v);
      const double reach = std::max(std::abs(grid.x_min()), std::abs(grid.x_max())) +
                           std::abs(config.v) * config.t_end;
      const double xi_max = std::max(config.xi_max, reach / length + 1.0);
      const auto half = static_cast<std::size_t>(
          std::max<double>(static_cast<double>(config.kink_points / 2), std::ceil(xi_max / 0.01)));
      auto profile = std::make_shared<const KinkProfile>(kink_profile(config.b, xi_max, 2 * half + 1));
      const double v = config.v;
      return [profile, v](double x, double t) { return traveling_kink(*profile, v, x, t); };
    }
    case InitialKind::Zero:
      return [](double, double) { return 0.0; };
  }
  return [](double, double) { return 0.0; };
}

FieldState initial_state(const ExperimentConfig& config, const Grid1D& grid) {
  if (config.initial == InitialKind::Kink) {
    return kink_initial_state(config.b, config.v, grid, config.dt);
  }
  return init_from_solution(analytic_solution(config), grid, config.dt);
}

SimConfig sim_config(const ExperimentConfig& config, const Grid1D& grid) {
  SimConfig sim;
  sim.model = config.model();
  sim.grid = grid;
  sim.dt = config.dt;
  sim.t_end = config.t_end;
  sim.boundary = config.boundary;
  sim.snapshot_every = config.snapshot_every;
  sim.probes = config.probes;
  return sim;
}

SimulationOutput simulate(const ExperimentConfig& config) {
  validate(config);
  const Grid1D grid = resolve_grid(config);
  const SimConfig sim = sim_config(config, grid);
  sim.validate();
  // Reject an unstable time step before any work is done.
  check_courant(grid, config.dt);
  return {grid, run(sim, initial_state(config, grid))};
}

SimulationOutput simulate_and_write(const ExperimentConfig& config) {
  SimulationOutput out = simulate(config);
  const fs::path dir = resolve_output_dir(config);
  fs::create_directories(dir);
  write_simulation_files(config, out, dir, analytic_solution(config));
  return out;
}

ComparisonOutput compare_and_write(const ExperimentConfig& config) {
  ComparisonOutput cmp{simulate(config), {}, std::nullopt};
  const fs::path dir = resolve_output_dir(config);
  fs::create_directories(dir);
  const SpaceTimeFunction analytic = analytic_solution(config);
  write_simulation_files(config, cmp.simulation, dir, analytic);

  AnalysisOptions options;
  options.epsilon = config.epsilon;
  options.half_width = config.half_width;
  options.samples = config.samples;
  options.seed = config.seed;
  options.cadence = config.cadence;
  cmp.series = correlation_timeseries(cmp.simulation.run.snapshots, cmp.simulation.grid, analytic, options);
  for (auto it = cmp.series.rbegin(); it != cmp.series.rend(); ++it) {
    if (it->record) {
      cmp.final_record = it->record;
      break;
    }
  }
  write_analysis_files(config, cmp, dir);
  return cmp;
}

double burst_duration(const ProbeTrace& trace, double fraction) {
  double peak = 0.0;
  for (double u : trace.u) peak = std::max(peak, std::abs(u));
  if (!(peak > 0.0)) {
    return 0.0;
  }
  const double threshold = fraction * peak;
  std::size_t first = trace.u.size();
  std::size_t last = 0;
  for (std::size_t k = 0; k < trace.u.size(); ++k) {
    if (std::abs(trace.u[k]) > threshold) {
      first = std::min(first, k);
      last = k;
    }
  }
  auto crossing = [&](std::size_t below, std::size_t above) {
    const double a = std::abs(trace.u[below]);
    const double b = std::abs(trace.u[above]);
    const double s = (threshold - a) / (b - a);
    return trace.t[below] + s * (trace.t[above] - trace.t[below]);
  };
  const double start = first == 0 ? trace.t.front() : crossing(first - 1, first);
  const double stop = last + 1 >= trace.u.size() ? trace.t.back() : crossing(last + 1, last);
  return stop - start;
}

int cmd_simulate(const ExperimentConfig& config, std::ostream& log, std::ostream& err) {
  try {
    const SimulationOutput out = simulate_and_write(config);
    log << "simulate: " << out.run.snapshots.size() << " snapshots on " << out.grid.nx() << " nodes written to "
        << resolve_output_dir(config).string() << "\n";
    if (out.run.energy.size() >= 2) {
      const double e0 = out.run.energy.front().energy;
      double drift = 0.0;
      for (const auto& e : out.run.energy) drift = std::max(drift, std::abs(e.energy - e0));
      log << "simulate: max energy deviation " << format_number(drift) << " (E0 = " << format_number(e0) << ")\n";
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_compare(const ExperimentConfig& config, std::ostream& log, std::ostream& err) {
  try {
    const ComparisonOutput out = compare_and_write(config);
    if (out.final_record) {
      log << "compare: final K_corr(t = " << format_number(out.final_record->t)
          << ") = " << format_number(out.final_record->k_corr) << "\n";
    } else {
      log << "compare: no correlation records (every snapshot was a gap)\n";
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_kink(double b, double xi_max, std::size_t n_points, double tol, const fs::path& out, std::ostream& log,
             std::ostream& err) {
  try {
    KinkOptions options;
    options.tol = tol;
    const KinkProfile profile = kink_profile(b, xi_max, n_points, options);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    CsvWriter csv(out, {"xi", "u"});
    for (std::size_t i = 0; i < profile.xi().size(); ++i) {
      csv << profile.xi()[i] << profile.u()[i];
      csv.end_row();
    }
    log << "kink: b = " << format_number(b) << ", " << profile.xi().size() << " samples written to "
        << out.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

std::vector<SweepPoint> sweep_points(const ExperimentConfig& config) {
  const auto or_scalar = [](const std::vector<double>& list, double scalar) {
    return list.empty() ? std::vector<double>{scalar} : list;
  };
  std::vector<SweepPoint> points;
  for (double omega : or_scalar(config.sweep_omega, config.omega)) {
    for (double b : or_scalar(config.sweep_b, config.b)) {
      for (double v : or_scalar(config.sweep_v, config.v)) {
        points.push_back({omega, b, v});
      }
    }
  }
  return points;
}

int cmd_sweep(const ExperimentConfig& config, std::ostream& log, std::ostream& err) {
  std::vector<SweepPoint> points;
  fs::path base;
  try {
    validate(config);
    points = sweep_points(config);
    if (points.size() > config.max_points) {
      throw Error(ErrorCode::ConfigError, "sweep.max_points: sweep has " + std::to_string(points.size()) +
                                              " points, cap is " + std::to_string(config.max_points));
    }
    base = fs::absolute(resolve_output_dir(config));
    fs::create_directories(base);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }

  struct Outcome {
    double k_final = std::nan("");
    std::string status = "ok";
  };
  std::vector<Outcome> outcomes(points.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      ExperimentConfig point = config;
      point.omega = points[i].omega;
      point.b = points[i].b;
      point.v = points[i].v;
      point.sweep_omega.clear();
      point.sweep_b.clear();
      point.sweep_v.clear();
      char name[32];
      std::snprintf(name, sizeof name, "point_%03zu", i);
      point.dir = (base / name).string();
      try {
        const ComparisonOutput out = compare_and_write(point);
        if (out.final_record) {
          outcomes[i].k_final = out.final_record->k_corr;
        } else {
          outcomes[i].status = "no_records";
        }
      } catch (const Error& e) {
        outcomes[i].status = std::string(to_string(e.code()));
      } catch (const std::exception& e) {
        outcomes[i].status = "error";
      }
    }
  };
  const std::size_t n_workers = std::min(config.workers, points.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
  }

  try {
    CsvWriter csv(base / "summary.csv", {"index", "omega", "b", "v", "K_corr_final", "status"});
    for (std::size_t i = 0; i < points.size(); ++i) {
      csv << static_cast<unsigned long long>(i) << points[i].omega << points[i].b << points[i].v
          << outcomes[i].k_final << outcomes[i].status;
      csv.end_row();
      log << "sweep: point " << i << " omega = " << format_number(points[i].omega)
          << " b = " << format_number(points[i].b) << " v = " << format_number(points[i].v) << " -> "
          << (outcomes[i].status == "ok" ? format_number(outcomes[i].k_final) : outcomes[i].status) << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitOk;
}

}  // namespace kgb
