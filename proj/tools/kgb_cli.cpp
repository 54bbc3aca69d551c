// Command-line front end: simulate, compare, kink, sweep, print-defaults.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kgb/config.hpp"
#include "kgb/error.hpp"
#include "kgb/experiment.hpp"

namespace {

struct ConfigArgs {
  std::string path;
  std::vector<std::string> overrides;
  std::string output;
};

void add_config_options(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("-c,--config", args.path, "Config file (defaults apply to missing keys)");
  cmd->add_option("--set", args.overrides, "Override a key, e.g. --set time.dt=0.01")->take_all();
  cmd->add_option("-o,--output", args.output, "Output directory (same as --set output.dir=...)");
}

// Returns an exit code when loading fails.
int load(const ConfigArgs& args, kgb::ExperimentConfig& out) {
  try {
    kgb::RawConfig raw = args.path.empty() ? kgb::RawConfig{} : kgb::RawConfig::load(args.path);
    for (const auto& o : args.overrides) raw.apply_override(o);
    if (!args.output.empty()) raw.set("output.dir", args.output, "--output");
    out = kgb::build_config(raw);
    return kgb::kExitOk;
  } catch (const kgb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kgb::exit_code_for(e.code());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Klein-Gordon breather simulation and stability analysis"};
  app.require_subcommand(1);

  ConfigArgs simulate_args;
  auto* simulate = app.add_subcommand("simulate", "Integrate the field equation and write snapshots");
  add_config_options(simulate, simulate_args);

  ConfigArgs compare_args;
  auto* compare = app.add_subcommand("compare", "Simulate, then correlate against the analytic breather");
  add_config_options(compare, compare_args);

  ConfigArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Run compare over the sweep.* parameter lists");
  add_config_options(sweep, sweep_args);

  double kink_b = 0.9;
  double kink_xi_max = 20.0;
  std::size_t kink_points = 4001;
  double kink_tol = 1e-10;
  std::string kink_out = "kink.csv";
  auto* kink = app.add_subcommand("kink", "Compute the 2 pi kink profile of the graphene superlattice equation");
  kink->add_option("--b", kink_b, "Miniband ratio b")->capture_default_str();
  kink->add_option("--xi-max", kink_xi_max, "Half range in xi")->capture_default_str();
  kink->add_option("--points", kink_points, "Number of samples (odd)")->capture_default_str();
  kink->add_option("--tol", kink_tol, "Integrator relative tolerance")->capture_default_str();
  kink->add_option("--out", kink_out, "Output CSV")->capture_default_str();

  app.add_subcommand("print-defaults", "Print the default configuration");

  CLI11_PARSE(app, argc, argv);

  kgb::ExperimentConfig config;
  if (simulate->parsed()) {
    if (const int rc = load(simulate_args, config); rc != kgb::kExitOk) return rc;
    return kgb::cmd_simulate(config, std::cout, std::cerr);
  }
  if (compare->parsed()) {
    if (const int rc = load(compare_args, config); rc != kgb::kExitOk) return rc;
    return kgb::cmd_compare(config, std::cout, std::cerr);
  }
  if (sweep->parsed()) {
    if (const int rc = load(sweep_args, config); rc != kgb::kExitOk) return rc;
    return kgb::cmd_sweep(config, std::cout, std::cerr);
  }
  if (kink->parsed()) {
    return kgb::cmd_kink(kink_b, kink_xi_max, kink_points, kink_tol, kink_out, std::cout, std::cerr);
  }
  std::cout << kgb::to_text(kgb::ExperimentConfig{});
  return kgb::kExitOk;
}
