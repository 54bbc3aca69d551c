#ifndef KGB_CONFIG_HPP
#define KGB_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgb/field.hpp"
#include "kgb/models.hpp"

namespace kgb {

// Config files are flat "key = value" lines grouped under [section] headers;
// '#' starts a comment. Keys are addressed as "section.key", which is also
// the syntax of command-line overrides (--set time.dt=0.01).

enum class InitialKind { Breather, SgExact, SgStanding, Kink, Zero };
enum class SnapshotFormat { PerSnapshot, Wide };

std::string_view to_string(InitialKind k) noexcept;
std::string_view to_string(SnapshotFormat f) noexcept;

struct ExperimentConfig {
  // [model]
  std::string model_type = "graphene_sl";  // sine_gordon | graphene_sl | cubic_kg
  double b = 0.9;
  double beta = 1.0 / 6.0;  // cubic_kg only

  // [initial]
  InitialKind initial = InitialKind::Breather;
  double omega = 0.97;
  double v = 0.9;
  double xi_max = 20.0;            // kink profile half-range
  std::size_t kink_points = 4001;  // kink profile samples (odd)

  // [grid]; unset bounds are sized from the pulse width, v and t_end
  std::optional<double> x_min;
  std::optional<double> x_max;
  double dx = 0.05;
  Boundary boundary = Boundary::Dirichlet0;

  // [time]
  double dt = 0.025;
  double t_end = 250.0;
  std::size_t snapshot_every = 200;

  // [analysis]
  std::optional<double> epsilon;
  double half_width = 10.0;
  std::size_t samples = 200;
  std::uint64_t seed = 42;
  std::size_t cadence = 1;

  // [output]
  std::string dir = "out";
  SnapshotFormat format = SnapshotFormat::PerSnapshot;
  bool overlay = true;
  bool svg = true;
  bool snapshots = true;  // false skips the per-snapshot field files
  std::vector<double> probes;

  // [sweep]; empty lists fall back to the scalar values above
  std::vector<double> sweep_omega;
  std::vector<double> sweep_b;
  std::vector<double> sweep_v;
  std::size_t max_points = 64;
  std::size_t workers = 1;

  NonlinearityModel model() const;

  bool operator==(const ExperimentConfig&) const = default;
};

struct ConfigEntry {
  std::string value;
  std::string origin;  // "file.cfg:12" or "--set"
};

// Keys with their raw text and where they came from.
class RawConfig {
 public:
  static RawConfig parse(std::string_view text, std::string_view source);
  static RawConfig load(const std::filesystem::path& path);

  // Parses "section.key=value" and replaces any existing entry.
  void apply_override(std::string_view assignment);
  void set(const std::string& key, std::string value, std::string origin);

  const std::map<std::string, ConfigEntry>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, ConfigEntry> entries_;
};

// Unknown keys, malformed values and out-of-range parameters all raise
// ConfigError naming the key and its origin.
ExperimentConfig build_config(const RawConfig& raw);

// Every key written out, in a fixed order; parses back to an equal config.
std::string to_text(const ExperimentConfig& config);

// Applies the module-level preconditions (ranges of omega, v, b, grid, ...).
void validate(const ExperimentConfig& config);

}  // namespace kgb

#endif  // KGB_CONFIG_HPP
