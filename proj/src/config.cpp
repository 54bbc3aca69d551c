#include "kgb/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "kgb/error.hpp"

namespace kgb {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& key, const ConfigEntry& entry, const std::string& what) {
  throw Error(ErrorCode::ConfigError, entry.origin + ": " + key + ": " + what + " (got '" + entry.value + "')");
}

[[noreturn]] void fail_key(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::ConfigError, key + ": " + what);
}

double parse_double(const std::string& key, const ConfigEntry& e) {
  const std::string_view s = trim(e.value);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    fail(key, e, "expected a finite number");
  }
  return v;
}

std::uint64_t parse_unsigned(const std::string& key, const ConfigEntry& e) {
  const std::string_view s = trim(e.value);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(key, e, "expected a non-negative integer");
  }
  return v;
}

bool parse_bool(const std::string& key, const ConfigEntry& e) {
  const std::string_view s = trim(e.value);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  fail(key, e, "expected true or false");
}

std::vector<double> parse_list(const std::string& key, const ConfigEntry& e) {
  std::vector<double> out;
  std::string_view s = trim(e.value);
  if (s.empty()) {
    return out;
  }
  while (true) {
    const auto comma = s.find(',');
    ConfigEntry item{std::string(trim(s.substr(0, comma))), e.origin};
    out.push_back(parse_double(key, item));
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  return out;
}

std::optional<double> parse_auto_double(const std::string& key, const ConfigEntry& e) {
  if (trim(e.value) == "auto") {
    return std::nullopt;
  }
  return parse_double(key, e);
}

// Shortest text that parses back to the same double.
std::string number(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += number(values[i]);
  }
  return out;
}

}  // namespace

std::string_view to_string(InitialKind k) noexcept {
  switch (k) {
    case InitialKind::Breather: return "breather";
    case InitialKind::SgExact: return "sg_exact";
    case InitialKind::SgStanding: return "sg_standing";
    case InitialKind::Kink: return "kink";
    case InitialKind::Zero: return "zero";
  }
  return "breather";
}

std::string_view to_string(SnapshotFormat f) noexcept {
  return f == SnapshotFormat::Wide ? "wide" : "per_snapshot";
}

NonlinearityModel ExperimentConfig::model() const {
  if (model_type == "sine_gordon") return NonlinearityModel::sine_gordon();
  if (model_type == "graphene_sl") return NonlinearityModel::graphene_sl(b);
  if (model_type == "cubic_kg") return NonlinearityModel::cubic_kg(beta);
  throw Error(ErrorCode::ConfigError, "model.type: unknown model '" + model_type + "'");
}

RawConfig RawConfig::parse(std::string_view text, std::string_view source) {
  RawConfig raw;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    const std::string origin = std::string(source) + ":" + std::to_string(line_no);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw Error(ErrorCode::ConfigError, origin + ": malformed section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) {
        throw Error(ErrorCode::ConfigError, origin + ": empty section name");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError, origin + ": expected 'key = value'");
    }
    const std::string_view name = trim(line.substr(0, eq));
    if (name.empty()) {
      throw Error(ErrorCode::ConfigError, origin + ": missing key");
    }
    if (section.empty()) {
      throw Error(ErrorCode::ConfigError, origin + ": key '" + std::string(name) + "' outside of any section");
    }
    const std::string key = section + "." + std::string(name);
    if (raw.entries_.count(key) != 0) {
      throw Error(ErrorCode::ConfigError, origin + ": duplicate key '" + key + "' (first at " +
                                              raw.entries_.at(key).origin + ")");
    }
    raw.entries_[key] = {std::string(trim(line.substr(eq + 1))), origin};
  }
  return raw;
}

RawConfig RawConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ConfigError, "cannot read config file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.filename().string());
}

void RawConfig::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorCode::ConfigError, "--set expects section.key=value, got '" + std::string(assignment) + "'");
  }
  const std::string key(trim(assignment.substr(0, eq)));
  if (key.find('.') == std::string::npos) {
    throw Error(ErrorCode::ConfigError, "--set key must be section.key, got '" + key + "'");
  }
  set(key, std::string(trim(assignment.substr(eq + 1))), "--set");
}

void RawConfig::set(const std::string& key, std::string value, std::string origin) {
  entries_[key] = {std::move(value), std::move(origin)};
}

ExperimentConfig build_config(const RawConfig& raw) {
  ExperimentConfig cfg;
  using Handler = std::function<void(const std::string&, const ConfigEntry&)>;
  auto size = [](std::size_t& field) {
    return [&field](const std::string& k, const ConfigEntry& e) { field = parse_unsigned(k, e); };
  };
  auto real = [](double& field) {
    return [&field](const std::string& k, const ConfigEntry& e) { field = parse_double(k, e); };
  };
  auto flag = [](bool& field) {
    return [&field](const std::string& k, const ConfigEntry& e) { field = parse_bool(k, e); };
  };
  auto reals = [](std::vector<double>& field) {
    return [&field](const std::string& k, const ConfigEntry& e) { field = parse_list(k, e); };
  };
  auto maybe = [](std::optional<double>& field) {
    return [&field](const std::string& k, const ConfigEntry& e) { field = parse_auto_double(k, e); };
  };

  const std::map<std::string, Handler> handlers = {
      {"model.type",
       [&](const std::string& k, const ConfigEntry& e) {
         static const std::set<std::string> known{"sine_gordon", "graphene_sl", "cubic_kg"};
         if (known.count(e.value) == 0) fail(k, e, "expected sine_gordon, graphene_sl or cubic_kg");
         cfg.model_type = e.value;
       }},
      {"model.b", real(cfg.b)},
      {"model.beta", real(cfg.beta)},
      {"initial.kind",
       [&](const std::string& k, const ConfigEntry& e) {
         static const std::map<std::string, InitialKind> kinds{{"breather", InitialKind::Breather},
                                                               {"sg_exact", InitialKind::SgExact},
                                                               {"sg_standing", InitialKind::SgStanding},
                                                               {"kink", InitialKind::Kink},
                                                               {"zero", InitialKind::Zero}};
         const auto it = kinds.find(e.value);
         if (it == kinds.end()) fail(k, e, "expected breather, sg_exact, sg_standing, kink or zero");
         cfg.initial = it->second;
       }},
      {"initial.omega", real(cfg.omega)},
      {"initial.v", real(cfg.v)},
      {"initial.xi_max", real(cfg.xi_max)},
      {"initial.kink_points", size(cfg.kink_points)},
      {"grid.x_min", maybe(cfg.x_min)},
      {"grid.x_max", maybe(cfg.x_max)},
      {"grid.dx", real(cfg.dx)},
      {"grid.boundary",
       [&](const std::string& k, const ConfigEntry& e) {
         try {
           cfg.boundary = boundary_from_string(e.value);
         } catch (const Error&) {
           fail(k, e, "expected dirichlet, clamped or periodic");
         }
       }},
      {"time.dt", real(cfg.dt)},
      {"time.t_end", real(cfg.t_end)},
      {"time.snapshot_every", size(cfg.snapshot_every)},
      {"analysis.epsilon", maybe(cfg.epsilon)},
      {"analysis.half_width", real(cfg.half_width)},
      {"analysis.samples", size(cfg.samples)},
      {"analysis.seed",
       [&](const std::string& k, const ConfigEntry& e) { cfg.seed = parse_unsigned(k, e); }},
      {"analysis.cadence", size(cfg.cadence)},
      {"output.dir", [&](const std::string&, const ConfigEntry& e) { cfg.dir = e.value; }},
      {"output.format",
       [&](const std::string& k, const ConfigEntry& e) {
         if (e.value == "per_snapshot") cfg.format = SnapshotFormat::PerSnapshot;
         else if (e.value == "wide") cfg.format = SnapshotFormat::Wide;
         else fail(k, e, "expected per_snapshot or wide");
       }},
      {"output.overlay", flag(cfg.overlay)},
      {"output.svg", flag(cfg.svg)},
      {"output.snapshots", flag(cfg.snapshots)},
      {"output.probes", reals(cfg.probes)},
      {"sweep.omega", reals(cfg.sweep_omega)},
      {"sweep.b", reals(cfg.sweep_b)},
      {"sweep.v", reals(cfg.sweep_v)},
      {"sweep.max_points", size(cfg.max_points)},
      {"sweep.workers", size(cfg.workers)},
  };

  for (const auto& [key, entry] : raw.entries()) {
    const auto it = handlers.find(key);
    if (it == handlers.end()) {
      throw Error(ErrorCode::ConfigError, entry.origin + ": unknown key '" + key + "'");
    }
    it->second(key, entry);
  }

  // Re-run range checks with the origin of the offending key attached.
  try {
    validate(cfg);
  } catch (const Error& e) {
    std::string what = e.what();
    for (const auto& [key, entry] : raw.entries()) {
      if (what.find(key + ":") != std::string::npos) {
        throw Error(ErrorCode::ConfigError, entry.origin + ": " + what);
      }
    }
    throw;
  }
  return cfg;
}

void validate(const ExperimentConfig& c) {
  auto require = [](bool ok, const std::string& key, const std::string& what) {
    if (!ok) fail_key(key, what);
  };
  require(c.model_type == "sine_gordon" || c.model_type == "graphene_sl" || c.model_type == "cubic_kg",
          "model.type", "unknown model '" + c.model_type + "'");
  require(c.b >= 0.0, "model.b", "must be >= 0");
  require(c.beta >= 0.0, "model.beta", "must be >= 0");
  if (c.initial == InitialKind::Breather || c.initial == InitialKind::SgExact ||
      c.initial == InitialKind::SgStanding) {
    require(c.omega > 0.0 && c.omega < 1.0, "initial.omega", "must lie in (0, 1)");
  }
  require(std::abs(c.v) < 1.0, "initial.v", "must satisfy |v| < 1");
  if (c.initial == InitialKind::Breather && c.model_type == "cubic_kg") {
    require(c.beta > 0.0, "model.beta", "breather initial data needs beta > 0");
  }
  if (c.initial == InitialKind::Kink) {
    require(c.model_type == "graphene_sl", "initial.kind", "kink initial data needs model.type = graphene_sl");
    require(c.b > 0.0, "model.b", "kink needs b > 0");
    require(c.boundary == Boundary::Clamped, "grid.boundary", "kink initial data needs clamped boundaries");
  }
  require(c.xi_max > 0.0, "initial.xi_max", "must be positive");
  require(c.kink_points >= 3 && c.kink_points % 2 == 1, "initial.kink_points", "must be odd and >= 3");
  require(c.dx > 0.0, "grid.dx", "must be positive");
  if (c.x_min && c.x_max) {
    require(*c.x_max > *c.x_min, "grid.x_max", "must exceed grid.x_min");
    require((*c.x_max - *c.x_min) / c.dx >= 15.0, "grid.dx", "grid needs at least 16 samples");
  }
  require(c.dt > 0.0, "time.dt", "must be positive");
  require(c.t_end > 0.0, "time.t_end", "must be positive");
  require(c.t_end / c.dt <= 1e8, "time.t_end", "more than 1e8 steps requested");
  require(c.snapshot_every >= 1, "time.snapshot_every", "must be >= 1");
  if (c.epsilon) {
    require(*c.epsilon > 0.0, "analysis.epsilon", "must be positive or auto");
  }
  require(c.half_width > 0.0, "analysis.half_width", "must be positive");
  require(c.samples >= 2, "analysis.samples", "must be >= 2");
  require(c.cadence >= 1, "analysis.cadence", "must be >= 1");
  require(!c.dir.empty(), "output.dir", "must not be empty");
  for (double w : c.sweep_omega) require(w > 0.0 && w < 1.0, "sweep.omega", "values must lie in (0, 1)");
  for (double b : c.sweep_b) require(b >= 0.0, "sweep.b", "values must be >= 0");
  for (double v : c.sweep_v) require(std::abs(v) < 1.0, "sweep.v", "values must satisfy |v| < 1");
  require(c.max_points >= 1, "sweep.max_points", "must be >= 1");
  require(c.workers >= 1, "sweep.workers", "must be >= 1");
}

std::string to_text(const ExperimentConfig& c) {
  auto opt = [](const std::optional<double>& v) { return v ? number(*v) : std::string("auto"); };
  std::ostringstream out;
  out << "[model]\n"
      << "type = " << c.model_type << "\n"
      << "b = " << number(c.b) << "\n"
      << "beta = " << number(c.beta) << "\n\n"
      << "[initial]\n"
      << "kind = " << to_string(c.initial) << "\n"
      << "omega = " << number(c.omega) << "\n"
      << "v = " << number(c.v) << "\n"
      << "xi_max = " << number(c.xi_max) << "\n"
      << "kink_points = " << c.kink_points << "\n\n"
      << "[grid]\n"
      << "x_min = " << opt(c.x_min) << "\n"
      << "x_max = " << opt(c.x_max) << "\n"
      << "dx = " << number(c.dx) << "\n"
      << "boundary = " << to_string(c.boundary) << "\n\n"
      << "[time]\n"
      << "dt = " << number(c.dt) << "\n"
      << "t_end = " << number(c.t_end) << "\n"
      << "snapshot_every = " << c.snapshot_every << "\n\n"
      << "[analysis]\n"
      << "epsilon = " << opt(c.epsilon) << "\n"
      << "half_width = " << number(c.half_width) << "\n"
      << "samples = " << c.samples << "\n"
      << "seed = " << c.seed << "\n"
      << "cadence = " << c.cadence << "\n\n"
      << "[output]\n"
      << "dir = " << c.dir << "\n"
      << "format = " << to_string(c.format) << "\n"
      << "overlay = " << (c.overlay ? "true" : "false") << "\n"
      << "svg = " << (c.svg ? "true" : "false") << "\n"
      << "snapshots = " << (c.snapshots ? "true" : "false") << "\n"
      << "probes = " << list(c.probes) << "\n\n"
      << "[sweep]\n"
      << "omega = " << list(c.sweep_omega) << "\n"
      << "b = " << list(c.sweep_b) << "\n"
      << "v = " << list(c.sweep_v) << "\n"
      << "max_points = " << c.max_points << "\n"
      << "workers = " << c.workers << "\n";
  return out.str();
}

}  // namespace kgb
