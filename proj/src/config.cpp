#include "linimp/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace linimp {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view key, std::string_view value) {
  const std::string copy(value);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(v)) {
    throw ConfigError("field '" + std::string(key) + "': expected a number, got '" + copy + "'");
  }
  return v;
}

long long to_integer(std::string_view key, std::string_view value) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("field '" + std::string(key) + "': expected an integer, got '" +
                      std::string(value) + "'");
  }
  return v;
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "on" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "off" || value == "no" || value == "0") return false;
  throw ConfigError("field '" + std::string(key) + "': expected true/false, got '" +
                    std::string(value) + "'");
}

}  // namespace

SchemeChoice parse_scheme(std::string_view text) {
  SchemeChoice s;
  s.name = std::string(text);
  if (text == "mp") {
    s.kind = SchemeKind::midpoint;
  } else if (text == "kahan") {
    s.kind = SchemeKind::kahan;
  } else if (text == "kahan2") {
    s.kind = SchemeKind::kahan_two_step;
  } else if (text == "pdgm" || text == "pdgm-quadratic") {
    s.kind = SchemeKind::pdg;
    s.pdg_kind = PdgKind::quadratic;
  } else if (text == "pdgm-avf") {
    s.kind = SchemeKind::pdg;
    s.pdg_kind = PdgKind::avf;
  } else if (text == "pdgm-ia") {
    s.kind = SchemeKind::pdg;
    s.pdg_kind = PdgKind::itoh_abe;
  } else if (text == "pdgm-sia") {
    s.kind = SchemeKind::pdg;
    s.pdg_kind = PdgKind::symmetrized_itoh_abe;
  } else if (text.starts_with("tableau:")) {
    s.kind = SchemeKind::tableau;
    try {
      s.tableau = TwoStepTableau::parse(text.substr(8));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("field 'scheme': ") + e.what());
    }
  } else {
    throw ConfigError("field 'scheme': unknown scheme '" + std::string(text) + "'");
  }
  return s;
}

std::string_view equation_name(EquationKind kind) {
  switch (kind) {
    case EquationKind::kdv: return "kdv";
    case EquationKind::camassa_holm: return "ch";
    case EquationKind::ode_demo: return "ode-demo";
  }
  return "?";
}

double RunConfig::effective_a() const {
  if (a_param) return *a_param;
  return equation == EquationKind::camassa_holm ? 0.5 : -0.5;
}

Index RunConfig::steps() const {
  try {
    return step_count(dt, final_time);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("fields 'T'/'dt': ") + e.what());
  }
}

Index RunConfig::effective_stride() const {
  if (record_stride > 0) return record_stride;
  return std::max<Index>(1, static_cast<Index>(std::llround(static_cast<double>(steps()) / 200.0)));
}

RunConfig preset_config(std::string_view name) {
  RunConfig c;
  c.preset = std::string(name);
  c.initial_condition = std::string(name);
  if (name == "kdv-1soliton") {
    c.equation = EquationKind::kdv;
    c.length = 40.0;
    c.points = 800;
    c.dt = 0.0125;
    c.final_time = 100.0;
    c.scheme = parse_scheme("kahan");
  } else if (name == "kdv-2soliton") {
    c.equation = EquationKind::kdv;
    c.length = 40.0;
    c.points = 800;
    c.dt = 0.001;
    c.final_time = 100.0;
    c.scheme = parse_scheme("kahan");
  } else if (name == "ch-1peakon" || name == "ch-2peakon") {
    c.equation = EquationKind::camassa_holm;
    c.length = 40.0;
    c.points = 1000;
    c.dt = 0.0002;
    c.final_time = 5.0;
    c.scheme = parse_scheme("kahan");
  } else if (name == "ode-demo") {
    c.equation = EquationKind::ode_demo;
    c.points = 2;
    c.length = 1.0;
    c.dt = 0.01;
    c.final_time = 10.0;
    c.initial_condition = "0.5,0";
    c.scheme = parse_scheme("kahan");
  } else {
    throw ConfigError("field 'preset': unknown preset '" + std::string(name) + "'");
  }
  return c;
}

void set_config_value(RunConfig& c, std::string_view key, std::string_view value) {
  if (key == "preset") {
    c = preset_config(value);
  } else if (key == "equation") {
    if (value == "kdv") {
      c.equation = EquationKind::kdv;
    } else if (value == "ch") {
      c.equation = EquationKind::camassa_holm;
    } else if (value == "ode-demo") {
      c.equation = EquationKind::ode_demo;
      c.points = 2;
    } else {
      throw ConfigError("field 'equation': unknown equation '" + std::string(value) + "'");
    }
  } else if (key == "scheme") {
    c.scheme = parse_scheme(value);
  } else if (key == "K") {
    c.points = static_cast<Index>(to_integer(key, value));
  } else if (key == "L") {
    c.length = to_double(key, value);
  } else if (key == "dx") {
    const double dx = to_double(key, value);
    if (!(dx > 0.0) || !(c.length > 0.0)) {
      throw ConfigError("field 'dx': needs a positive dx and L set before it");
    }
    const double k = c.length / dx;
    if (std::abs(k - std::round(k)) > 1e-9 * k) {
      throw ConfigError("field 'dx': L / dx is not an integer");
    }
    c.points = static_cast<Index>(std::llround(k));
  } else if (key == "dt") {
    c.dt = to_double(key, value);
  } else if (key == "T") {
    c.final_time = to_double(key, value);
  } else if (key == "a_param") {
    c.a_param = to_double(key, value);
  } else if (key == "startup") {
    if (value == "kahan") {
      c.startup = Startup::kahan;
    } else if (value == "midpoint") {
      c.startup = Startup::midpoint;
    } else {
      throw ConfigError("field 'startup': expected kahan or midpoint");
    }
  } else if (key == "initial_condition") {
    c.initial_condition = std::string(value);
  } else if (key == "output_dir") {
    c.output_dir = std::string(value);
  } else if (key == "record_stride") {
    c.record_stride = static_cast<Index>(to_integer(key, value));
  } else if (key == "seed") {
    c.seed = static_cast<std::uint64_t>(to_integer(key, value));
  } else if (key == "plots") {
    c.plots = to_bool(key, value);
  } else if (key == "fine_reference") {
    c.fine_reference = to_bool(key, value);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

void validate_config(const RunConfig& c) {
  if (c.equation != EquationKind::ode_demo) {
    if (c.points < 3) throw ConfigError("field 'K': need at least 3 grid points");
    if (!(c.length > 0.0)) throw ConfigError("field 'L': must be positive");
  }
  if (!(c.dt > 0.0)) throw ConfigError("field 'dt': must be positive");
  if (!(c.final_time >= 0.0)) throw ConfigError("field 'T': must be non-negative");
  (void)c.steps();
  if (c.record_stride < 0) throw ConfigError("field 'record_stride': must be >= 1");
  if (c.initial_condition.empty()) throw ConfigError("field 'initial_condition': missing");
  if (c.scheme.kind == SchemeKind::pdg && c.equation == EquationKind::ode_demo &&
      c.scheme.pdg_kind != PdgKind::quadratic && c.scheme.pdg_kind != PdgKind::avf &&
      c.scheme.pdg_kind != PdgKind::itoh_abe && c.scheme.pdg_kind != PdgKind::symmetrized_itoh_abe) {
    throw ConfigError("field 'scheme': unsupported PDG kind");
  }
}

RunConfig parse_config(std::string_view text) {
  struct Entry {
    std::string key;
    std::string value;
    int line;
  };
  std::vector<Entry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    for (const auto& e : entries) {
      if (e.key == key) {
        throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" +
                          std::string(key) + "'");
      }
    }
    entries.push_back({std::string(key), std::string(value), line_no});
    if (end == text.size()) break;
  }

  RunConfig config;
  bool has_preset = false;
  // Preset first, then overrides in file order ('L' before 'dx').
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    auto rank = [](const Entry& e) { return e.key == "preset" ? 0 : (e.key == "dx" ? 2 : 1); };
    return rank(a) < rank(b);
  });
  for (const auto& e : entries) {
    try {
      set_config_value(config, e.key, e.value);
    } catch (const ConfigError& err) {
      throw ConfigError("line " + std::to_string(e.line) + ": " + err.what());
    }
    if (e.key == "preset") has_preset = true;
  }
  if (!has_preset && config.initial_condition.empty()) {
    throw ConfigError("field 'initial_condition': required when no preset is given");
  }
  validate_config(config);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace linimp
