#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "linimp/integrate.hpp"
#include "linimp/polarized_energy.hpp"
#include "linimp/tableau.hpp"

namespace linimp {

/// Invalid or unparsable run configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EquationKind { kdv, camassa_holm, ode_demo };

struct SchemeChoice {
  std::string name;
  SchemeKind kind = SchemeKind::kahan;
  PdgKind pdg_kind = PdgKind::quadratic;
  std::optional<TwoStepTableau> tableau;
};

/// mp | kahan | kahan2 | pdgm | pdgm-quadratic | pdgm-avf | pdgm-ia | pdgm-sia | tableau:<spec>
SchemeChoice parse_scheme(std::string_view text);

struct RunConfig {
  std::string preset;
  EquationKind equation = EquationKind::kdv;
  SchemeChoice scheme = parse_scheme("kahan");
  Index points = 0;
  double length = 0.0;
  double dt = 0.0;
  double final_time = 0.0;
  std::optional<double> a_param;
  Startup startup = Startup::kahan;
  std::string initial_condition;
  std::string output_dir = "out";
  /// 0 picks a stride giving about 200 recorded rows.
  Index record_stride = 0;
  std::uint64_t seed = 0;
  bool plots = false;
  bool fine_reference = false;

  double effective_a() const;
  Index steps() const;
  Index effective_stride() const;
};

/// Physics of a named preset: kdv-1soliton, kdv-2soliton, ch-1peakon, ch-2peakon, ode-demo.
RunConfig preset_config(std::string_view name);

/// Parses flat "key = value" text ('#' starts a comment). A `preset` key is
/// applied first; every other key overrides it. Throws ConfigError naming the
/// line or field.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Sets one field from its textual value (the same keys as the file format).
void set_config_value(RunConfig& config, std::string_view key, std::string_view value);

/// Checks cross-field constraints. Throws ConfigError naming the field.
void validate_config(const RunConfig& config);

std::string_view equation_name(EquationKind kind);

}  // namespace linimp
