#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linimp/config.hpp"
#include "linimp/types.hpp"

namespace linimp {

/// Output could not be written. Maps to exit code 1.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recorded trajectory plus per-row diagnostics. Missing values are NaN.
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<double> h2;
  /// Polarised invariant on (U^{n-1}, U^n); NaN in row 0.
  std::vector<double> h2_polarized;
  std::vector<double> h1;
  std::vector<double> shape_error;
  std::vector<double> phase_error;
  std::vector<double> global_error;
  std::vector<double> rel_energy_error;

  std::optional<double> blow_up_time;
  Index steps_taken = 0;
  /// Largest relative change of the polarised invariant over all steps.
  double max_invariant_drift = 0.0;
  /// Largest energy in Fourier modes |m| > K/4 over the recorded rows.
  double max_high_frequency_energy = 0.0;
};

/// Integrates the configured problem and computes diagnostics. With
/// `write_files`, writes states.csv, diagnostics.csv (and SVG plots when
/// config.plots) into config.output_dir.
TrajectoryRecord run(const RunConfig& config, bool write_files = true);

struct SweepRow {
  std::string value;
  bool completed = false;
  std::optional<double> blow_up_time;
  double max_invariant_drift = std::numeric_limits<double>::quiet_NaN();
  double final_global_error = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

/// Runs the base config once per value of `parameter` (dt, a_param or K).
/// Failures are recorded per row. Writes sweep_<parameter>.csv into the base
/// output directory and each row's CSVs into a subdirectory.
std::vector<SweepRow> sweep(const RunConfig& base, const std::string& parameter,
                            const std::vector<std::string>& values, bool write_files = true);

/// Shortest round-trip decimal form; empty for NaN.
std::string format_number(double value);

std::string states_csv(const TrajectoryRecord& record);
std::string diagnostics_csv(const TrajectoryRecord& record);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace linimp
