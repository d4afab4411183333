#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "linimp/grid.hpp"
#include "linimp/types.hpp"

namespace linimp {

/// An analytic reference failed its PDE-residual check. Maps to exit code 4.
class ReferenceValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pointwise analytic solution u(x, t).
using Field = std::function<double(double x, double t)>;

/// Wraps x into [-L/2, L/2).
double wrap_centered(double x, double length);

double kdv_soliton(double x, double t, double length);
/// Closed-form two-soliton of u_t + 6 u u_x + u_xxx = 0 with u(x, 0) = 6 sech^2 x,
/// summed over the periodic images x - L, x, x + L.
double kdv_two_soliton(double x, double t, double length);
/// Periodic peakon of unit speed, crest at L/2 + t.
double ch_peakon(double x, double t, double length);

/// Time up to which the periodic two-soliton image sum stays accurate.
double kdv_two_soliton_horizon(double length);

/// Analytic field of a preset, if it has one.
std::optional<Field> analytic_field(std::string_view preset, double length);

/// Speed of the travelling wave of a preset (shape and phase errors), if any.
std::optional<double> wave_speed(std::string_view preset);

/// Sampled reference of a named preset at time t, or none when the preset has
/// no analytic solution at t.
std::optional<Vector> reference_solution(std::string_view preset, double t,
                                         const PeriodicGrid& grid);

/// Largest |u_t + 6 u u_x + u_xxx| over the sample points, by fourth-order
/// finite differences.
double kdv_residual(const Field& u, const std::vector<double>& xs, const std::vector<double>& ts);

/// Largest |u_t - u_xxt + 3 u u_x - 2 u_x u_xx - u u_xxx| over the sample points.
double ch_residual(const Field& u, const std::vector<double>& xs, const std::vector<double>& ts);

inline constexpr double kReferenceResidualTolerance = 1e-3;

/// Checks the analytic field of a preset against its PDE on [0, t_max].
/// Throws ReferenceValidationError when the residual is too large. Presets
/// without an analytic field pass trivially.
void validate_reference(std::string_view preset, double length, double t_max);

/// Initial state for a named preset or an expression in x (and L).
Vector initial_state(std::string_view initial_condition, const PeriodicGrid& grid);

}  // namespace linimp
