#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "linimp/hamiltonian_system.hpp"
#include "linimp/polarized_energy.hpp"
#include "linimp/steppers.hpp"
#include "linimp/tableau.hpp"

namespace linimp {

enum class SchemeKind { midpoint, kahan, kahan_two_step, pdg, tableau };
enum class Startup { kahan, midpoint, given };

bool is_two_step(SchemeKind kind);

struct IntegrationSettings {
  SchemeKind scheme = SchemeKind::kahan;
  PdgKind pdg_kind = PdgKind::quadratic;
  std::optional<PolarizedEnergy> energy;
  std::optional<TwoStepTableau> tableau;
  Startup startup = Startup::kahan;
  /// x1 when startup == given.
  std::optional<Vector> second_state;
  int midpoint_startup_substeps = 4;
  bool allow_nonlinear_tableau = false;
  NewtonOptions newton;

  double dt = 0.0;
  double start_time = 0.0;
  double final_time = 0.0;
  Index record_stride = 1;
  double blowup_threshold = 1e8;
};

/// Number of steps T / dt. Throws std::invalid_argument unless integral within 1e-9.
Index step_count(double dt, double duration);

/// Fixed-step state machine for one scheme. Two-step schemes hold the last
/// two states and refuse to advance until the second state is installed.
class Stepper {
 public:
  Stepper(const CubicHamiltonianSystem& sys, IntegrationSettings settings);

  void start(const Vector& x0, double t0);
  /// Installs (x0, x1) for a two-step scheme; time becomes t1.
  void install(const Vector& x0, const Vector& x1, double t1);
  /// Computes x1 from x0 with the configured startup method.
  void bootstrap();
  void advance();

  bool ready() const;
  const Vector& current() const { return current_; }
  const std::optional<Vector>& previous() const { return previous_; }
  double time() const { return time_; }
  Index steps() const { return steps_; }

 private:
  Vector one_step(const Vector& x) const;
  Vector startup_step(const Vector& x) const;
  Vector two_step(const Vector& x0, const Vector& x1) const;

  const CubicHamiltonianSystem* sys_;
  IntegrationSettings settings_;
  std::optional<Vector> previous_;
  Vector current_;
  double time_ = 0.0;
  double origin_ = 0.0;
  Index steps_ = 0;
  bool started_ = false;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  std::optional<double> blow_up_time;
  Index steps_taken = 0;
};

/// Called after every step with the state before and after it.
using StepObserver =
    std::function<void(Index step, double time, const Vector& previous, const Vector& current)>;

/// Fixed-step loop from start_time to final_time. Records every
/// record_stride-th state plus the last one. Stops without error when the
/// state leaves the blow-up threshold or turns non-finite.
Trajectory integrate(const CubicHamiltonianSystem& sys, const Vector& x0,
                     const IntegrationSettings& settings, const StepObserver& observer = {});

}  // namespace linimp
