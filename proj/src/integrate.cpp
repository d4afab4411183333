#include "linimp/integrate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace linimp {

bool is_two_step(SchemeKind kind) {
  return kind == SchemeKind::kahan_two_step || kind == SchemeKind::pdg ||
         kind == SchemeKind::tableau;
}

Index step_count(double dt, double duration) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("integration interval must be non-negative");
  }
  const double ratio = duration / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream msg;
    msg << "T / dt = " << ratio << " is not an integer";
    throw std::invalid_argument(msg.str());
  }
  return static_cast<Index>(rounded);
}

Stepper::Stepper(const CubicHamiltonianSystem& sys, IntegrationSettings settings)
    : sys_(&sys), settings_(std::move(settings)) {
  if (!(settings_.dt > 0.0)) throw std::invalid_argument("Stepper: dt must be positive");
  if (settings_.scheme == SchemeKind::pdg && !settings_.energy) {
    throw std::invalid_argument("Stepper: PDG scheme needs a polarised energy");
  }
  if (settings_.scheme == SchemeKind::tableau) {
    if (!settings_.tableau) throw std::invalid_argument("Stepper: tableau scheme needs a tableau");
    if (!settings_.tableau->linearly_implicit() && !settings_.allow_nonlinear_tableau) {
      throw std::invalid_argument("Stepper: tableau is not linearly implicit");
    }
  }
  if (settings_.scheme == SchemeKind::kahan_two_step && !sys.is_homogeneous()) {
    throw std::invalid_argument("Stepper: two-step Kahan needs a homogeneous cubic H");
  }
  if (settings_.midpoint_startup_substeps < 1) {
    throw std::invalid_argument("Stepper: midpoint startup needs at least one substep");
  }
}

void Stepper::start(const Vector& x0, double t0) {
  require_same_size(x0.size(), sys_->dim(), "Stepper::start");
  current_ = x0;
  previous_.reset();
  origin_ = t0;
  time_ = t0;
  steps_ = 0;
  started_ = true;
}

void Stepper::install(const Vector& x0, const Vector& x1, double t1) {
  require_same_size(x0.size(), sys_->dim(), "Stepper::install");
  require_same_size(x1.size(), sys_->dim(), "Stepper::install");
  previous_ = x0;
  current_ = x1;
  if (!started_) {
    origin_ = t1 - settings_.dt;
    steps_ = 1;
  } else {
    ++steps_;
  }
  time_ = t1;
  started_ = true;
}

void Stepper::bootstrap() {
  if (!started_) throw std::logic_error("Stepper::bootstrap before start");
  const Vector x1 = startup_step(current_);
  install(current_, x1, origin_ + static_cast<double>(steps_ + 1) * settings_.dt);
}

bool Stepper::ready() const { return started_ && (!is_two_step(settings_.scheme) || previous_); }

void Stepper::advance() {
  if (!started_) throw std::logic_error("Stepper::advance before start");
  if (is_two_step(settings_.scheme)) {
    if (!previous_) {
      throw std::logic_error("Stepper::advance: two-step scheme has no startup state installed");
    }
    Vector next = two_step(*previous_, current_);
    previous_ = std::move(current_);
    current_ = std::move(next);
  } else {
    Vector next = one_step(current_);
    previous_ = std::move(current_);
    current_ = std::move(next);
  }
  ++steps_;
  time_ = origin_ + static_cast<double>(steps_) * settings_.dt;
}

Vector Stepper::one_step(const Vector& x) const {
  switch (settings_.scheme) {
    case SchemeKind::kahan:
      return kahan_step(*sys_, x, settings_.dt);
    case SchemeKind::midpoint:
      return midpoint_step(*sys_, x, settings_.dt, settings_.newton);
    default:
      throw std::logic_error("Stepper: not a one-step scheme");
  }
}

Vector Stepper::startup_step(const Vector& x) const {
  switch (settings_.startup) {
    case Startup::kahan:
      return kahan_step(*sys_, x, settings_.dt);
    case Startup::midpoint: {
      Vector y = x;
      const double h = settings_.dt / settings_.midpoint_startup_substeps;
      for (int i = 0; i < settings_.midpoint_startup_substeps; ++i) {
        y = midpoint_step(*sys_, y, h, settings_.newton);
      }
      return y;
    }
    case Startup::given:
      if (!settings_.second_state) throw std::invalid_argument("Stepper: no given second state");
      return *settings_.second_state;
  }
  throw std::logic_error("Stepper: unknown startup");
}

Vector Stepper::two_step(const Vector& x0, const Vector& x1) const {
  switch (settings_.scheme) {
    case SchemeKind::kahan_two_step:
      return kahan_two_step(*sys_, x0, x1, settings_.dt);
    case SchemeKind::pdg:
      return pdg_scheme_step(*sys_, *settings_.energy, settings_.pdg_kind, x0, x1, settings_.dt,
                             settings_.newton);
    case SchemeKind::tableau:
      return general_two_step(*sys_, *settings_.tableau, x0, x1, settings_.dt,
                              settings_.allow_nonlinear_tableau, settings_.newton);
    default:
      throw std::logic_error("Stepper: not a two-step scheme");
  }
}

namespace {

bool blown_up(const Vector& x, double threshold) {
  if (!x.allFinite()) return true;
  return x.lpNorm<Eigen::Infinity>() > threshold;
}

template <class Error>
[[noreturn]] void rethrow_with_step(const Error& e, Index step, double time) {
  std::ostringstream msg;
  msg << "step " << step << " (t = " << time << "): " << e.what();
  throw Error(msg.str());
}

}  // namespace

Trajectory integrate(const CubicHamiltonianSystem& sys, const Vector& x0,
                     const IntegrationSettings& settings, const StepObserver& observer) {
  if (settings.record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
  const Index total = step_count(settings.dt, settings.final_time - settings.start_time);

  Trajectory out;
  Stepper stepper(sys, settings);
  stepper.start(x0, settings.start_time);
  out.times.push_back(settings.start_time);
  out.states.push_back(x0);

  auto after_step = [&](const Vector& before) -> bool {
    const Index n = stepper.steps();
    if (blown_up(stepper.current(), settings.blowup_threshold)) {
      out.blow_up_time = stepper.time();
      return false;
    }
    out.steps_taken = n;
    if (observer) observer(n, stepper.time(), before, stepper.current());
    if (n % settings.record_stride == 0 || n == total) {
      out.times.push_back(stepper.time());
      out.states.push_back(stepper.current());
    }
    return true;
  };

  try {
    if (total > 0 && is_two_step(settings.scheme)) {
      if (settings.startup == Startup::given) {
        if (!settings.second_state) throw std::invalid_argument("startup 'given' needs x1");
        stepper.install(x0, *settings.second_state, settings.start_time + settings.dt);
      } else {
        stepper.bootstrap();
      }
      if (!after_step(x0)) return out;
    }
    while (stepper.steps() < total) {
      const Vector before = stepper.current();
      stepper.advance();
      if (!after_step(before)) return out;
    }
  } catch (const SingularMatrixError& e) {
    rethrow_with_step(e, stepper.steps() + 1, stepper.time() + settings.dt);
  } catch (const ConvergenceError& e) {
    rethrow_with_step(e, stepper.steps() + 1, stepper.time() + settings.dt);
  }
  return out;
}

}  // namespace linimp
