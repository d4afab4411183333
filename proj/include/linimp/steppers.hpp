#pragma once

#include "linimp/hamiltonian_system.hpp"
#include "linimp/polarized_energy.hpp"
#include "linimp/tableau.hpp"
#include "linimp/types.hpp"

namespace linimp {

struct NewtonOptions {
  double tolerance = 1e-12;
  int max_iterations = 50;
};

/// One step of Kahan's method via the cubic/quadratic/linear split:
///   (M - dt/2 J (C(x) + Q)) x' = M x + dt/2 J (Q x + 2 c).
Vector kahan_step(const CubicHamiltonianSystem& sys, const Vector& x, double dt);

/// (x2 - x0) / (2 dt) = S H''(x1) (x0 + x2) / 4 for homogeneous cubic H.
Vector kahan_two_step(const CubicHamiltonianSystem& sys, const Vector& x0, const Vector& x1,
                      double dt);

/// Member of the alpha-tableau two-step family. Tableaus with a_33 != 0 need
/// `allow_nonlinear` and are solved by damped Newton.
Vector general_two_step(const CubicHamiltonianSystem& sys, const TwoStepTableau& tableau,
                        const Vector& x0, const Vector& x1, double dt, bool allow_nonlinear = false,
                        const NewtonOptions& newton = {});

/// (x2 - x0) / (2 dt) = S grad(x0, x1, x2) for the chosen polarised discrete gradient.
Vector pdg_scheme_step(const CubicHamiltonianSystem& sys, const PolarizedEnergy& pe, PdgKind kind,
                       const Vector& x0, const Vector& x1, double dt,
                       const NewtonOptions& newton = {});

/// Implicit midpoint rule by Newton iteration.
Vector midpoint_step(const CubicHamiltonianSystem& sys, const Vector& x, double dt,
                     const NewtonOptions& newton = {});

/// Trapezoidal rule by Newton iteration.
Vector trapezoidal_step(const CubicHamiltonianSystem& sys, const Vector& x, double dt,
                        const NewtonOptions& newton = {});

/// Average vector field method. Simpson's rule is exact for the quadratic
/// vector fields of cubic Hamiltonians.
Vector avf_step(const CubicHamiltonianSystem& sys, const Vector& x, double dt,
                const NewtonOptions& newton = {});

}  // namespace linimp
