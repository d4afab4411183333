#pragma once

#include <complex>
#include <vector>

#include "linimp/grid.hpp"
#include "linimp/types.hpp"

namespace linimp {

// ---------------------------------------------------------------- error metrics

struct ShapePhase {
  double shape = 0.0;     // min over shifts of |U - u(. - tau)|^2
  double tau_star = 0.0;  // minimizing shift, in [0, L)
  double phase = 0.0;     // |tau* - c t| reduced to [0, L/2]
};

/// Profile translated by tau (periodic, linear interpolation between nodes).
Vector shift_profile(const Vector& profile, double tau, const PeriodicGrid& grid);

/// Shape and phase error against a travelling profile of speed c. Shifts are
/// searched on the grid, then refined by a parabola through the best shift
/// and its neighbours. With `dx_weighted` the squared norm carries a dx factor.
ShapePhase shape_phase_error(const Vector& u, const Vector& reference_profile, double wave_speed,
                             double t, const PeriodicGrid& grid, bool dx_weighted = false);

/// |U - reference|_2, optionally dx-weighted.
double global_error(const Vector& u, const Vector& reference, const PeriodicGrid& grid,
                    bool dx_weighted = false);

/// |value - initial| / |initial|; returns |value - initial| when initial is 0.
double relative_error(double value, double initial);

struct ErrorReport {
  double time = 0.0;
  double shape_error = 0.0;
  double phase_error = 0.0;
  double global_error = 0.0;
  double rel_energy_error = 0.0;
  double rel_polarized_invariant_error = 0.0;
};

// ------------------------------------------------------- von Neumann analysis

using Complex = std::complex<double>;

/// Amplification factor of Kahan's method for u_t + u_xxx = 0, lambda = dt / dx^3.
Complex amplification_kahan(double lambda, double theta);

struct RootPair {
  Complex first;
  Complex second;
};

/// Both roots of the PDGM amplification polynomial.
RootPair amplification_pdgm(double lambda, double theta);

/// Residual of (1 + i l (cos t - 1) sin t) g + i l (cos t - 1) sin t - 1.
double kahan_amplification_residual(Complex g, double lambda, double theta);

/// Residual of g^2 - 1 + i l (3 g^2 - 2 g + 3)(cos t - 1) sin t.
double pdgm_amplification_residual(Complex g, double lambda, double theta);

enum class StabilityMethod { kahan, pdgm };

struct AmplificationResult {
  double theta = 0.0;
  double lambda = 0.0;
  std::vector<Complex> roots;
  std::vector<double> moduli;
  std::vector<double> residuals;
};

AmplificationResult amplification(StabilityMethod method, double lambda, double theta);

/// lambda_i = lambda_max * i / n_lambda (i = 1..n_lambda),
/// theta_j = 2 pi j / n_theta (j = 0..n_theta-1).
std::vector<AmplificationResult> stability_grid(StabilityMethod method, int n_lambda, int n_theta,
                                                double lambda_max);

// -------------------------------------------------------------- dispersion

struct DispersionSample {
  double xi = 0.0;
  double omega_exact = 0.0;
  double omega_kahan = 0.0;
  double omega_pdgm = 0.0;
  double pdgm_residual = 0.0;
  bool pdgm_ok = true;  // false when the bisection bracket or residual failed
};

/// Root of sin w = lambda (1 - cos xi)(3 cos w - 1) sin xi on [0, pi] by bisection.
/// Sets `ok` to false when no sign change brackets a root.
double omega_pdgm(double lambda, double xi, double* residual = nullptr, bool* ok = nullptr);

/// 2 atan(lambda (1 - cos xi) sin xi).
double omega_kahan(double lambda, double xi);

std::vector<DispersionSample> dispersion_curves(double lambda, const std::vector<double>& xi);

}  // namespace linimp
