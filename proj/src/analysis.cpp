#include "linimp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace linimp {

// ---------------------------------------------------------------- error metrics

Vector shift_profile(const Vector& profile, double tau, const PeriodicGrid& grid) {
  require_same_size(profile.size(), grid.points(), "shift_profile");
  const Index n = grid.points();
  // Sample k of the result is profile(x_k - tau).
  const double s = tau / grid.spacing();
  const double whole = std::floor(s);
  const double frac = s - whole;
  const Index m = static_cast<Index>(whole);
  Vector out(n);
  for (Index k = 0; k < n; ++k) {
    const double lo = profile[grid.wrap(k - m)];
    const double hi = profile[grid.wrap(k - m - 1)];
    out[k] = (1.0 - frac) * lo + frac * hi;
  }
  return out;
}

ShapePhase shape_phase_error(const Vector& u, const Vector& reference_profile, double wave_speed,
                             double t, const PeriodicGrid& grid, bool dx_weighted) {
  require_same_size(u.size(), grid.points(), "shape_phase_error");
  require_same_size(reference_profile.size(), grid.points(), "shape_phase_error");
  const Index n = grid.points();
  const double weight = dx_weighted ? grid.spacing() : 1.0;

  auto objective_at_grid_shift = [&](Index m) {
    double sum = 0.0;
    for (Index k = 0; k < n; ++k) {
      const double d = u[k] - reference_profile[grid.wrap(k - m)];
      sum += d * d;
    }
    return weight * sum;
  };

  Index best = 0;
  double best_value = objective_at_grid_shift(0);
  for (Index m = 1; m < n; ++m) {
    const double v = objective_at_grid_shift(m);
    if (v < best_value) {
      best_value = v;
      best = m;
    }
  }

  double offset = 0.0;
  double shape = best_value;
  const double floor = 1e-28 * (weight * u.squaredNorm() + 1.0);
  if (best_value > floor) {
    const double left = objective_at_grid_shift(best - 1);
    const double right = objective_at_grid_shift(best + 1);
    const double curvature = left - 2.0 * best_value + right;
    if (curvature > 0.0) {
      offset = std::clamp(0.5 * (left - right) / curvature, -1.0, 1.0);
      const double refined =
          weight * (u - shift_profile(reference_profile, (best + offset) * grid.spacing(), grid))
                       .squaredNorm();
      shape = std::min(shape, refined);
    }
  }

  ShapePhase out;
  out.shape = shape;
  out.tau_star = std::fmod((static_cast<double>(best) + offset) * grid.spacing(), grid.length());
  if (out.tau_star < 0.0) out.tau_star += grid.length();
  double d = std::fmod(out.tau_star - wave_speed * t, grid.length());
  if (d < 0.0) d += grid.length();
  out.phase = std::min(d, grid.length() - d);
  return out;
}

double global_error(const Vector& u, const Vector& reference, const PeriodicGrid& grid,
                    bool dx_weighted) {
  require_same_size(u.size(), reference.size(), "global_error");
  const double norm = (u - reference).norm();
  return dx_weighted ? std::sqrt(grid.spacing()) * norm : norm;
}

double relative_error(double value, double initial) {
  const double diff = std::abs(value - initial);
  return initial == 0.0 ? diff : diff / std::abs(initial);
}

// ------------------------------------------------------- von Neumann analysis

namespace {
constexpr Complex kI{0.0, 1.0};
}

Complex amplification_kahan(double lambda, double theta) {
  const Complex z = kI * lambda * (std::cos(theta) - 1.0) * std::sin(theta);
  return (1.0 - z) / (1.0 + z);
}

RootPair amplification_pdgm(double lambda, double theta) {
  const double b = lambda * (1.0 - std::cos(theta)) * std::sin(theta);
  const double s = std::sqrt(1.0 + 8.0 * b * b);
  const double den = 1.0 + 9.0 * b * b;
  return {Complex(3.0 * b * b + s, b * (3.0 * s - 1.0)) / den,
          Complex(3.0 * b * b - s, -b * (3.0 * s + 1.0)) / den};
}

double kahan_amplification_residual(Complex g, double lambda, double theta) {
  const Complex z = kI * lambda * (std::cos(theta) - 1.0) * std::sin(theta);
  return std::abs((1.0 + z) * g + z - 1.0);
}

double pdgm_amplification_residual(Complex g, double lambda, double theta) {
  const Complex z = kI * lambda * (std::cos(theta) - 1.0) * std::sin(theta);
  return std::abs(g * g - 1.0 + (3.0 * g * g - 2.0 * g + 3.0) * z);
}

AmplificationResult amplification(StabilityMethod method, double lambda, double theta) {
  AmplificationResult r;
  r.lambda = lambda;
  r.theta = theta;
  if (method == StabilityMethod::kahan) {
    const Complex g = amplification_kahan(lambda, theta);
    r.roots = {g};
    r.residuals = {kahan_amplification_residual(g, lambda, theta)};
  } else {
    const RootPair pair = amplification_pdgm(lambda, theta);
    r.roots = {pair.first, pair.second};
    r.residuals = {pdgm_amplification_residual(pair.first, lambda, theta),
                   pdgm_amplification_residual(pair.second, lambda, theta)};
  }
  for (const Complex& g : r.roots) r.moduli.push_back(std::abs(g));
  return r;
}

std::vector<AmplificationResult> stability_grid(StabilityMethod method, int n_lambda, int n_theta,
                                                double lambda_max) {
  if (n_lambda < 1 || n_theta < 1) throw std::invalid_argument("stability grid must be non-empty");
  std::vector<AmplificationResult> out;
  out.reserve(static_cast<std::size_t>(n_lambda) * static_cast<std::size_t>(n_theta));
  for (int i = 1; i <= n_lambda; ++i) {
    const double lambda = lambda_max * i / n_lambda;
    for (int j = 0; j < n_theta; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / n_theta;
      out.push_back(amplification(method, lambda, theta));
    }
  }
  return out;
}

// -------------------------------------------------------------- dispersion

double omega_kahan(double lambda, double xi) {
  return 2.0 * std::atan(lambda * (1.0 - std::cos(xi)) * std::sin(xi));
}

double omega_pdgm(double lambda, double xi, double* residual, bool* ok) {
  const double r = lambda * (1.0 - std::cos(xi)) * std::sin(xi);
  auto f = [r](double w) { return std::sin(w) - r * (3.0 * std::cos(w) - 1.0); };
  double lo = 0.0;
  double hi = std::numbers::pi;
  double f_lo = f(lo);
  const double f_hi = f(hi);
  bool bracketed = true;
  double root = 0.0;
  if (f_lo == 0.0) {
    root = lo;
  } else if (f_lo * f_hi > 0.0) {
    bracketed = false;
    root = std::nan("");
  } else {
    for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double f_mid = f(mid);
      if (f_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((f_mid < 0.0) == (f_lo < 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    root = std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
  }
  const double res = bracketed ? std::abs(f(root)) : std::nan("");
  if (residual) *residual = res;
  if (ok) *ok = bracketed && res < 1e-12;
  return root;
}

std::vector<DispersionSample> dispersion_curves(double lambda, const std::vector<double>& xi) {
  std::vector<DispersionSample> out;
  out.reserve(xi.size());
  for (double x : xi) {
    if (x < 0.0 || x > std::numbers::pi) {
      throw std::invalid_argument("dispersion_curves: xi must lie in [0, pi]");
    }
    DispersionSample s;
    s.xi = x;
    s.omega_exact = x * x * x;
    s.omega_kahan = omega_kahan(lambda, x);
    s.omega_pdgm = omega_pdgm(lambda, x, &s.pdgm_residual, &s.pdgm_ok);
    out.push_back(s);
  }
  return out;
}

}  // namespace linimp
