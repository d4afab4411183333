#include "linimp/steppers.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "linimp/linear_solve.hpp"

namespace linimp {
namespace {

using Residual = std::function<Vector(const Vector&)>;
using Jacobian = std::function<SparseMatrix(const Vector&)>;

void check_step_size(double dt, const char* what) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument(std::string(what) + ": step size must be finite and >= 0");
  }
}

double inf_norm(const Vector& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

Vector solve_step(const SparseMatrix& a, const Vector& b, double dt, const char* what) {
  try {
    return solve_linear(a, b);
  } catch (const SingularMatrixError& e) {
    std::ostringstream msg;
    msg << what << " (dt = " << dt << "): " << e.what();
    throw SingularMatrixError(msg.str());
  }
}

// Solves residual(z) = 0 when the residual is affine in z: one linear solve.
Vector affine_solve(const Residual& residual, const SparseMatrix& jacobian, const Vector& guess,
                    double dt, const char* what) {
  return guess - solve_step(jacobian, residual(guess), dt, what);
}

// Damped Newton. Converged when the residual drops below tol * scale or the
// update drops below tol * max(1, |z|).
Vector newton_solve(const Residual& residual, const Jacobian& jacobian, Vector z, double scale,
                    const NewtonOptions& opts, double dt, const char* what) {
  Vector f = residual(z);
  double norm = inf_norm(f);
  const double target = opts.tolerance * std::max(scale, 1e-300);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (!std::isfinite(norm)) break;
    if (norm <= target) return z;
    const Vector delta = solve_step(jacobian(z), -f, dt, what);
    double t = 1.0;
    Vector trial = z + delta;
    Vector f_trial = residual(trial);
    double trial_norm = inf_norm(f_trial);
    for (int halving = 0; halving < 10 && !(trial_norm <= norm); ++halving) {
      t *= 0.5;
      trial = z + t * delta;
      f_trial = residual(trial);
      trial_norm = inf_norm(f_trial);
    }
    const bool small_update =
        t * inf_norm(delta) <= opts.tolerance * std::max(1.0, inf_norm(trial));
    z = std::move(trial);
    f = std::move(f_trial);
    norm = trial_norm;
    if (small_update && std::isfinite(norm)) return z;
  }
  std::ostringstream msg;
  msg << what << ": Newton did not converge in " << opts.max_iterations
      << " iterations (dt = " << dt << ", residual " << norm << ", target " << target << ")";
  throw ConvergenceError(msg.str());
}

// Finite-difference Jacobian of a vector function, column by column.
SparseMatrix numerical_jacobian(const std::function<Vector(const Vector&)>& g, const Vector& z) {
  const Index d = z.size();
  const Vector g0 = g(z);
  DenseMatrix jac(g0.size(), d);
  for (Index j = 0; j < d; ++j) {
    Vector shifted = z;
    const double h = 1e-7 * std::max(1.0, std::abs(z[j]));
    shifted[j] += h;
    jac.col(j) = (g(shifted) - g0) / (shifted[j] - z[j]);
  }
  return jac.sparseView();
}

double state_scale(const CubicHamiltonianSystem& sys, const Vector& x, const Vector& g, double dt) {
  return inf_norm(sys.mass() * x) + dt * inf_norm(sys.skew() * g);
}

}  // namespace

Vector kahan_step(const CubicHamiltonianSystem& sys, const Vector& x, double dt) {
  require_same_size(x.size(), sys.dim(), "kahan_step");
  check_step_size(dt, "kahan_step");
  if (dt == 0.0) return x;
  const SparseMatrix& m = sys.mass();
  const SparseMatrix& j = sys.skew();
  const SparseMatrix a = m - (0.5 * dt) * (j * sys.hessian(x));
  const Vector rhs = m * x + (0.5 * dt) * (j * sys.beta(x));
  return solve_step(a, rhs, dt, "kahan_step");
}

Vector kahan_two_step(const CubicHamiltonianSystem& sys, const Vector& x0, const Vector& x1,
                      double dt) {
  require_same_size(x0.size(), sys.dim(), "kahan_two_step");
  require_same_size(x1.size(), sys.dim(), "kahan_two_step");
  check_step_size(dt, "kahan_two_step");
  if (!sys.is_homogeneous()) {
    throw std::invalid_argument("kahan_two_step: H is not homogeneous cubic; homogenize first");
  }
  const SparseMatrix& m = sys.mass();
  const SparseMatrix jc = sys.skew() * sys.cubic_hessian(x1);
  const SparseMatrix a = m - (0.5 * dt) * jc;
  const Vector rhs = m * x0 + (0.5 * dt) * (jc * x0);
  return solve_step(a, rhs, dt, "kahan_two_step");
}

Vector general_two_step(const CubicHamiltonianSystem& sys, const TwoStepTableau& tableau,
                        const Vector& x0, const Vector& x1, double dt, bool allow_nonlinear,
                        const NewtonOptions& newton) {
  require_same_size(x0.size(), sys.dim(), "general_two_step");
  require_same_size(x1.size(), sys.dim(), "general_two_step");
  check_step_size(dt, "general_two_step");
  if (!tableau.linearly_implicit() && !allow_nonlinear) {
    throw std::invalid_argument(
        "general_two_step: tableau has a_33 != 0; enable the nonlinear fallback to use it");
  }
  const auto& a = tableau.alpha;
  const SparseMatrix& m = sys.mass();
  const SparseMatrix& j = sys.skew();
  const SparseMatrix& q = sys.quadratic_hessian();

  auto combination = [&](const Vector& z) {
    const Vector* p[3] = {&x0, &x1, &z};
    Vector g = Vector::Zero(sys.dim());
    for (int i = 0; i < 3; ++i) {
      double row = 0.0;
      for (int k = 0; k < 3; ++k) row += a[i][k];
      if (row == 0.0) continue;
      const SparseMatrix h = sys.hessian(*p[i]);
      for (int k = 0; k < 3; ++k) {
        if (a[i][k] != 0.0) g += a[i][k] * (h * *p[k]);
      }
      g += row * sys.beta(*p[i]);
    }
    return g;
  };
  auto residual = [&](const Vector& z) -> Vector {
    return m * (z - x0) - (2.0 * dt) * (j * combination(z));
  };
  // d/dz of the tableau combination.
  auto jacobian = [&](const Vector& z) {
    const Vector* p[3] = {&x0, &x1, &z};
    SparseMatrix dg(sys.dim(), sys.dim());
    const double last_row = a[2][0] + a[2][1] + a[2][2];
    for (int k = 0; k < 2; ++k) {
      if (a[2][k] != 0.0) dg += a[2][k] * sys.cubic_hessian(*p[k]);
      if (a[k][2] != 0.0) dg += a[k][2] * sys.hessian(*p[k]);
    }
    if (a[2][2] != 0.0) dg += a[2][2] * (2.0 * sys.cubic_hessian(z) + q);
    if (last_row != 0.0) dg += last_row * q;
    return SparseMatrix(m - (2.0 * dt) * (j * dg));
  };

  if (dt == 0.0) return x0;
  if (tableau.linearly_implicit()) {
    return affine_solve(residual, jacobian(x1), x1, dt, "general_two_step");
  }
  const double scale = state_scale(sys, x0, combination(x1), 2.0 * dt);
  return newton_solve(residual, jacobian, x1, scale, newton, dt, "general_two_step");
}

Vector pdg_scheme_step(const CubicHamiltonianSystem& sys, const PolarizedEnergy& pe, PdgKind kind,
                       const Vector& x0, const Vector& x1, double dt, const NewtonOptions& newton) {
  require_same_size(x0.size(), sys.dim(), "pdg_scheme_step");
  require_same_size(x1.size(), sys.dim(), "pdg_scheme_step");
  check_step_size(dt, "pdg_scheme_step");
  if (dt == 0.0) return x0;
  const SparseMatrix& m = sys.mass();
  const SparseMatrix& j = sys.skew();

  auto gradient = [&](const Vector& z) { return polarized_discrete_gradient(kind, pe, x0, x1, z); };
  auto residual = [&](const Vector& z) -> Vector {
    return m * (z - x0) - (2.0 * dt) * (j * gradient(z));
  };

  const bool analytic = static_cast<bool>(pe.hessian_first) &&
                        (kind == PdgKind::quadratic || kind == PdgKind::avf);
  auto gradient_jacobian = [&](const Vector& z) -> SparseMatrix {
    if (!analytic) return numerical_jacobian(gradient, z);
    if (kind == PdgKind::quadratic) return pe.hessian_first(0.5 * (x0 + z), x1);
    // 2 int_0^1 (1 - s) Hxx(s x0 + (1 - s) z, x1) ds; exact for quadratic energies.
    const double nodes[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
    SparseMatrix acc(sys.dim(), sys.dim());
    for (double s : nodes) acc += (1.0 - s) * pe.hessian_first(s * x0 + (1.0 - s) * z, x1);
    return acc;
  };
  auto jacobian = [&](const Vector& z) {
    return SparseMatrix(m - (2.0 * dt) * (j * gradient_jacobian(z)));
  };

  if (analytic && pe.quadratic_in_each()) {
    return affine_solve(residual, jacobian(x1), x1, dt, "pdg_scheme_step");
  }
  const double scale = state_scale(sys, x0, gradient(x1), 2.0 * dt);
  return newton_solve(residual, jacobian, x1, scale, newton, dt, "pdg_scheme_step");
}

Vector midpoint_step(const CubicHamiltonianSystem& sys, const Vector& x, double dt,
                     const NewtonOptions& newton) {
  require_same_size(x.size(), sys.dim(), "midpoint_step");
  check_step_size(dt, "midpoint_step");
  if (dt == 0.0) return x;
  const SparseMatrix& m = sys.mass();
  const SparseMatrix& j = sys.skew();
  auto residual = [&](const Vector& z) -> Vector {
    return m * (z - x) - dt * (j * sys.gradient(0.5 * (x + z)));
  };
  auto jacobian = [&](const Vector& z) {
    return SparseMatrix(m - (0.5 * dt) * (j * sys.hessian(0.5 * (x + z))));
  };
  const Vector g = sys.gradient(x);
  const Vector guess = x + dt * sys.apply_structure(g);
  return newton_solve(residual, jacobian, guess, state_scale(sys, x, g, dt), newton, dt,
                      "midpoint_step");
}

Vector trapezoidal_step(const CubicHamiltonianSystem& sys, const Vector& x, double dt,
                        const NewtonOptions& newton) {
  require_same_size(x.size(), sys.dim(), "trapezoidal_step");
  check_step_size(dt, "trapezoidal_step");
  if (dt == 0.0) return x;
  const SparseMatrix& m = sys.mass();
  const SparseMatrix& j = sys.skew();
  const Vector g = sys.gradient(x);
  auto residual = [&](const Vector& z) -> Vector {
    return m * (z - x) - (0.5 * dt) * (j * (g + sys.gradient(z)));
  };
  auto jacobian = [&](const Vector& z) {
    return SparseMatrix(m - (0.5 * dt) * (j * sys.hessian(z)));
  };
  const Vector guess = x + dt * sys.apply_structure(g);
  return newton_solve(residual, jacobian, guess, state_scale(sys, x, g, dt), newton, dt,
                      "trapezoidal_step");
}

Vector avf_step(const CubicHamiltonianSystem& sys, const Vector& x, double dt,
                const NewtonOptions& newton) {
  require_same_size(x.size(), sys.dim(), "avf_step");
  check_step_size(dt, "avf_step");
  if (dt == 0.0) return x;
  const SparseMatrix& m = sys.mass();
  const SparseMatrix& j = sys.skew();
  const Vector g = sys.gradient(x);
  auto residual = [&](const Vector& z) -> Vector {
    const Vector mean = (g + 4.0 * sys.gradient(0.5 * (x + z)) + sys.gradient(z)) / 6.0;
    return m * (z - x) - dt * (j * mean);
  };
  auto jacobian = [&](const Vector& z) {
    const SparseMatrix dmean = (2.0 * sys.hessian(0.5 * (x + z)) + sys.hessian(z)) / 6.0;
    return SparseMatrix(m - dt * (j * dmean));
  };
  const Vector guess = x + dt * sys.apply_structure(g);
  return newton_solve(residual, jacobian, guess, state_scale(sys, x, g, dt), newton, dt,
                      "avf_step");
}

}  // namespace linimp
