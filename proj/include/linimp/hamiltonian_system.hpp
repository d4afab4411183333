#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "linimp/types.hpp"

namespace linimp {

/// Ingredients of a Hamiltonian ODE  M x' = J grad H(x)  with cubic H.
///
/// The structure operator is S = M^{-1} J. M must be symmetric positive
/// definite and commute with the skew matrix J so that S is skew; leaving
/// `mass` empty means M = I.
///
/// H splits as H3 + H2 + H1 with
///   hess H3(x) = cubic_hessian(x)   (linear in x, C(x) y == C(y) x)
///   hess H2    = quadratic_hessian  (Q, constant symmetric)
///   grad H1    = linear_gradient    (c, constant)
/// `energy` and `gradient` may be given explicitly (e.g. literal formulas of a
/// discretization); otherwise they are derived from the split.
struct CubicSystemParts {
  Index dim = 0;
  SparseMatrix skew;
  std::optional<SparseMatrix> mass;
  std::function<SparseMatrix(const Vector&)> cubic_hessian;
  SparseMatrix quadratic_hessian;
  Vector linear_gradient;
  std::function<double(const Vector&)> energy;
  std::function<Vector(const Vector&)> gradient;
};

class CubicHamiltonianSystem {
 public:
  explicit CubicHamiltonianSystem(CubicSystemParts parts);

  Index dim() const { return parts_.dim; }

  const SparseMatrix& skew() const { return parts_.skew; }
  bool has_mass() const { return parts_.mass.has_value(); }
  /// M, or the identity.
  const SparseMatrix& mass() const { return mass_; }

  double energy(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  SparseMatrix hessian(const Vector& x) const;
  SparseMatrix cubic_hessian(const Vector& x) const;
  const SparseMatrix& quadratic_hessian() const { return parts_.quadratic_hessian; }
  const Vector& linear_gradient() const { return parts_.linear_gradient; }

  /// beta(x) = 2 grad H(x) - H''(x) x = Q x + 2 c.
  Vector beta(const Vector& x) const;

  /// True when Q and c vanish, i.e. H is a homogeneous cubic.
  bool is_homogeneous() const { return homogeneous_; }

  /// S g = M^{-1} J g.
  Vector apply_structure(const Vector& g) const;
  Vector solve_mass(const Vector& rhs) const;

  /// Dense S. Meant for checks on small systems.
  DenseMatrix structure_matrix() const;

 private:
  struct MassFactor;

  CubicSystemParts parts_;
  SparseMatrix mass_;
  bool homogeneous_ = false;
  std::shared_ptr<const MassFactor> mass_factor_;
};

/// f(x) = S grad H(x).
Vector vector_field(const CubicHamiltonianSystem& sys, const Vector& x);

/// Extension to d + 1 variables making H homogeneous cubic:
///   Hbar(x0, x) = H3(x) + x0 * (x^T Q x / 2) + x0^2 * (c . x)
/// with zero first row and column in the structure. Constant terms of H are
/// dropped, so Hbar(1, x) = H(x) - H(0).
class HomogenizedSystem {
 public:
  explicit HomogenizedSystem(std::shared_ptr<const CubicHamiltonianSystem> base);

  const CubicHamiltonianSystem& base() const { return *base_; }
  const CubicHamiltonianSystem& extended() const { return extended_; }

  /// (1, x).
  Vector lift(const Vector& x) const;
  /// Drops the auxiliary coordinate.
  Vector project(const Vector& xbar) const;

 private:
  std::shared_ptr<const CubicHamiltonianSystem> base_;
  CubicHamiltonianSystem extended_;
};

HomogenizedSystem homogenize(std::shared_ptr<const CubicHamiltonianSystem> sys);

}  // namespace linimp
