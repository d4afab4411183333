#pragma once

#include <functional>
#include <memory>

#include "linimp/hamiltonian_system.hpp"
#include "linimp/types.hpp"

namespace linimp {

/// Symmetric two-argument energy Ht(x, y) with Ht(x, x) = H(x).
struct PolarizedEnergy {
  std::function<double(const Vector&, const Vector&)> value;
  /// Gradient with respect to the first argument.
  std::function<Vector(const Vector&, const Vector&)> gradient_first;
  /// Hessian with respect to the first argument. Optional; when missing,
  /// implicit steps fall back to a finite-difference Jacobian.
  std::function<SparseMatrix(const Vector&, const Vector&)> hessian_first;
  /// Polynomial degree of Ht in its first argument.
  int degree_in_first = 2;

  bool quadratic_in_each() const { return degree_in_first <= 2; }
};

/// Ht(x, y) = x^T H''((x + y) / 2) y / 6 for a homogeneous cubic H, the
/// invariant preserved by Kahan's method. For non-homogeneous H the same
/// expression is taken on the homogenized system at (1, x), (1, y).
PolarizedEnergy kahan_polarized_energy(std::shared_ptr<const CubicHamiltonianSystem> sys);

/// Kahan's invariant for consecutive states of any cubic system. Non-homogeneous
/// systems are evaluated through the homogenized extension at (1, x), (1, y).
double kahan_invariant(const CubicHamiltonianSystem& sys, const Vector& x, const Vector& y);

enum class PdgKind { quadratic, avf, itoh_abe, symmetrized_itoh_abe };

/// 2 grad_x Ht((x + z) / 2, y). Requires an energy quadratic in each argument.
Vector pdg_quadratic(const PolarizedEnergy& pe, const Vector& x, const Vector& y, const Vector& z);

/// 2 int_0^1 grad_x Ht(s x + (1 - s) z, y) ds by Gauss-Legendre quadrature.
/// `nodes == 0` picks the smallest rule exact for the energy's degree.
Vector pdg_avf(const PolarizedEnergy& pe, const Vector& x, const Vector& y, const Vector& z,
               int nodes = 0);

/// Coordinate-increment (Itoh-Abe) polarised discrete gradient.
Vector pdg_itoh_abe(const PolarizedEnergy& pe, const Vector& x, const Vector& y, const Vector& z);

/// Average of the Itoh-Abe gradient at (x, y, z) and (z, y, x).
Vector pdg_itoh_abe_symmetrized(const PolarizedEnergy& pe, const Vector& x, const Vector& y,
                                const Vector& z);

Vector polarized_discrete_gradient(PdgKind kind, const PolarizedEnergy& pe, const Vector& x,
                                   const Vector& y, const Vector& z);

}  // namespace linimp
