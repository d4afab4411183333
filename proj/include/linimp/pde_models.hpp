#pragma once

#include <memory>

#include "linimp/grid.hpp"
#include "linimp/hamiltonian_system.hpp"
#include "linimp/polarized_energy.hpp"
#include "linimp/stencil.hpp"

namespace linimp {

// All energies below drop the dx factor of the discrete integrals.

/// Camassa-Holm  u_t - u_xxt + 3 u u_x = 2 u_x u_xx + u u_xxx  on a periodic grid,
/// written as (I - D2c) U' = -Dc grad H2(U).
class CamassaHolmModel {
 public:
  explicit CamassaHolmModel(const PeriodicGrid& grid, double a_param = 0.5);

  const PeriodicGrid& grid() const { return ops_->grid; }
  double a_param() const { return a_; }
  const DifferenceOperators& operators() const { return *ops_; }

  double energy(const Vector& u) const;
  Vector gradient(const Vector& u) const;
  SparseMatrix hessian(const Vector& u) const;

  double polarized_energy(const Vector& u, const Vector& v) const;
  Vector polarized_gradient(const Vector& u, const Vector& v) const;
  SparseMatrix polarized_hessian(const Vector& u, const Vector& v) const;
  PolarizedEnergy polarized() const;

  /// 1/2 sum (u^2 + (D+ u)^2).
  double h1(const Vector& u) const;

  std::shared_ptr<const CubicHamiltonianSystem> system() const { return system_; }

 private:
  std::shared_ptr<const DifferenceOperators> ops_;
  double a_;
  std::shared_ptr<const CubicHamiltonianSystem> system_;
};

/// Korteweg-de Vries  u_t + 6 u u_x + u_xxx = 0  as U' = Dc grad H2(U).
class KdVModel {
 public:
  explicit KdVModel(const PeriodicGrid& grid, double a_param = -0.5);

  const PeriodicGrid& grid() const { return ops_->grid; }
  double a_param() const { return a_; }
  const DifferenceOperators& operators() const { return *ops_; }

  double energy(const Vector& u) const;
  Vector gradient(const Vector& u) const;
  SparseMatrix hessian(const Vector& u) const;

  double polarized_energy(const Vector& u, const Vector& v) const;
  Vector polarized_gradient(const Vector& u, const Vector& v) const;
  SparseMatrix polarized_hessian(const Vector& u, const Vector& v) const;
  PolarizedEnergy polarized() const;

  /// 1/2 sum u^2.
  double h1(const Vector& u) const;

  std::shared_ptr<const CubicHamiltonianSystem> system() const { return system_; }

 private:
  std::shared_ptr<const DifferenceOperators> ops_;
  double a_;
  std::shared_ptr<const CubicHamiltonianSystem> system_;
};

enum class Equation { kdv, camassa_holm };

double diagnostics_h1(Equation equation, const PeriodicGrid& grid, const Vector& u);

}  // namespace linimp
