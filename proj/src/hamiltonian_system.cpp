#include "linimp/hamiltonian_system.hpp"

#include <Eigen/SparseCholesky>

#include <stdexcept>
#include <vector>

namespace linimp {

struct CubicHamiltonianSystem::MassFactor {
  Eigen::SimplicialLDLT<SparseMatrix> ldlt;
};

CubicHamiltonianSystem::CubicHamiltonianSystem(CubicSystemParts parts) : parts_(std::move(parts)) {
  const Index d = parts_.dim;
  if (d <= 0) throw std::invalid_argument("Hamiltonian system needs a positive dimension");
  if (parts_.skew.rows() != d || parts_.skew.cols() != d) {
    throw DimensionError("Hamiltonian system: skew matrix must be " + std::to_string(d) + "x" +
                         std::to_string(d));
  }
  if (!parts_.cubic_hessian) throw std::invalid_argument("Hamiltonian system: missing cubic Hessian");
  if (parts_.quadratic_hessian.rows() == 0) parts_.quadratic_hessian = SparseMatrix(d, d);
  if (parts_.linear_gradient.size() == 0) parts_.linear_gradient = Vector::Zero(d);
  if (parts_.quadratic_hessian.rows() != d || parts_.quadratic_hessian.cols() != d) {
    throw DimensionError("Hamiltonian system: quadratic Hessian has the wrong shape");
  }
  require_same_size(parts_.linear_gradient.size(), d, "Hamiltonian system linear gradient");
  parts_.skew.makeCompressed();
  parts_.quadratic_hessian.makeCompressed();

  homogeneous_ = parts_.quadratic_hessian.norm() == 0.0 && parts_.linear_gradient.isZero(0.0);

  if (parts_.mass) {
    if (parts_.mass->rows() != d || parts_.mass->cols() != d) {
      throw DimensionError("Hamiltonian system: mass matrix has the wrong shape");
    }
    mass_ = *parts_.mass;
    mass_.makeCompressed();
    auto factor = std::make_shared<MassFactor>();
    factor->ldlt.compute(mass_);
    if (factor->ldlt.info() != Eigen::Success) {
      throw SingularMatrixError("Hamiltonian system: mass matrix is not positive definite");
    }
    mass_factor_ = std::move(factor);
  } else {
    mass_ = SparseMatrix(d, d);
    mass_.setIdentity();
  }
}

double CubicHamiltonianSystem::energy(const Vector& x) const {
  require_same_size(x.size(), dim(), "energy");
  if (parts_.energy) return parts_.energy(x);
  const Vector cx = parts_.cubic_hessian(x) * x;
  return x.dot(cx) / 6.0 + 0.5 * x.dot(parts_.quadratic_hessian * x) +
         parts_.linear_gradient.dot(x);
}

Vector CubicHamiltonianSystem::gradient(const Vector& x) const {
  require_same_size(x.size(), dim(), "gradient");
  if (parts_.gradient) return parts_.gradient(x);
  return 0.5 * (parts_.cubic_hessian(x) * x) + parts_.quadratic_hessian * x +
         parts_.linear_gradient;
}

SparseMatrix CubicHamiltonianSystem::cubic_hessian(const Vector& x) const {
  require_same_size(x.size(), dim(), "cubic_hessian");
  return parts_.cubic_hessian(x);
}

SparseMatrix CubicHamiltonianSystem::hessian(const Vector& x) const {
  return SparseMatrix(cubic_hessian(x) + parts_.quadratic_hessian);
}

Vector CubicHamiltonianSystem::beta(const Vector& x) const {
  require_same_size(x.size(), dim(), "beta");
  return parts_.quadratic_hessian * x + 2.0 * parts_.linear_gradient;
}

Vector CubicHamiltonianSystem::solve_mass(const Vector& rhs) const {
  require_same_size(rhs.size(), dim(), "solve_mass");
  if (!mass_factor_) return rhs;
  return mass_factor_->ldlt.solve(rhs);
}

Vector CubicHamiltonianSystem::apply_structure(const Vector& g) const {
  require_same_size(g.size(), dim(), "apply_structure");
  return solve_mass(parts_.skew * g);
}

DenseMatrix CubicHamiltonianSystem::structure_matrix() const {
  DenseMatrix j(parts_.skew);
  if (!mass_factor_) return j;
  return mass_factor_->ldlt.solve(j);
}

Vector vector_field(const CubicHamiltonianSystem& sys, const Vector& x) {
  return sys.apply_structure(sys.gradient(x));
}

namespace {

SparseMatrix border(const SparseMatrix& inner, double corner) {
  const Index d = inner.rows();
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(inner.nonZeros()) + 1);
  if (corner != 0.0) entries.emplace_back(0, 0, corner);
  for (Index col = 0; col < inner.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(inner, col); it; ++it) {
      entries.emplace_back(it.row() + 1, it.col() + 1, it.value());
    }
  }
  SparseMatrix out(d + 1, d + 1);
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

CubicSystemParts extend_parts(const std::shared_ptr<const CubicHamiltonianSystem>& base) {
  const Index d = base->dim();
  CubicSystemParts parts;
  parts.dim = d + 1;
  parts.skew = border(base->skew(), 0.0);
  if (base->has_mass()) parts.mass = border(base->mass(), 1.0);

  parts.cubic_hessian = [base, d](const Vector& xbar) {
    const double x0 = xbar[0];
    const Vector x = xbar.tail(d);
    const SparseMatrix& q = base->quadratic_hessian();
    const Vector& c = base->linear_gradient();
    const Vector edge = q * x + 2.0 * x0 * c;
    const SparseMatrix inner = base->cubic_hessian(x) + x0 * q;

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(inner.nonZeros() + 2 * d + 1));
    entries.emplace_back(0, 0, 2.0 * c.dot(x));
    for (Index i = 0; i < d; ++i) {
      if (edge[i] != 0.0) {
        entries.emplace_back(0, i + 1, edge[i]);
        entries.emplace_back(i + 1, 0, edge[i]);
      }
    }
    for (Index col = 0; col < inner.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(inner, col); it; ++it) {
        entries.emplace_back(it.row() + 1, it.col() + 1, it.value());
      }
    }
    SparseMatrix out(d + 1, d + 1);
    out.setFromTriplets(entries.begin(), entries.end());
    return out;
  };

  parts.energy = [base, d](const Vector& xbar) {
    const double x0 = xbar[0];
    const Vector x = xbar.tail(d);
    const double cubic = x.dot(base->cubic_hessian(x) * x) / 6.0;
    return cubic + x0 * 0.5 * x.dot(base->quadratic_hessian() * x) +
           x0 * x0 * base->linear_gradient().dot(x);
  };

  parts.gradient = [base, d](const Vector& xbar) {
    const double x0 = xbar[0];
    const Vector x = xbar.tail(d);
    const Vector qx = base->quadratic_hessian() * x;
    const Vector& c = base->linear_gradient();
    Vector g(d + 1);
    g[0] = 0.5 * x.dot(qx) + 2.0 * x0 * c.dot(x);
    g.tail(d) = 0.5 * (base->cubic_hessian(x) * x) + x0 * qx + x0 * x0 * c;
    return g;
  };
  return parts;
}

}  // namespace

HomogenizedSystem::HomogenizedSystem(std::shared_ptr<const CubicHamiltonianSystem> base)
    : base_(std::move(base)), extended_(extend_parts(base_)) {}

Vector HomogenizedSystem::lift(const Vector& x) const {
  require_same_size(x.size(), base_->dim(), "HomogenizedSystem::lift");
  Vector xbar(x.size() + 1);
  xbar[0] = 1.0;
  xbar.tail(x.size()) = x;
  return xbar;
}

Vector HomogenizedSystem::project(const Vector& xbar) const {
  require_same_size(xbar.size(), base_->dim() + 1, "HomogenizedSystem::project");
  return xbar.tail(base_->dim());
}

HomogenizedSystem homogenize(std::shared_ptr<const CubicHamiltonianSystem> sys) {
  return HomogenizedSystem(std::move(sys));
}

}  // namespace linimp
