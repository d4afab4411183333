#include "linimp/linear_solve.hpp"

#include <Eigen/LU>
#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>

#include <cmath>
#include <sstream>

namespace linimp {

Vector solve_dense(const DenseMatrix& a, const Vector& b) {
  if (a.rows() != a.cols()) throw DimensionError("solve_dense: matrix is not square");
  require_same_size(b.size(), a.rows(), "solve_dense");
  if (a.rows() == 0) return b;

  const double max_row_norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  if (!(max_row_norm > 0.0) || !std::isfinite(max_row_norm)) {
    throw SingularMatrixError("solve_dense: matrix is zero or not finite");
  }
  Eigen::PartialPivLU<DenseMatrix> lu(a);
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  Index worst = 0;
  const double smallest = pivots.minCoeff(&worst);
  if (smallest < kPivotThreshold * max_row_norm) {
    std::ostringstream msg;
    msg << "solve_dense: singular to working precision (pivot " << worst << " = " << smallest
        << ", row norm " << max_row_norm << ")";
    throw SingularMatrixError(msg.str());
  }
  return lu.solve(b);
}

Vector solve_sparse(const SparseMatrix& a, const Vector& b) {
  if (a.rows() != a.cols()) throw DimensionError("solve_sparse: matrix is not square");
  require_same_size(b.size(), a.rows(), "solve_sparse");

  SparseMatrix compressed = a;
  compressed.makeCompressed();
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(compressed);
  lu.factorize(compressed);
  if (lu.info() != Eigen::Success) {
    throw SingularMatrixError("solve_sparse: factorization failed: " + lu.lastErrorMessage());
  }
  Vector x = lu.solve(b);
  if (lu.info() != Eigen::Success || !x.allFinite()) {
    throw SingularMatrixError("solve_sparse: solution is not finite");
  }
  // Backward-error check stands in for the dense pivot test.
  double a_norm = 0.0;
  {
    Vector row_sums = Vector::Zero(a.rows());
    for (Index col = 0; col < compressed.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(compressed, col); it; ++it) {
        row_sums[it.row()] += std::abs(it.value());
      }
    }
    a_norm = row_sums.size() ? row_sums.maxCoeff() : 0.0;
  }
  const double residual = (compressed * x - b).lpNorm<Eigen::Infinity>();
  const double scale = a_norm * x.lpNorm<Eigen::Infinity>() + b.lpNorm<Eigen::Infinity>();
  if (residual > 1e-8 * scale) {
    std::ostringstream msg;
    msg << "solve_sparse: singular to working precision (residual " << residual << ", scale "
        << scale << ")";
    throw SingularMatrixError(msg.str());
  }
  return x;
}

Vector solve_linear(const SparseMatrix& a, const Vector& b) {
  if (a.rows() <= kDenseSolveLimit) return solve_dense(DenseMatrix(a), b);
  return solve_sparse(a, b);
}

}  // namespace linimp
