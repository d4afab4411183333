#pragma once

#include "linimp/types.hpp"

namespace linimp {

/// Relative pivot threshold used by solve_dense.
inline constexpr double kPivotThreshold = 1e-13;

/// Dimension up to which solve_linear densifies and uses solve_dense.
inline constexpr Index kDenseSolveLimit = 128;

/// LU with partial pivoting. Throws SingularMatrixError when a pivot falls
/// below kPivotThreshold times the largest row norm of A.
Vector solve_dense(const DenseMatrix& a, const Vector& b);

/// Sparse LU (COLAMD ordering). Throws SingularMatrixError if the factorization
/// fails or the result is not finite or does not satisfy the system.
Vector solve_sparse(const SparseMatrix& a, const Vector& b);

/// Dispatches to solve_dense for small systems, solve_sparse otherwise.
Vector solve_linear(const SparseMatrix& a, const Vector& b);

}  // namespace linimp
