#pragma once

#include <utility>
#include <vector>

#include "linimp/grid.hpp"
#include "linimp/types.hpp"

namespace linimp {

enum class StencilKind { forward, backward, central, second_central, forward_mean, backward_mean };

/// Circulant operator given by a periodic stencil:
///   (op v)_k = sum_j coeff_j * v[(k + offset_j) mod K]
class BandedCirculantOperator {
 public:
  struct Tap {
    int offset;
    double coefficient;
  };

  BandedCirculantOperator(std::vector<Tap> taps, Index size);

  Index size() const { return size_; }
  const std::vector<Tap>& taps() const { return taps_; }

  Vector apply(const Vector& v) const;
  Vector operator*(const Vector& v) const { return apply(v); }

  SparseMatrix to_sparse() const;
  DenseMatrix to_dense() const;

  double coefficient_sum() const;

 private:
  std::vector<Tap> taps_;
  Index size_;
};

/// Builds D+, D-, Dc, D2c, M+ or M- on the given grid.
BandedCirculantOperator make_operator(StencilKind kind, const PeriodicGrid& grid);

/// Cached sparse matrices of all difference operators on one grid.
struct DifferenceOperators {
  explicit DifferenceOperators(const PeriodicGrid& grid);

  PeriodicGrid grid;
  SparseMatrix forward;         // D+
  SparseMatrix backward;        // D-
  SparseMatrix central;         // Dc
  SparseMatrix second_central;  // D2c
  SparseMatrix forward_mean;    // M+
  SparseMatrix backward_mean;   // M-
  SparseMatrix identity;
};

}  // namespace linimp
