#pragma once

#include "linimp/types.hpp"

namespace linimp {

/// Uniform periodic grid on [0, L) with K points x_k = k * dx.
class PeriodicGrid {
 public:
  PeriodicGrid(Index points, double length);

  Index points() const { return points_; }
  double length() const { return length_; }
  double spacing() const { return spacing_; }
  double coordinate(Index k) const { return static_cast<double>(k) * spacing_; }

  /// Wraps any integer index into [0, K).
  Index wrap(Index k) const {
    const Index r = k % points_;
    return r < 0 ? r + points_ : r;
  }

  /// Grid coordinates as a vector.
  Vector coordinates() const;

 private:
  Index points_;
  double length_;
  double spacing_;
};

}  // namespace linimp
