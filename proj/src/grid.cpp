#include "linimp/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace linimp {

PeriodicGrid::PeriodicGrid(Index points, double length)
    : points_(points), length_(length), spacing_(0.0) {
  if (points < 3) {
    throw std::invalid_argument("periodic grid needs at least 3 points, got " +
                                std::to_string(points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("periodic grid length must be positive and finite");
  }
  spacing_ = length / static_cast<double>(points);
}

Vector PeriodicGrid::coordinates() const {
  Vector x(points_);
  for (Index k = 0; k < points_; ++k) x[k] = coordinate(k);
  return x;
}

}  // namespace linimp
