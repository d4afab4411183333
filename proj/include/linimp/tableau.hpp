#pragma once

#include <array>
#include <string>
#include <string_view>

namespace linimp {

/// Coefficients of the two-step family
///   (x2 - x0) / (2 dt) = S sum_ij a_ij (H''(p_i) p_j + beta(p_i)),  p = (x0, x1, x2).
struct TwoStepTableau {
  std::array<std::array<double, 3>, 3> alpha{};

  double sum() const;
  /// One linear solve per step iff a_33 == 0.
  bool linearly_implicit() const { return alpha[2][2] == 0.0; }

  static TwoStepTableau kahan();
  static TwoStepTableau polarized();
  static TwoStepTableau midpoint();
  static TwoStepTableau trapezoidal();
  static TwoStepTableau avf();

  /// "kahan", "pdg", "midpoint", "trapezoidal", "avf", or nine comma-separated
  /// values in row-major order. Throws std::invalid_argument otherwise.
  static TwoStepTableau parse(std::string_view text);
};

}  // namespace linimp
