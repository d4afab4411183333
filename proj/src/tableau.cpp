#include "linimp/tableau.hpp"

#include <charconv>
#include <stdexcept>
#include <vector>

namespace linimp {

double TwoStepTableau::sum() const {
  double s = 0.0;
  for (const auto& row : alpha)
    for (double a : row) s += a;
  return s;
}

TwoStepTableau TwoStepTableau::kahan() {
  TwoStepTableau t;
  t.alpha[1][0] = t.alpha[1][2] = 0.25;
  return t;
}

TwoStepTableau TwoStepTableau::polarized() {
  TwoStepTableau t;
  t.alpha[1][0] = t.alpha[1][1] = t.alpha[1][2] = 1.0 / 6.0;
  return t;
}

TwoStepTableau TwoStepTableau::midpoint() {
  TwoStepTableau t;
  t.alpha[0][0] = t.alpha[2][2] = 1.0 / 16.0;
  t.alpha[1][0] = t.alpha[1][1] = t.alpha[1][2] = 1.0 / 8.0;
  return t;
}

TwoStepTableau TwoStepTableau::trapezoidal() {
  TwoStepTableau t;
  t.alpha[0][0] = t.alpha[2][2] = 1.0 / 8.0;
  t.alpha[1][1] = 0.25;
  return t;
}

TwoStepTableau TwoStepTableau::avf() {
  TwoStepTableau t;
  t.alpha[0][0] = t.alpha[1][0] = t.alpha[1][2] = t.alpha[2][2] = 1.0 / 12.0;
  t.alpha[1][1] = 1.0 / 6.0;
  return t;
}

TwoStepTableau TwoStepTableau::parse(std::string_view text) {
  if (text == "kahan") return kahan();
  if (text == "pdg") return polarized();
  if (text == "midpoint") return midpoint();
  if (text == "trapezoidal") return trapezoidal();
  if (text == "avf") return avf();

  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view field = text.substr(pos, end - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw std::invalid_argument("tableau: cannot parse '" + std::string(field) + "'");
    }
    values.push_back(v);
    pos = end + 1;
  }
  if (values.size() != 9) {
    throw std::invalid_argument("tableau: expected a name or 9 values, got " +
                                std::to_string(values.size()) + " values");
  }
  TwoStepTableau t;
  for (std::size_t i = 0; i < 9; ++i) t.alpha[i / 3][i % 3] = values[i];
  return t;
}

}  // namespace linimp
