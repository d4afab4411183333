#pragma once

#include <string>
#include <vector>

namespace linimp::svg {

struct Series {
  std::string name;
  std::vector<double> y;  // NaN entries are skipped
};

/// Line plot of several series against a shared x axis.
std::string line_plot(const std::string& title, const std::string& x_label,
                      const std::vector<double>& x, const std::vector<Series>& series);

/// Stacked profiles u(x) at increasing times, each offset vertically.
std::string waterfall(const std::string& title, const std::vector<double>& x,
                      const std::vector<double>& times,
                      const std::vector<std::vector<double>>& profiles, int max_profiles = 30);

}  // namespace linimp::svg
