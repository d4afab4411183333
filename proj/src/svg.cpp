#include "linimp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace linimp::svg {
namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kMargin = 56;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi - lo < 1e-300) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  double map(double v, double a, double b) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

void header(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\">" << escape(title)
     << "</text>\n";
}

void axes(std::ostringstream& os, const Range& xr, const Range& yr, const std::string& x_label) {
  const double x0 = kMargin, x1 = kWidth - 16, y0 = kHeight - kMargin, y1 = 32;
  os << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\""
     << y0 - y1 << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << x0 << "\" y=\"" << y0 + 16 << "\">" << xr.lo << "</text>\n";
  os << "<text x=\"" << x1 << "\" y=\"" << y0 + 16 << "\" text-anchor=\"end\">" << xr.hi
     << "</text>\n";
  os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << y0 + 32 << "\" text-anchor=\"middle\">"
     << escape(x_label) << "</text>\n";
  os << "<text x=\"" << x0 - 4 << "\" y=\"" << y0 << "\" text-anchor=\"end\">" << yr.lo
     << "</text>\n";
  os << "<text x=\"" << x0 - 4 << "\" y=\"" << y1 + 10 << "\" text-anchor=\"end\">" << yr.hi
     << "</text>\n";
}

}  // namespace

std::string line_plot(const std::string& title, const std::string& x_label,
                      const std::vector<double>& x, const std::vector<Series>& series) {
  Range xr, yr;
  for (double v : x) xr.add(v);
  for (const auto& s : series) for (double v : s.y) yr.add(v);
  xr.settle();
  yr.settle();
  std::ostringstream os;
  os.precision(6);
  header(os, title);
  axes(os, xr, yr, x_label);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kColors[i % 6];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (std::size_t j = 0; j < std::min(x.size(), s.y.size()); ++j) {
      if (!std::isfinite(s.y[j]) || !std::isfinite(x[j])) continue;
      os << xr.map(x[j], kMargin, kWidth - 16) << ',' << yr.map(s.y[j], kHeight - kMargin, 32)
         << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << kWidth - 20 << "\" y=\"" << 48 + 14 * i << "\" text-anchor=\"end\" fill=\""
       << color << "\">" << escape(s.name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string waterfall(const std::string& title, const std::vector<double>& x,
                      const std::vector<double>& times,
                      const std::vector<std::vector<double>>& profiles, int max_profiles) {
  Range xr, ur;
  for (double v : x) xr.add(v);
  for (const auto& p : profiles) for (double v : p) ur.add(v);
  xr.settle();
  ur.settle();
  const std::size_t n = profiles.size();
  const std::size_t stride = std::max<std::size_t>(1, (n + max_profiles - 1) / max_profiles);
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < n; i += stride) picked.push_back(i);
  if (n > 0 && picked.back() != n - 1) picked.push_back(n - 1);

  std::ostringstream os;
  os.precision(6);
  header(os, title);
  const double top = 32, bottom = kHeight - kMargin;
  const double band = (bottom - top) / (picked.size() + 3.0);
  Range tr;
  for (std::size_t i : picked) tr.add(i < times.size() ? times[i] : 0.0);
  tr.settle();
  axes(os, xr, tr, "x");
  for (std::size_t r = 0; r < picked.size(); ++r) {
    const auto& p = profiles[picked[r]];
    const double base = bottom - band * r;
    os << "<polyline fill=\"white\" stroke=\"black\" stroke-width=\"0.8\" points=\"";
    for (std::size_t j = 0; j < std::min(x.size(), p.size()); ++j) {
      if (!std::isfinite(p[j])) continue;
      os << xr.map(x[j], kMargin, kWidth - 16) << ',' << base - ur.map(p[j], 0, 4 * band) << ' ';
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace linimp::svg
