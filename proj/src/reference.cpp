#include "linimp/reference.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "linimp/expression.hpp"

namespace linimp {
namespace {

double sech2(double x) {
  const double s = 1.0 / std::cosh(x);
  return s * s;
}

// 12 (3 + 4 cosh(2x - 8t) + cosh(4x - 64t)) / (3 cosh(x - 28t) + cosh(3x - 36t))^2,
// scaled by exp(-2m) in numerator and denominator to avoid overflow.
double two_soliton_line(double x, double t) {
  const double a = x - 28.0 * t;
  const double b = 3.0 * x - 36.0 * t;
  const double m = std::max(std::abs(a), std::abs(b));
  auto scaled_cosh = [m](double z, double shift) { return 0.5 * (std::exp(z - shift) + std::exp(-z - shift)); };
  const double den = 3.0 * scaled_cosh(a, m) + scaled_cosh(b, m);
  const double num = 3.0 * std::exp(-2.0 * m) + 4.0 * scaled_cosh(2.0 * x - 8.0 * t, 2.0 * m) +
                     scaled_cosh(4.0 * x - 64.0 * t, 2.0 * m);
  return 12.0 * num / (den * den);
}

// Fourth-order central differences.
double d1(const std::function<double(double)>& f, double h) {
  return (f(-2 * h) - 8 * f(-h) + 8 * f(h) - f(2 * h)) / (12 * h);
}
double d2(const std::function<double(double)>& f, double h) {
  return (-f(-2 * h) + 16 * f(-h) - 30 * f(0) + 16 * f(h) - f(2 * h)) / (12 * h * h);
}
double d3(const std::function<double(double)>& f, double h) {
  return (f(-3 * h) - 8 * f(-2 * h) + 13 * f(-h) - 13 * f(h) + 8 * f(2 * h) - f(3 * h)) /
         (8 * h * h * h);
}

constexpr double kSpaceStep = 2e-3;
constexpr double kTimeStep = 1e-4;

std::vector<double> sample_points(double length, int n) {
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(length * (i + 0.37) / n);
  return xs;
}

}  // namespace

double wrap_centered(double x, double length) {
  double r = std::fmod(x + 0.5 * length, length);
  if (r < 0) r += length;
  return r - 0.5 * length;
}

double kdv_soliton(double x, double t, double length) {
  return 2.0 * sech2(wrap_centered(x - 4.0 * t - 0.5 * length, length));
}

double kdv_two_soliton(double x, double t, double length) {
  double u = 0.0;
  for (int n = -1; n <= 1; ++n) u += two_soliton_line(x + n * length, t);
  return u;
}

double kdv_two_soliton_horizon(double length) { return std::max(0.0, (length - 16.0) / 12.0); }

double ch_peakon(double x, double t, double length) {
  const double y = wrap_centered(x - t - 0.5 * length, length);
  return std::cosh(std::abs(y) - 0.5 * length) / std::cosh(0.5 * length);
}

std::optional<Field> analytic_field(std::string_view preset, double length) {
  if (preset == "kdv-1soliton") {
    return Field([length](double x, double t) { return kdv_soliton(x, t, length); });
  }
  if (preset == "kdv-2soliton") {
    return Field([length](double x, double t) { return kdv_two_soliton(x, t, length); });
  }
  if (preset == "ch-1peakon") {
    return Field([length](double x, double t) { return ch_peakon(x, t, length); });
  }
  return std::nullopt;
}

std::optional<double> wave_speed(std::string_view preset) {
  if (preset == "kdv-1soliton") return 4.0;
  if (preset == "ch-1peakon") return 1.0;
  return std::nullopt;
}

std::optional<Vector> reference_solution(std::string_view preset, double t,
                                         const PeriodicGrid& grid) {
  const auto field = analytic_field(preset, grid.length());
  if (!field) return std::nullopt;
  if (preset == "kdv-2soliton" && t > kdv_two_soliton_horizon(grid.length()) + 1e-12) {
    return std::nullopt;
  }
  Vector u(grid.points());
  for (Index k = 0; k < grid.points(); ++k) u[k] = (*field)(grid.coordinate(k), t);
  return u;
}

double kdv_residual(const Field& u, const std::vector<double>& xs, const std::vector<double>& ts) {
  double worst = 0.0;
  for (double t : ts) {
    for (double x : xs) {
      auto fx = [&](double h) { return u(x + h, t); };
      auto ft = [&](double h) { return u(x, t + h); };
      const double r = d1(ft, kTimeStep) + 6.0 * u(x, t) * d1(fx, kSpaceStep) + d3(fx, kSpaceStep);
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

double ch_residual(const Field& u, const std::vector<double>& xs, const std::vector<double>& ts) {
  double worst = 0.0;
  for (double t : ts) {
    for (double x : xs) {
      auto fx = [&](double h) { return u(x + h, t); };
      auto ft = [&](double h) { return u(x, t + h); };
      auto uxx_t = [&](double s) {
        return d2([&](double h) { return u(x + h, t + s); }, kSpaceStep);
      };
      const double v = u(x, t);
      const double ux = d1(fx, kSpaceStep);
      const double r = d1(ft, kTimeStep) - d1(uxx_t, kTimeStep) + 3.0 * v * ux -
                       2.0 * ux * d2(fx, kSpaceStep) - v * d3(fx, kSpaceStep);
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

void validate_reference(std::string_view preset, double length, double t_max) {
  const auto field = analytic_field(preset, length);
  if (!field) return;
  double horizon = t_max;
  if (preset == "kdv-2soliton") horizon = std::min(horizon, kdv_two_soliton_horizon(length));
  std::vector<double> ts;
  for (int i = 0; i <= 4; ++i) ts.push_back(horizon * i / 4.0);
  std::vector<double> xs = sample_points(length, 97);
  double residual = 0.0;
  if (preset == "ch-1peakon") {
    // The peakon solves the equation classically away from its crest.
    double worst = 0.0;
    for (double t : ts) {
      std::vector<double> smooth;
      for (double x : xs) {
        if (std::abs(wrap_centered(x - t - 0.5 * length, length)) > 0.05) smooth.push_back(x);
      }
      worst = std::max(worst, ch_residual(*field, smooth, {t}));
    }
    residual = worst;
  } else {
    residual = kdv_residual(*field, xs, ts);
  }
  if (!(residual < kReferenceResidualTolerance)) {
    std::ostringstream msg;
    msg << "reference for '" << preset << "' fails the PDE residual check: " << residual;
    throw ReferenceValidationError(msg.str());
  }
}

Vector initial_state(std::string_view initial_condition, const PeriodicGrid& grid) {
  const double length = grid.length();
  const Index n = grid.points();
  Vector u(n);
  if (initial_condition == "kdv-1soliton") {
    for (Index k = 0; k < n; ++k) u[k] = kdv_soliton(grid.coordinate(k), 0.0, length);
  } else if (initial_condition == "kdv-2soliton") {
    for (Index k = 0; k < n; ++k) u[k] = 6.0 * sech2(wrap_centered(grid.coordinate(k), length));
  } else if (initial_condition == "ch-1peakon") {
    for (Index k = 0; k < n; ++k) u[k] = ch_peakon(grid.coordinate(k), 0.0, length);
  } else if (initial_condition == "ch-2peakon") {
    const double c = std::cosh(0.5 * length);
    for (Index k = 0; k < n; ++k) {
      const double x = grid.coordinate(k);
      u[k] = std::cosh(std::abs(x - 0.25 * length) - 0.5 * length) / c +
             1.5 * std::cosh(std::abs(x - 0.75 * length) - 0.5 * length) / c;
    }
  } else {
    const Expression expr = Expression::parse(initial_condition);
    std::map<std::string, double> vars{{"L", length}, {"x", 0.0}};
    for (Index k = 0; k < n; ++k) {
      vars["x"] = grid.coordinate(k);
      u[k] = expr.evaluate(vars);
    }
  }
  return u;
}

}  // namespace linimp
