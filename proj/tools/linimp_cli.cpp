// Command line front end: run, sweep, dispersion, stability.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "linimp/analysis.hpp"
#include "linimp/config.hpp"
#include "linimp/expression.hpp"
#include "linimp/reference.hpp"
#include "linimp/runner.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitReference = 4;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

int command_run(const std::string& path, bool plots, const std::string& output_dir) {
  linimp::RunConfig config = linimp::load_config(path);
  if (plots) config.plots = true;
  if (!output_dir.empty()) config.output_dir = output_dir;
  const linimp::TrajectoryRecord r = linimp::run(config);
  std::cout << "steps: " << r.steps_taken << "\n";
  if (r.blow_up_time) {
    std::cout << "blow_up_time: " << linimp::format_number(*r.blow_up_time) << "\n";
  } else {
    std::cout << "completed: t = " << linimp::format_number(r.times.back()) << "\n";
  }
  std::cout << "max_invariant_drift: " << linimp::format_number(r.max_invariant_drift) << "\n";
  if (!r.global_error.empty() && !std::isnan(r.global_error.back())) {
    std::cout << "final_global_error: " << linimp::format_number(r.global_error.back()) << "\n";
  }
  std::cout << "max_high_frequency_energy: "
            << linimp::format_number(r.max_high_frequency_energy) << "\n";
  std::cout << "output: " << config.output_dir << "\n";
  return 0;
}

int command_sweep(const std::string& path, const std::string& param, const std::string& values,
                  const std::string& output_dir) {
  linimp::RunConfig config = linimp::load_config(path);
  if (!output_dir.empty()) config.output_dir = output_dir;
  const auto rows = linimp::sweep(config, param, split_list(values));
  std::cout << linimp::sweep_csv(rows);
  return 0;
}

int command_dispersion(double lambda, double xi_max, int points) {
  if (!(xi_max > 0.0) || xi_max > M_PI) throw linimp::ConfigError("--xi-max must lie in (0, pi]");
  if (points < 1) throw linimp::ConfigError("--points must be positive");
  std::vector<double> xi;
  for (int i = 1; i <= points; ++i) xi.push_back(xi_max * i / points);
  std::cout << "xi,omega_exact,omega_kahan,omega_pdgm,pdgm_residual,pdgm_ok\n";
  for (const auto& s : linimp::dispersion_curves(lambda, xi)) {
    std::cout << linimp::format_number(s.xi) << ',' << linimp::format_number(s.omega_exact) << ','
              << linimp::format_number(s.omega_kahan) << ','
              << linimp::format_number(s.omega_pdgm) << ','
              << linimp::format_number(s.pdgm_residual) << ',' << (s.pdgm_ok ? 1 : 0) << '\n';
  }
  return 0;
}

int command_stability(const std::string& method, int n_lambda, int n_theta, double lambda_max) {
  linimp::StabilityMethod m;
  if (method == "kahan") {
    m = linimp::StabilityMethod::kahan;
  } else if (method == "pdgm") {
    m = linimp::StabilityMethod::pdgm;
  } else {
    throw linimp::ConfigError("--method must be kahan or pdgm");
  }
  std::cout << "lambda,theta,root,abs_g,residual\n";
  for (const auto& a : linimp::stability_grid(m, n_lambda, n_theta, lambda_max)) {
    for (std::size_t i = 0; i < a.roots.size(); ++i) {
      std::cout << linimp::format_number(a.lambda) << ',' << linimp::format_number(a.theta) << ','
                << i + 1 << ',' << linimp::format_number(a.moduli[i]) << ','
                << linimp::format_number(a.residuals[i]) << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linearly implicit integrators for cubic Hamiltonian systems"};
  app.require_subcommand(1);

  std::string config_path, output_dir, param, values, method = "kahan";
  bool plots = false;
  double lambda = 1.0, xi_max = M_PI, lambda_max = 10.0;
  int points = 200, n_lambda = 100, n_theta = 100;

  auto* run = app.add_subcommand("run", "integrate one configuration");
  run->add_option("config", config_path, "config file")->required();
  run->add_flag("--plots", plots, "also write SVG plots");
  run->add_option("--output-dir", output_dir, "override output_dir");

  auto* sweep = app.add_subcommand("sweep", "repeat a run over parameter values");
  sweep->add_option("config", config_path, "base config file")->required();
  sweep->add_option("--param", param, "dt, a_param or K")->required();
  sweep->add_option("--values", values, "comma-separated values")->required();
  sweep->add_option("--output-dir", output_dir, "override output_dir");

  auto* dispersion = app.add_subcommand("dispersion", "numerical dispersion curves");
  dispersion->add_option("--lambda", lambda, "dt / dx^3")->required();
  dispersion->add_option("--xi-max", xi_max, "largest wavenumber, at most pi");
  dispersion->add_option("--points", points, "number of wavenumbers");

  auto* stability = app.add_subcommand("stability", "|g| over a (lambda, theta) grid");
  stability->add_option("--method", method, "kahan or pdgm")->required();
  stability->add_option("--n-lambda", n_lambda, "lambda samples");
  stability->add_option("--n-theta", n_theta, "theta samples");
  stability->add_option("--lambda-max", lambda_max, "largest lambda");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return command_run(config_path, plots, output_dir);
    if (*sweep) return command_sweep(config_path, param, values, output_dir);
    if (*dispersion) return command_dispersion(lambda, xi_max, points);
    if (*stability) return command_stability(method, n_lambda, n_theta, lambda_max);
  } catch (const linimp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const linimp::ExpressionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const linimp::ReferenceValidationError& e) {
    std::cerr << "reference validation failed: " << e.what() << "\n";
    return kExitReference;
  } catch (const linimp::SingularMatrixError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const linimp::ConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const linimp::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
