#include "linimp/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "linimp/analysis.hpp"
#include "linimp/integrate.hpp"
#include "linimp/pde_models.hpp"
#include "linimp/reference.hpp"
#include "linimp/svg.hpp"

namespace linimp {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
namespace fs = std::filesystem;

struct Problem {
  std::shared_ptr<const CubicHamiltonianSystem> sys;
  std::optional<PeriodicGrid> grid;
  PolarizedEnergy model_polarized;
  std::function<double(const Vector&)> h1;
};

// H = p^2/2 + q^2/2 - q^3/3 in x = (q, p).
std::shared_ptr<const CubicHamiltonianSystem> ode_demo_system() {
  CubicSystemParts parts;
  parts.dim = 2;
  parts.skew = SparseMatrix(2, 2);
  parts.skew.insert(0, 1) = 1.0;
  parts.skew.insert(1, 0) = -1.0;
  parts.cubic_hessian = [](const Vector& x) {
    SparseMatrix c(2, 2);
    c.insert(0, 0) = -2.0 * x[0];
    return c;
  };
  parts.quadratic_hessian = SparseMatrix(2, 2);
  parts.quadratic_hessian.setIdentity();
  parts.linear_gradient = Vector::Zero(2);
  return std::make_shared<const CubicHamiltonianSystem>(std::move(parts));
}

Problem make_problem(const RunConfig& config) {
  Problem p;
  switch (config.equation) {
    case EquationKind::kdv: {
      p.grid.emplace(config.points, config.length);
      auto model = std::make_shared<const KdVModel>(*p.grid, config.effective_a());
      p.sys = model->system();
      p.model_polarized = model->polarized();
      p.h1 = [model](const Vector& u) { return model->h1(u); };
      break;
    }
    case EquationKind::camassa_holm: {
      p.grid.emplace(config.points, config.length);
      auto model = std::make_shared<const CamassaHolmModel>(*p.grid, config.effective_a());
      p.sys = model->system();
      p.model_polarized = model->polarized();
      p.h1 = [model](const Vector& u) { return model->h1(u); };
      break;
    }
    case EquationKind::ode_demo:
      p.sys = ode_demo_system();
      p.model_polarized = kahan_polarized_energy(p.sys);
      p.h1 = [](const Vector&) { return kNaN; };
      break;
  }
  return p;
}

Vector parse_state_list(const std::string& text, Index dim) {
  Vector x(dim);
  std::stringstream ss(text);
  std::string item;
  Index i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= dim) break;
    char* end = nullptr;
    x[i] = std::strtod(item.c_str(), &end);
    if (end == item.c_str()) break;
    ++i;
  }
  if (i != dim || std::getline(ss, item, ',')) {
    throw ConfigError("field 'initial_condition': expected " + std::to_string(dim) +
                      " comma-separated numbers");
  }
  return x;
}

Vector initial_vector(const RunConfig& config, const Problem& problem) {
  if (config.equation == EquationKind::ode_demo) {
    return parse_state_list(config.initial_condition, problem.sys->dim());
  }
  try {
    return initial_state(config.initial_condition, *problem.grid);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("field 'initial_condition': ") + e.what());
  }
}

// Named analytic reference applies only to the preset's own equation.
std::string reference_key(const RunConfig& config) {
  const std::string& ic = config.initial_condition;
  if (config.equation == EquationKind::kdv && (ic == "kdv-1soliton" || ic == "kdv-2soliton")) {
    return ic;
  }
  if (config.equation == EquationKind::camassa_holm && (ic == "ch-1peakon" || ic == "ch-2peakon")) {
    return ic;
  }
  return {};
}

double high_frequency_energy(const Vector& u) {
  const Index n = u.size();
  const Index cut = n / 4;
  std::vector<double> cosines(n), sines(n);
  for (Index k = 0; k < n; ++k) {
    const double phase = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
    cosines[k] = std::cos(phase);
    sines[k] = std::sin(phase);
  }
  double total = 0.0;
  for (Index m = cut + 1; m < n - cut; ++m) {
    double re = 0.0, im = 0.0;
    for (Index k = 0, j = 0; k < n; ++k, j = (j + m) % n) {
      re += u[k] * cosines[j];
      im += u[k] * sines[j];
    }
    total += re * re + im * im;
  }
  return total / static_cast<double>(n);
}

IntegrationSettings settings_for(const RunConfig& config, const Problem& problem) {
  IntegrationSettings s;
  s.scheme = config.scheme.kind;
  s.pdg_kind = config.scheme.pdg_kind;
  s.tableau = config.scheme.tableau;
  s.allow_nonlinear_tableau = true;
  s.startup = config.startup;
  if (s.scheme == SchemeKind::pdg) s.energy = problem.model_polarized;
  s.dt = config.dt;
  s.final_time = config.final_time;
  s.record_stride = config.effective_stride();
  return s;
}

// Midpoint run at (dx/2, dt/10) sampled back onto the coarse grid at the
// recorded coarse steps.
std::vector<std::optional<Vector>> fine_reference(const RunConfig& config,
                                                  const std::vector<Index>& steps) {
  RunConfig fine = config;
  fine.points = 2 * config.points;
  fine.dt = config.dt / 10.0;
  fine.scheme = parse_scheme("mp");
  const Problem problem = make_problem(fine);
  const Vector u0 = initial_vector(fine, problem);
  IntegrationSettings s = settings_for(fine, problem);
  const Index total = step_count(fine.dt, fine.final_time);
  s.record_stride = std::max<Index>(1, total);

  std::vector<std::optional<Vector>> out(steps.size());
  auto coarse = [&](const Vector& u) {
    Vector v(config.points);
    for (Index k = 0; k < config.points; ++k) v[k] = u[2 * k];
    return v;
  };
  std::size_t next = 0;
  if (!steps.empty() && steps[0] == 0) out[next++] = coarse(u0);
  integrate(*problem.sys, u0, s, [&](Index step, double, const Vector&, const Vector& cur) {
    if (next < steps.size() && step == 10 * steps[next]) out[next++] = coarse(cur);
  });
  return out;
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

void write_plots(const RunConfig& config, const TrajectoryRecord& r, const Problem& problem) {
  using svg::Series;
  const std::string dir = config.output_dir;
  write_file_atomic(dir + "/invariants.svg",
                    svg::line_plot("energy and invariants", "t", r.times,
                                   {Series{"H2", r.h2}, Series{"H2 polarised", r.h2_polarized},
                                    Series{"H1", r.h1}}));
  write_file_atomic(dir + "/errors.svg",
                    svg::line_plot("errors", "t", r.times,
                                   {Series{"shape", r.shape_error}, Series{"phase", r.phase_error},
                                    Series{"global", r.global_error},
                                    Series{"rel. energy", r.rel_energy_error}}));
  std::vector<double> x;
  if (problem.grid) {
    x = to_std(problem.grid->coordinates());
  } else {
    for (Index i = 0; i < problem.sys->dim(); ++i) x.push_back(static_cast<double>(i));
  }
  std::vector<std::vector<double>> profiles;
  for (const auto& s : r.states) profiles.push_back(to_std(s));
  write_file_atomic(dir + "/waterfall.svg", svg::waterfall("solution", x, r.times, profiles));
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return {};
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::string states_csv(const TrajectoryRecord& record) {
  std::string out = "t";
  const Index dim = record.states.empty() ? 0 : record.states.front().size();
  for (Index k = 0; k < dim; ++k) out += ",x" + std::to_string(k);
  out += '\n';
  for (std::size_t i = 0; i < record.states.size(); ++i) {
    out += format_number(record.times[i]);
    for (Index k = 0; k < dim; ++k) {
      out += ',';
      out += format_number(record.states[i][k]);
    }
    out += '\n';
  }
  return out;
}

std::string diagnostics_csv(const TrajectoryRecord& r) {
  std::string out = "t,H2,H2_polarized,H1,shape_err,phase_err,global_err,rel_energy_err\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    for (double v : {r.times[i], r.h2[i], r.h2_polarized[i], r.h1[i], r.shape_error[i],
                     r.phase_error[i], r.global_error[i]}) {
      out += format_number(v);
      out += ',';
    }
    out += format_number(r.rel_energy_error[i]);
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "value,completed,blow_up_time,max_invariant_drift,final_global_error,error\n";
  for (const auto& row : rows) {
    std::string error = row.error;
    std::replace(error.begin(), error.end(), '"', '\'');
    std::replace(error.begin(), error.end(), '\n', ' ');
    out += row.value + ',' + (row.completed ? "true" : "false") + ',' +
           (row.blow_up_time ? format_number(*row.blow_up_time) : std::string()) + ',' +
           format_number(row.max_invariant_drift) + ',' + format_number(row.final_global_error) +
           ',' + (error.empty() ? std::string() : '"' + error + '"') + '\n';
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + tmp + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

TrajectoryRecord run(const RunConfig& config, bool write_files) {
  validate_config(config);
  const Problem problem = make_problem(config);
  const Vector u0 = initial_vector(config, problem);
  const IntegrationSettings settings = settings_for(config, problem);
  const Index total = config.steps();
  const Index stride = settings.record_stride;

  const std::string ref_key = reference_key(config);
  if (!ref_key.empty()) validate_reference(ref_key, config.length, config.final_time);

  const bool kahan_family = settings.scheme == SchemeKind::kahan ||
                            settings.scheme == SchemeKind::kahan_two_step ||
                            settings.scheme == SchemeKind::tableau;
  const CubicHamiltonianSystem& sys = *problem.sys;
  // Two-step Kahan runs on the homogenized system when H has lower-order terms.
  std::optional<HomogenizedSystem> lifted;
  if (settings.scheme == SchemeKind::kahan_two_step && !sys.is_homogeneous()) {
    lifted.emplace(homogenize(problem.sys));
  }
  const CubicHamiltonianSystem& stepped = lifted ? lifted->extended() : sys;
  auto invariant = [&](const Vector& x, const Vector& y) {
    return kahan_family ? kahan_invariant(stepped, x, y) : problem.model_polarized.value(x, y);
  };

  TrajectoryRecord r;
  r.h2_polarized.push_back(kNaN);
  std::optional<double> first_invariant;
  auto observer = [&](Index step, double, const Vector& prev, const Vector& cur) {
    const double value = invariant(prev, cur);
    if (!first_invariant) {
      first_invariant = value;
    } else {
      r.max_invariant_drift =
          std::max(r.max_invariant_drift, relative_error(value, *first_invariant));
    }
    if (step % stride == 0 || step == total) r.h2_polarized.push_back(value);
  };
  Trajectory traj = integrate(stepped, lifted ? lifted->lift(u0) : u0, settings, observer);
  if (lifted) {
    for (Vector& state : traj.states) state = lifted->project(state);
  }

  r.times = std::move(traj.times);
  r.states = std::move(traj.states);
  r.blow_up_time = traj.blow_up_time;
  r.steps_taken = traj.steps_taken;

  const std::size_t rows = r.times.size();
  std::vector<Index> row_steps;
  for (double t : r.times) row_steps.push_back(static_cast<Index>(std::llround(t / config.dt)));

  std::optional<Vector> profile;
  std::optional<double> speed;
  std::vector<std::optional<Vector>> fine;
  if (!ref_key.empty()) {
    speed = wave_speed(ref_key);
    if (speed) profile = reference_solution(ref_key, 0.0, *problem.grid);
    if (ref_key == "ch-2peakon" && config.fine_reference) fine = fine_reference(config, row_steps);
  }

  const double h0 = sys.energy(u0);
  for (std::size_t i = 0; i < rows; ++i) {
    const Vector& u = r.states[i];
    const double t = r.times[i];
    r.h2.push_back(sys.energy(u));
    r.h1.push_back(problem.h1(u));
    r.rel_energy_error.push_back(relative_error(r.h2.back(), h0));
    double shape = kNaN, phase = kNaN, global = kNaN;
    if (profile && speed) {
      const ShapePhase sp = shape_phase_error(u, *profile, *speed, t, *problem.grid);
      shape = sp.shape;
      phase = sp.phase;
    }
    if (!ref_key.empty()) {
      std::optional<Vector> ref = reference_solution(ref_key, t, *problem.grid);
      if (!ref && i < fine.size()) ref = fine[i];
      if (ref) global = linimp::global_error(u, *ref, *problem.grid);
    }
    r.shape_error.push_back(shape);
    r.phase_error.push_back(phase);
    r.global_error.push_back(global);
    if (problem.grid) {
      r.max_high_frequency_energy = std::max(r.max_high_frequency_energy, high_frequency_energy(u));
    }
  }

  if (write_files) {
    ensure_directory(config.output_dir);
    write_file_atomic(config.output_dir + "/states.csv", states_csv(r));
    write_file_atomic(config.output_dir + "/diagnostics.csv", diagnostics_csv(r));
    if (config.plots) write_plots(config, r, problem);
  }
  return r;
}

std::vector<SweepRow> sweep(const RunConfig& base, const std::string& parameter,
                            const std::vector<std::string>& values, bool write_files) {
  if (parameter != "dt" && parameter != "a_param" && parameter != "K") {
    throw ConfigError("sweep parameter must be dt, a_param or K, got '" + parameter + "'");
  }
  auto one = [&](const std::string& value) {
    SweepRow row;
    row.value = value;
    try {
      RunConfig config = base;
      set_config_value(config, parameter, value);
      config.output_dir = base.output_dir + "/" + parameter + "=" + value;
      validate_config(config);
      const TrajectoryRecord rec = run(config, write_files);
      row.completed = !rec.blow_up_time;
      row.blow_up_time = rec.blow_up_time;
      row.max_invariant_drift = rec.max_invariant_drift;
      row.final_global_error = rec.global_error.empty() ? kNaN : rec.global_error.back();
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    return row;
  };

  std::vector<SweepRow> rows(values.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < values.size(); begin += workers) {
    std::vector<std::future<SweepRow>> batch;
    const std::size_t end = std::min(values.size(), begin + workers);
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, one, values[i]));
    }
    for (std::size_t i = begin; i < end; ++i) rows[i] = batch[i - begin].get();
  }
  if (write_files) {
    ensure_directory(base.output_dir);
    write_file_atomic(base.output_dir + "/sweep_" + parameter + ".csv", sweep_csv(rows));
  }
  return rows;
}

}  // namespace linimp
