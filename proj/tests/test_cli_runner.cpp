#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "linimp/config.hpp"
#include "linimp/expression.hpp"
#include "linimp/reference.hpp"
#include "linimp/runner.hpp"
#include "support.hpp"

using namespace linimp;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("linimp_test_" + name);
  std::filesystem::remove_all(dir);
  return dir.string();
}

double sech2(double x) {
  const double s = 1.0 / std::cosh(x);
  return s * s;
}

}  // namespace

TEST_SUITE("cli-runner") {

TEST_CASE("presets") {
  const RunConfig k1 = parse_config("preset = kdv-1soliton\n");
  CHECK(k1.equation == EquationKind::kdv);
  CHECK(k1.points == 800);
  CHECK(k1.length == 40.0);
  CHECK(k1.length / k1.points == doctest::Approx(0.05));
  CHECK(k1.dt == 0.0125);
  CHECK(k1.final_time == 100.0);
  CHECK(k1.effective_a() == -0.5);
  CHECK(k1.steps() == 8000);
  CHECK(k1.effective_stride() == 40);
  const PeriodicGrid g(k1.points, k1.length);
  const Vector u0 = initial_state(k1.initial_condition, g);
  for (Index k : {0, 123, 400, 799}) {
    CHECK(u0[k] == doctest::Approx(2.0 * sech2(g.coordinate(k) - 20.0)).epsilon(1e-14));
  }

  const RunConfig c1 = parse_config("preset = ch-1peakon");
  CHECK(c1.equation == EquationKind::camassa_holm);
  CHECK(c1.length / c1.points == doctest::Approx(0.04));
  CHECK(c1.dt == 0.0002);
  CHECK(c1.final_time == 5.0);
  CHECK(c1.effective_a() == 0.5);
  const PeriodicGrid gc(c1.points, c1.length);
  const Vector p0 = initial_state("ch-1peakon", gc);
  CHECK(p0[500] == doctest::Approx(1.0));
  CHECK(p0[100] == doctest::Approx(std::cosh(std::abs(4.0 - 20.0) - 20.0) / std::cosh(20.0)));

  const RunConfig k2 = parse_config("preset = kdv-2soliton");
  CHECK(k2.length / k2.points == doctest::Approx(0.05));
  CHECK(k2.dt == 0.001);
  CHECK(k2.final_time == 100.0);
  const Vector s0 = initial_state("kdv-2soliton", g);
  CHECK(s0[0] == doctest::Approx(6.0));
  CHECK(s0[20] == doctest::Approx(6.0 * sech2(1.0)));
  CHECK(s0[780] == doctest::Approx(6.0 * sech2(-1.0)));

  const RunConfig c2 = parse_config("preset = ch-2peakon");
  const Vector q0 = initial_state("ch-2peakon", gc);
  const double x = gc.coordinate(321);
  CHECK(q0[321] == doctest::Approx((std::cosh(std::abs(x - 10) - 20) +
                                     1.5 * std::cosh(std::abs(x - 30) - 20)) / std::cosh(20.0)));
  CHECK(c2.dt == 0.0002);
}

TEST_CASE("overrides and parsing") {
  const RunConfig c = parse_config(
      "# comment line\n"
      "preset = kdv-1soliton   # trailing comment\n"
      "\n"
      "scheme = pdgm-avf\n"
      "dt = 0.04\n"
      "T = 20\n"
      "a_param = 0.25\n"
      "startup = midpoint\n"
      "record_stride = 5\n"
      "plots = true\n");
  CHECK(c.scheme.kind == SchemeKind::pdg);
  CHECK(c.scheme.pdg_kind == PdgKind::avf);
  CHECK(c.dt == 0.04);
  CHECK(c.steps() == 500);
  CHECK(c.effective_a() == 0.25);
  CHECK(c.startup == Startup::midpoint);
  CHECK(c.record_stride == 5);
  CHECK(c.plots);
  CHECK(c.points == 800);

  const RunConfig d = parse_config("dx = 0.1\nequation = kdv\nL = 20\ndt = 0.01\nT = 1\n"
                                   "initial_condition = sin(2*pi*x/L)\n");
  CHECK(d.points == 200);

  CHECK(parse_scheme("tableau:midpoint").tableau->alpha == TwoStepTableau::midpoint().alpha);
  CHECK(parse_scheme("tableau:0,0,0,0.25,0,0.25,0,0,0").kind == SchemeKind::tableau);
  CHECK(parse_scheme("mp").kind == SchemeKind::midpoint);
  CHECK(parse_scheme("kahan2").kind == SchemeKind::kahan_two_step);
  CHECK(parse_scheme("pdgm").pdg_kind == PdgKind::quadratic);
  CHECK(parse_scheme("pdgm-sia").pdg_kind == PdgKind::symmetrized_itoh_abe);
}

TEST_CASE("configuration errors name the line or field") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("preset = kdv-1soliton\nfoo = 1\n").find("line 2") != std::string::npos);
  CHECK(message("preset = kdv-1soliton\nfoo = 1\n").find("foo") != std::string::npos);
  CHECK(message("preset = kdv-1soliton\ndt 0.1\n").find("line 2") != std::string::npos);
  CHECK(message("preset = kdv-1soliton\ndt = abc\n").find("'dt'") != std::string::npos);
  CHECK(message("preset = kdv-1soliton\ndt = 0.3\n").find("'dt'") != std::string::npos);
  CHECK(message("preset = kdv-1soliton\nK = 2\n").find("'K'") != std::string::npos);
  CHECK(message("preset = nothing\n").find("preset") != std::string::npos);
  CHECK(message("preset = kdv-1soliton\nscheme = rk4\n").find("scheme") != std::string::npos);
  CHECK(message("preset = kdv-1soliton\ndt = 0.1\ndt = 0.2\n").find("duplicate") != std::string::npos);
  CHECK(message("equation = kdv\nK = 10\nL = 1\ndt = 0.1\nT = 1\n").find("initial_condition") !=
        std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("expressions") {
  const Expression e = Expression::parse("2*sech(x - L/2)^2 + -1 + abs(-3) / 3");
  CHECK(e.evaluate({{"x", 20.0}, {"L", 40.0}}) == doctest::Approx(2.0));
  CHECK(Expression::parse("2^3^2").evaluate({}) == doctest::Approx(512.0));
  CHECK(Expression::parse("-2^2").evaluate({}) == doctest::Approx(-4.0));
  CHECK(Expression::parse("cos(pi)").evaluate({}) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(Expression::parse("2*(x"), ExpressionError);
  CHECK_THROWS_AS(Expression::parse("foo(1)"), ExpressionError);
  CHECK_THROWS_AS(Expression::parse("y").evaluate({{"x", 1.0}}), ExpressionError);
}

TEST_CASE("analytic references") {
  const PeriodicGrid g(800, 40.0);
  const Vector u0 = initial_state("kdv-1soliton", g);
  CHECK((*reference_solution("kdv-1soliton", 0.0, g) - u0).norm() == 0.0);
  CHECK((*reference_solution("kdv-2soliton", 0.0, g) - initial_state("kdv-2soliton", g))
            .lpNorm<Eigen::Infinity>() < 1e-12);
  CHECK((*reference_solution("ch-1peakon", 0.0, g) - initial_state("ch-1peakon", g)).norm() == 0.0);
  CHECK_FALSE(reference_solution("ch-2peakon", 0.0, g));
  CHECK_FALSE(reference_solution("kdv-2soliton", 50.0, g));
  CHECK(wave_speed("kdv-1soliton") == 4.0);
  CHECK(wave_speed("ch-1peakon") == 1.0);

  std::vector<double> xs, ts{0.0, 0.5, 1.0, 2.0};
  for (int i = 0; i < 80; ++i) xs.push_back(0.5 * i + 0.13);
  const double r1 = kdv_residual([](double x, double t) { return kdv_soliton(x, t, 40.0); }, xs, ts);
  const double r2 =
      kdv_residual([](double x, double t) { return kdv_two_soliton(x, t, 40.0); }, xs, ts);
  CHECK(r1 < kReferenceResidualTolerance);
  CHECK(r2 < kReferenceResidualTolerance);
  // A transcription slip (wrong speed) is caught.
  const double wrong = kdv_residual(
      [](double x, double t) { return 2.0 * sech2(wrap_centered(x - 3.0 * t - 20.0, 40.0)); }, xs, ts);
  CHECK(wrong > 0.1);
  CHECK_NOTHROW(validate_reference("kdv-1soliton", 40.0, 100.0));
  CHECK_NOTHROW(validate_reference("kdv-2soliton", 40.0, 100.0));
  CHECK_NOTHROW(validate_reference("ch-1peakon", 40.0, 5.0));
}

TEST_CASE("number formatting round-trips") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 100; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(std::stod(format_number(v)) == v);
  }
  CHECK(format_number(std::nan("")).empty());
  CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("run writes deterministic CSVs") {
  const std::string dir = temp_dir("run");
  RunConfig c = parse_config("preset = kdv-1soliton\nK = 200\nL = 40\ndt = 0.01\nT = 0.5\n"
                             "scheme = pdgm\nrecord_stride = 10\n");
  c.output_dir = dir + "/a";
  c.plots = true;
  const TrajectoryRecord r = run(c);
  CHECK(r.times.size() == 6);
  CHECK(r.h2.size() == r.times.size());
  CHECK(r.h2_polarized.size() == r.times.size());
  CHECK(std::isnan(r.h2_polarized[0]));
  CHECK(r.global_error.size() == r.times.size());
  CHECK(r.max_invariant_drift < 1e-9);
  CHECK_FALSE(r.blow_up_time);

  const std::string states = read_file(dir + "/a/states.csv");
  const std::string diag = read_file(dir + "/a/diagnostics.csv");
  CHECK(states.rfind("t,x0,x1,", 0) == 0);
  CHECK(states.find(",x199\n") != std::string::npos);
  CHECK(diag.rfind("t,H2,H2_polarized,H1,shape_err,phase_err,global_err,rel_energy_err\n", 0) == 0);
  CHECK(std::filesystem::exists(dir + "/a/waterfall.svg"));
  CHECK(std::filesystem::exists(dir + "/a/errors.svg"));
  CHECK_FALSE(std::filesystem::exists(dir + "/a/states.csv.tmp"));

  c.output_dir = dir + "/b";
  run(c);
  CHECK(read_file(dir + "/b/states.csv") == states);
  CHECK(read_file(dir + "/b/diagnostics.csv") == diag);
}

TEST_CASE("CH PDGM preserves the polarised invariant") {
  RunConfig c = parse_config("preset = ch-1peakon\nK = 250\nL = 40\nT = 0.04\nscheme = pdgm\n");
  const TrajectoryRecord r = run(c, false);
  CHECK(r.steps_taken == 200);
  CHECK(r.max_invariant_drift < 1e-9);
  CHECK(r.global_error.back() < 0.1);
}

TEST_CASE("ode demo and every scheme") {
  for (const char* scheme : {"mp", "kahan", "kahan2", "pdgm", "pdgm-avf", "pdgm-ia", "pdgm-sia",
                             "tableau:kahan", "tableau:midpoint"}) {
    RunConfig c = parse_config(std::string("preset = ode-demo\nT = 1\nscheme = ") + scheme + "\n");
    const TrajectoryRecord r = run(c, false);
    CHECK(r.steps_taken == 100);
    CHECK(r.rel_energy_error.back() < 1e-3);
    if (std::string(scheme) != "mp" && std::string(scheme) != "tableau:midpoint") {
      CHECK(r.max_invariant_drift < 1e-9);
    }
  }
}

TEST_CASE("kahan2 on a non-homogeneous model runs through the lifted system") {
  const RunConfig one = parse_config("preset = kdv-1soliton\nT = 0.25\nscheme = kahan\n");
  const RunConfig two = parse_config("preset = kdv-1soliton\nT = 0.25\nscheme = kahan2\n");
  const TrajectoryRecord a = run(one, false);
  const TrajectoryRecord b = run(two, false);
  REQUIRE(a.states.size() == b.states.size());
  CHECK((a.states.back() - b.states.back()).norm() < 1e-9 * a.states.back().norm());
  CHECK(b.max_invariant_drift < 1e-9);
}

TEST_CASE("sweep records per-row failures") {
  const std::string dir = temp_dir("sweep");
  RunConfig c = parse_config("preset = ode-demo\nT = 1\n");
  c.output_dir = dir;
  const auto rows = sweep(c, "dt", {"0.01", "0.3", "0.05"});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].completed);
  CHECK_FALSE(rows[1].completed);
  CHECK_FALSE(rows[1].error.empty());
  CHECK(rows[2].completed);
  const std::string csv = read_file(dir + "/sweep_dt.csv");
  CHECK(csv.rfind("value,completed,blow_up_time,max_invariant_drift,final_global_error,error\n", 0) == 0);
  CHECK(std::filesystem::exists(dir + "/dt=0.05/states.csv"));
  CHECK_THROWS_AS(sweep(c, "T", {"1"}), ConfigError);
}

}  // TEST_SUITE
