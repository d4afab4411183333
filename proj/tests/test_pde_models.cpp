#include <doctest.h>

#include "linimp/pde_models.hpp"
#include "linimp/polarized_energy.hpp"
#include "linimp/steppers.hpp"
#include "support.hpp"

using namespace linimp;
using testing::random_vector;
using testing::rel_diff;

namespace {

// Plain-loop periodic differences, independent of the stencil module.
struct Loops {
  Index n;
  double h;
  Index at(Index k) const { return ((k % n) + n) % n; }
  double dp(const Vector& u, Index k) const { return (u[at(k + 1)] - u[at(k)]) / h; }
  double dm(const Vector& u, Index k) const { return (u[at(k)] - u[at(k - 1)]) / h; }
  double mp(const Vector& u, Index k) const { return 0.5 * (u[at(k + 1)] + u[at(k)]); }

  DenseMatrix shift_matrix(int offset) const {
    DenseMatrix s = DenseMatrix::Zero(n, n);
    for (Index k = 0; k < n; ++k) s(k, at(k + offset)) = 1.0;
    return s;
  }
  DenseMatrix id() const { return DenseMatrix::Identity(n, n); }
  DenseMatrix dplus() const { return (shift_matrix(1) - id()) / h; }
  DenseMatrix dminus() const { return (id() - shift_matrix(-1)) / h; }
  DenseMatrix dc() const { return (shift_matrix(1) - shift_matrix(-1)) / (2 * h); }
  DenseMatrix d2() const { return (shift_matrix(1) - 2 * id() + shift_matrix(-1)) / (h * h); }
  DenseMatrix mminus() const { return 0.5 * (id() + shift_matrix(-1)); }
};

double ch_energy_loops(const Loops& l, const Vector& u) {
  double s = 0.0;
  for (Index k = 0; k < l.n; ++k) {
    const double p = l.dp(u, k), m = l.dm(u, k);
    s += u[k] * u[k] * u[k] + u[k] * (p * p + m * m) / 2.0;
  }
  return 0.5 * s;
}

double ch_polarized_loops(const Loops& l, const Vector& u, const Vector& v, double a) {
  double s = 0.0;
  const Vector w = 0.5 * (u + v);
  for (Index k = 0; k < l.n; ++k) {
    const double pu = l.dp(u, k), pv = l.dp(v, k);
    s += u[k] * v[k] * (u[k] + v[k]) / 2.0 + a * l.mp(w, k) * pu * pv +
         (1.0 - a) * (l.mp(u, k) * pv * pv + l.mp(v, k) * pu * pu) / 2.0;
  }
  return 0.5 * s;
}

double kdv_energy_loops(const Loops& l, const Vector& u) {
  double s = 0.0;
  for (Index k = 0; k < l.n; ++k) {
    const double p = l.dp(u, k), m = l.dm(u, k);
    s += -u[k] * u[k] * u[k] + (p * p + m * m) / 4.0;
  }
  return s;
}

double kdv_polarized_loops(const Loops& l, const Vector& u, const Vector& v, double a) {
  double s = 0.0;
  for (Index k = 0; k < l.n; ++k) {
    const double pu = l.dp(u, k), pv = l.dp(v, k);
    s += -u[k] * v[k] * (u[k] + v[k]) / 2.0 + a / 2.0 * pu * pv +
         (1.0 - a) / 2.0 * (pu * pu + pv * pv) / 2.0;
  }
  return s;
}

// Hand-differentiated first-argument gradient of the KdV polarised energy.
Vector kdv_polarized_gradient_loops(const Loops& l, const Vector& u, const Vector& v, double a) {
  const DenseMatrix d2 = l.d2();
  return Vector(-(u.array() * v.array()) - 0.5 * v.array().square()) - 0.5 * a * d2 * v -
         0.5 * (1.0 - a) * d2 * u;
}

Vector smooth_profile(const PeriodicGrid& g) {
  Vector u(g.points());
  for (Index k = 0; k < g.points(); ++k) {
    const double x = g.coordinate(k);
    u[k] = std::sin(x) + 0.5 * std::cos(2 * x);
  }
  return u;
}

}  // namespace

TEST_SUITE("pde-models") {

TEST_CASE("CH energy") {
  PeriodicGrid g4(4, 4.0);
  CamassaHolmModel m4(g4);
  CHECK(m4.energy(Vector::Ones(4)) == doctest::Approx(2.0));
  CHECK(m4.energy(Vector::Zero(4)) == 0.0);

  std::mt19937_64 rng(51);
  PeriodicGrid g(8, 2.0);
  CamassaHolmModel m(g);
  const Loops l{8, g.spacing()};
  const Vector u = random_vector(8, rng);
  CHECK(m.energy(u) == doctest::Approx(ch_energy_loops(l, u)).epsilon(1e-13));
  CHECK(m.energy(1.7 * u) == doctest::Approx(1.7 * 1.7 * 1.7 * m.energy(u)).epsilon(1e-13));
  CHECK(m.system()->is_homogeneous());
}

TEST_CASE("CH gradient and Hessian") {
  std::mt19937_64 rng(52);
  PeriodicGrid g(8, 2.0);
  CamassaHolmModel m(g);
  const Loops l{8, g.spacing()};
  const Vector u = random_vector(8, rng);
  const Vector fd = testing::fd_gradient([&](const Vector& z) { return m.energy(z); }, u, 1e-6);
  CHECK(rel_diff(m.gradient(u), fd) < 1e-5);

  const Vector literal = 1.5 * u.array().square().matrix() +
                         0.5 * l.mminus() * (l.dplus() * u).array().square().matrix() -
                         0.5 * l.d2() * u.array().square().matrix();
  CHECK(rel_diff(m.gradient(u), literal) < 1e-12);

  const DenseMatrix hess = m.hessian(u);
  const DenseMatrix jac =
      testing::fd_jacobian([&](const Vector& z) { return Vector(m.gradient(z)); }, u, 1e-6);
  CHECK((hess - jac).norm() < 1e-5 * hess.norm());
  const DenseMatrix literal_h = 3.0 * DenseMatrix(u.asDiagonal()) +
                                l.mminus() * DenseMatrix((l.dplus() * u).asDiagonal()) * l.dplus() -
                                l.d2() * DenseMatrix(u.asDiagonal());
  CHECK((hess - literal_h).norm() < 1e-12 * literal_h.norm());

  const Vector c = Vector::Constant(8, 0.7);
  CHECK(rel_diff(m.gradient(c), Vector::Constant(8, 1.5 * 0.49)) < 1e-14);
}

TEST_CASE("CH polarised energy") {
  std::mt19937_64 rng(53);
  PeriodicGrid g(10, 3.0);
  const Loops l{10, g.spacing()};
  for (double a : {0.5, -1.0, 0.0, 2.0}) {
    CamassaHolmModel m(g, a);
    const Vector u = random_vector(10, rng), v = random_vector(10, rng);
    CHECK(m.polarized_energy(u, v) == doctest::Approx(ch_polarized_loops(l, u, v, a)).epsilon(1e-12));
    CHECK(m.polarized_energy(u, u) == doctest::Approx(m.energy(u)).epsilon(1e-12));
    CHECK(m.polarized_energy(u, v) == doctest::Approx(m.polarized_energy(v, u)).epsilon(1e-12));

    const Vector fd =
        testing::fd_gradient([&](const Vector& z) { return m.polarized_energy(z, v); }, u, 1e-6);
    CHECK(rel_diff(m.polarized_gradient(u, v), fd) < 1e-5);
    const DenseMatrix jac = testing::fd_jacobian(
        [&](const Vector& z) { return Vector(m.polarized_gradient(z, v)); }, u, 1e-6);
    CHECK((DenseMatrix(m.polarized_hessian(u, v)) - jac).norm() < 1e-5 * jac.norm());

    // Quadratic in the first slot: third differences vanish.
    const Vector d = random_vector(10, rng);
    auto f = [&](double s) { return m.polarized_energy(u + s * d, v); };
    const double third = f(3) - 3 * f(2) + 3 * f(1) - f(0);
    CHECK(std::abs(third) < 1e-9 * (1.0 + std::abs(f(3))));
  }
}

TEST_CASE("KdV energy and split") {
  PeriodicGrid g4(4, 4.0);
  KdVModel m4(g4);
  CHECK(m4.energy(Vector::Ones(4)) == doctest::Approx(-4.0));
  CHECK(diagnostics_h1(Equation::kdv, g4, Vector::Ones(4)) == doctest::Approx(2.0));
  CHECK(diagnostics_h1(Equation::kdv, g4, Vector::Zero(4)) == 0.0);
  CHECK(diagnostics_h1(Equation::camassa_holm, g4, Vector::Zero(4)) == 0.0);

  std::mt19937_64 rng(54);
  PeriodicGrid g(9, 2.0);
  KdVModel m(g);
  const Loops l{9, g.spacing()};
  const Vector u = random_vector(9, rng);
  CHECK(m.energy(u) == doctest::Approx(kdv_energy_loops(l, u)).epsilon(1e-13));
  const Vector literal = -3.0 * u.array().square().matrix() - l.d2() * u;
  CHECK(rel_diff(m.gradient(u), literal) < 1e-12);
  const Vector fd = testing::fd_gradient([&](const Vector& z) { return m.energy(z); }, u, 1e-6);
  CHECK(rel_diff(m.gradient(u), fd) < 1e-5);

  auto sys = m.system();
  CHECK((DenseMatrix(sys->cubic_hessian(u)) + 6.0 * DenseMatrix(u.asDiagonal())).norm() < 1e-13);
  CHECK((DenseMatrix(sys->quadratic_hessian()) + l.d2()).norm() < 1e-9);
  CHECK((sys->structure_matrix() - l.dc()).norm() < 1e-12);
  CHECK((sys->structure_matrix() + sys->structure_matrix().transpose()).norm() == 0.0);
  CHECK(DenseMatrix(m.hessian(u)).isApprox(-6.0 * DenseMatrix(u.asDiagonal()) - l.d2(), 1e-12));
}

TEST_CASE("KdV polarised energy") {
  std::mt19937_64 rng(55);
  PeriodicGrid g(10, 3.0);
  const Loops l{10, g.spacing()};
  const Vector u = random_vector(10, rng), v = random_vector(10, rng);
  double diag0 = 0.0;
  for (double a : {-1.0, 0.0, 1.0, -0.5}) {
    KdVModel m(g, a);
    CHECK(m.polarized_energy(u, v) == doctest::Approx(kdv_polarized_loops(l, u, v, a)).epsilon(1e-12));
    CHECK(m.polarized_energy(u, u) == doctest::Approx(m.energy(u)).epsilon(1e-12));
    CHECK(m.polarized_energy(u, v) == doctest::Approx(m.polarized_energy(v, u)).epsilon(1e-12));
    CHECK(rel_diff(m.polarized_gradient(u, v), kdv_polarized_gradient_loops(l, u, v, a)) < 1e-12);
    if (a == -1.0) diag0 = m.polarized_energy(u, u);
    CHECK(m.polarized_energy(u, u) == doctest::Approx(diag0).epsilon(1e-14));
  }
}

TEST_CASE("CH Kahan step is the literal scheme") {
  std::mt19937_64 rng(56);
  PeriodicGrid g(16, 4.0);
  CamassaHolmModel m(g);
  const Loops l{16, g.spacing()};
  const Vector u = random_vector(16, rng);
  const double dt = 0.01;
  const Vector next = kahan_step(*m.system(), u, dt);
  // (I - D2c)(U' - U)/dt = -1/2 Dc H''(U) U'
  const DenseMatrix mass = l.id() - l.d2();
  const DenseMatrix h = 3.0 * DenseMatrix(u.asDiagonal()) +
                        l.mminus() * DenseMatrix((l.dplus() * u).asDiagonal()) * l.dplus() -
                        l.d2() * DenseMatrix(u.asDiagonal());
  const Vector literal = (mass + 0.5 * dt * l.dc() * h).partialPivLu().solve(mass * u);
  CHECK(rel_diff(next, literal) < 1e-12);
}

TEST_CASE("KdV Kahan step satisfies the literal RK form") {
  std::mt19937_64 rng(57);
  PeriodicGrid g(20, 5.0);
  KdVModel m(g);
  const Loops l{20, g.spacing()};
  const Vector u = random_vector(20, rng);
  const double dt = 0.002;
  const Vector v = kahan_step(*m.system(), u, dt);
  auto grad = [&](const Vector& w) { return Vector(-3.0 * w.array().square().matrix() - l.d2() * w); };
  const Vector lhs = (v - u) / dt;
  const Vector rhs = -0.5 * l.dc() * (grad(u) + grad(v)) + 2.0 * l.dc() * grad(0.5 * (u + v));
  CHECK((lhs - rhs).norm() < 1e-9 * lhs.norm());
}

TEST_CASE("KdV PDGM step is the literal scheme") {
  std::mt19937_64 rng(58);
  PeriodicGrid g(20, 5.0);
  const double a = -0.5;
  KdVModel m(g, a);
  const Loops l{20, g.spacing()};
  const Vector u0 = random_vector(20, rng), u1 = random_vector(20, rng);
  const double dt = 0.002;
  const Vector u2 = pdg_scheme_step(*m.system(), m.polarized(), PdgKind::quadratic, u0, u1, dt);
  const Vector pdg = 2.0 * kdv_polarized_gradient_loops(l, 0.5 * (u0 + u2), u1, a);
  const Vector residual = (u2 - u0) / (2 * dt) - l.dc() * pdg;
  CHECK(residual.norm() < 1e-9 * ((u2 - u0) / (2 * dt)).norm());
}

TEST_CASE("CH structure is skew") {
  for (Index k : {8, 33, 64}) {
    PeriodicGrid g(k, 0.4 * k);
    CamassaHolmModel m(g);
    const DenseMatrix s = m.system()->structure_matrix();
    CHECK((s + s.transpose()).norm() < 1e-12 * s.norm());
    const Loops l{k, g.spacing()};
    CHECK((s + (l.id() - l.d2()).inverse() * l.dc()).norm() < 1e-10 * s.norm());
  }
}

TEST_CASE("semi-discretizations are second order consistent") {
  std::vector<double> kdv_err, ch_err;
  for (Index k : {32, 64, 128}) {
    PeriodicGrid g(k, 2 * M_PI);
    const Vector u = smooth_profile(g);
    Vector kdv_exact(k), ch_exact(k);
    for (Index i = 0; i < k; ++i) {
      const double x = g.coordinate(i);
      const double v = std::sin(x) + 0.5 * std::cos(2 * x);
      const double v1 = std::cos(x) - std::sin(2 * x);
      const double v2 = -std::sin(x) - 2 * std::cos(2 * x);
      const double v3 = -std::cos(x) + 4 * std::sin(2 * x);
      kdv_exact[i] = -6 * v * v1 - v3;            // d/dx (-3 u^2 - u_xx)
      ch_exact[i] = 3 * v * v1 - 2 * v1 * v2 - v * v3;  // d/dx (3/2 u^2 - u_x^2/2 - u u_xx)
    }
    KdVModel kdv(g);
    CamassaHolmModel ch(g);
    kdv_err.push_back((kdv.operators().central * kdv.gradient(u) - kdv_exact).lpNorm<Eigen::Infinity>());
    ch_err.push_back((ch.operators().central * ch.gradient(u) - ch_exact).lpNorm<Eigen::Infinity>());
  }
  for (std::size_t i = 1; i < 3; ++i) {
    const double kdv_order = std::log2(kdv_err[i - 1] / kdv_err[i]);
    const double ch_order = std::log2(ch_err[i - 1] / ch_err[i]);
    CHECK(kdv_order > 1.6);
    CHECK(kdv_order < 2.4);
    CHECK(ch_order > 1.6);
    CHECK(ch_order < 2.4);
  }
}

TEST_CASE("KdV energy drift under fine midpoint steps") {
  PeriodicGrid g(48, 2 * M_PI);
  KdVModel m(g);
  const Vector u0 = 0.5 * smooth_profile(g);
  auto drift = [&](double dt) {
    Vector u = u0;
    const int steps = static_cast<int>(std::lround(0.1 / dt));
    for (int i = 0; i < steps; ++i) u = midpoint_step(*m.system(), u, dt);
    return std::abs(m.energy(u) - m.energy(u0));
  };
  const double coarse = drift(0.002), fine = drift(0.001);
  CHECK(fine < coarse);
  CHECK(fine < 1e-4 * std::abs(m.energy(u0)));
}

}  // TEST_SUITE
