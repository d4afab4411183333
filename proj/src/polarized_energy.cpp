#include "linimp/polarized_energy.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace linimp {

PolarizedEnergy kahan_polarized_energy(std::shared_ptr<const CubicHamiltonianSystem> sys) {
  PolarizedEnergy pe;
  pe.value = [sys](const Vector& x, const Vector& y) { return kahan_invariant(*sys, x, y); };
  // 6 grad_x = 3 c + Q (x + 2 y) + C(y) (2 x + y) / 2
  pe.gradient_first = [sys](const Vector& x, const Vector& y) {
    Vector g = 0.5 * (sys->cubic_hessian(y) * (2.0 * x + y));
    if (!sys->is_homogeneous()) {
      g += sys->quadratic_hessian() * (x + 2.0 * y) + 3.0 * sys->linear_gradient();
    }
    return Vector(g / 6.0);
  };
  pe.hessian_first = [sys](const Vector&, const Vector& y) {
    return SparseMatrix((sys->cubic_hessian(y) + sys->quadratic_hessian()) / 6.0);
  };
  pe.degree_in_first = 2;
  return pe;
}

double kahan_invariant(const CubicHamiltonianSystem& sys, const Vector& x, const Vector& y) {
  require_same_size(x.size(), sys.dim(), "kahan_invariant");
  require_same_size(y.size(), sys.dim(), "kahan_invariant");
  const Vector mid = 0.5 * (x + y);
  const double cubic = x.dot(sys.cubic_hessian(mid) * y);
  if (sys.is_homogeneous()) return cubic / 6.0;
  // Bordered Hessian of the homogenized energy at (1, mid), contracted with (1, x), (1, y).
  const Vector& c = sys.linear_gradient();
  const SparseMatrix& q = sys.quadratic_hessian();
  const Vector edge = q * mid + 2.0 * c;
  const double total = 2.0 * c.dot(mid) + edge.dot(x) + edge.dot(y) + cubic + x.dot(q * y);
  return total / 6.0;
}

Vector pdg_quadratic(const PolarizedEnergy& pe, const Vector& x, const Vector& y, const Vector& z) {
  if (!pe.quadratic_in_each()) {
    throw std::invalid_argument("pdg_quadratic: energy is not quadratic in each argument");
  }
  return 2.0 * pe.gradient_first(0.5 * (x + z), y);
}

namespace {

struct GaussRule {
  std::array<double, 5> nodes;
  std::array<double, 5> weights;
};

// Gauss-Legendre rules mapped to [0, 1].
const GaussRule& gauss_rule(int n) {
  static const std::array<GaussRule, 5> rules = [] {
    std::array<GaussRule, 5> r{};
    const std::array<std::array<double, 5>, 5> x = {{
        {0.0},
        {-0.57735026918962576451, 0.57735026918962576451},
        {-0.77459666924148337704, 0.0, 0.77459666924148337704},
        {-0.86113631159405257522, -0.33998104358485626480, 0.33998104358485626480,
         0.86113631159405257522},
        {-0.90617984593866399280, -0.53846931010568309104, 0.0, 0.53846931010568309104,
         0.90617984593866399280},
    }};
    const std::array<std::array<double, 5>, 5> w = {{
        {2.0},
        {1.0, 1.0},
        {0.55555555555555555556, 0.88888888888888888889, 0.55555555555555555556},
        {0.34785484513745385737, 0.65214515486254614263, 0.65214515486254614263,
         0.34785484513745385737},
        {0.23692688505618908751, 0.47862867049936646804, 0.56888888888888888889,
         0.47862867049936646804, 0.23692688505618908751},
    }};
    for (std::size_t n = 0; n < 5; ++n) {
      for (std::size_t i = 0; i <= n; ++i) {
        r[n].nodes[i] = 0.5 * (x[n][i] + 1.0);
        r[n].weights[i] = 0.5 * w[n][i];
      }
    }
    return r;
  }();
  if (n < 1 || n > 5) throw std::invalid_argument("Gauss-Legendre rule supports 1 to 5 nodes");
  return rules[static_cast<std::size_t>(n - 1)];
}

}  // namespace

Vector pdg_avf(const PolarizedEnergy& pe, const Vector& x, const Vector& y, const Vector& z,
               int nodes) {
  require_same_size(x.size(), z.size(), "pdg_avf");
  if (nodes == 0) nodes = std::clamp((pe.degree_in_first + 1) / 2, 2, 5);
  const GaussRule& rule = gauss_rule(nodes);
  Vector sum = Vector::Zero(x.size());
  for (int i = 0; i < nodes; ++i) {
    const double s = rule.nodes[static_cast<std::size_t>(i)];
    sum += rule.weights[static_cast<std::size_t>(i)] * pe.gradient_first(s * x + (1.0 - s) * z, y);
  }
  return 2.0 * sum;
}

Vector pdg_itoh_abe(const PolarizedEnergy& pe, const Vector& x, const Vector& y, const Vector& z) {
  require_same_size(x.size(), z.size(), "pdg_itoh_abe");
  require_same_size(x.size(), y.size(), "pdg_itoh_abe");
  const Index d = x.size();
  Vector out(d);
  Vector w = x;  // (z_1..z_{i-1}, x_i..x_d)
  double before = pe.value(w, y);
  for (Index i = 0; i < d; ++i) {
    if (x[i] == z[i]) {
      out[i] = 2.0 * pe.gradient_first(w, y)[i];
      continue;
    }
    w[i] = z[i];
    const double after = pe.value(w, y);
    out[i] = 2.0 * (after - before) / (z[i] - x[i]);
    before = after;
  }
  return out;
}

Vector pdg_itoh_abe_symmetrized(const PolarizedEnergy& pe, const Vector& x, const Vector& y,
                                const Vector& z) {
  return 0.5 * (pdg_itoh_abe(pe, x, y, z) + pdg_itoh_abe(pe, z, y, x));
}

Vector polarized_discrete_gradient(PdgKind kind, const PolarizedEnergy& pe, const Vector& x,
                                   const Vector& y, const Vector& z) {
  switch (kind) {
    case PdgKind::quadratic:
      return pdg_quadratic(pe, x, y, z);
    case PdgKind::avf:
      return pdg_avf(pe, x, y, z);
    case PdgKind::itoh_abe:
      return pdg_itoh_abe(pe, x, y, z);
    case PdgKind::symmetrized_itoh_abe:
      return pdg_itoh_abe_symmetrized(pe, x, y, z);
  }
  throw std::invalid_argument("unknown PDG kind");
}

}  // namespace linimp
