#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "linimp/hamiltonian_system.hpp"
#include "linimp/types.hpp"

namespace testing {

using linimp::DenseMatrix;
using linimp::Index;
using linimp::SparseMatrix;
using linimp::Vector;

inline Vector random_vector(Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

inline DenseMatrix random_matrix(Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseMatrix a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = u(rng);
  return a;
}

inline double rel_diff(const Vector& a, const Vector& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

/// Cubic H(x) = T(x,x,x)/6 + x^T Q x / 2 + c.x with a fully symmetric
/// tensor T, evaluated by plain loops.
struct CubicOracle {
  Index d = 0;
  std::vector<double> t;  // d^3 entries
  DenseMatrix q;
  Vector c;
  DenseMatrix s;  // skew structure

  double tensor(Index i, Index j, Index k) const { return t[(i * d + j) * d + k]; }

  double energy(const Vector& x) const {
    double e = 0.0;
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        for (Index k = 0; k < d; ++k) e += tensor(i, j, k) * x[i] * x[j] * x[k];
    return e / 6.0 + 0.5 * x.dot(q * x) + c.dot(x);
  }

  Vector gradient(const Vector& x) const {
    Vector g = q * x + c;
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        for (Index k = 0; k < d; ++k) g[i] += 0.5 * tensor(i, j, k) * x[j] * x[k];
    return g;
  }

  DenseMatrix cubic_hessian(const Vector& x) const {
    DenseMatrix h = DenseMatrix::Zero(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        for (Index k = 0; k < d; ++k) h(i, j) += tensor(i, j, k) * x[k];
    return h;
  }

  DenseMatrix hessian(const Vector& x) const { return cubic_hessian(x) + q; }

  Vector field(const Vector& x) const { return s * gradient(x); }

  std::shared_ptr<const linimp::CubicHamiltonianSystem> system(bool explicit_energy = true) const {
    linimp::CubicSystemParts parts;
    parts.dim = d;
    parts.skew = s.sparseView();
    auto self = std::make_shared<CubicOracle>(*this);
    parts.cubic_hessian = [self](const Vector& x) {
      return SparseMatrix(self->cubic_hessian(x).sparseView());
    };
    parts.quadratic_hessian = q.sparseView();
    parts.linear_gradient = c;
    if (explicit_energy) {
      parts.energy = [self](const Vector& x) { return self->energy(x); };
      parts.gradient = [self](const Vector& x) { return self->gradient(x); };
    }
    return std::make_shared<const linimp::CubicHamiltonianSystem>(std::move(parts));
  }
};

inline CubicOracle random_cubic(Index d, std::mt19937_64& rng, bool homogeneous) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CubicOracle o;
  o.d = d;
  o.t.assign(static_cast<std::size_t>(d * d * d), 0.0);
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j)
      for (Index k = j; k < d; ++k) {
        const double v = u(rng);
        const Index p[3] = {i, j, k};
        const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& r : perm) o.t[(p[r[0]] * d + p[r[1]]) * d + p[r[2]]] = v;
      }
  const DenseMatrix a = random_matrix(d, rng);
  o.s = a - a.transpose();
  if (homogeneous) {
    o.q = DenseMatrix::Zero(d, d);
    o.c = Vector::Zero(d);
  } else {
    const DenseMatrix b = random_matrix(d, rng);
    o.q = b + b.transpose();
    o.c = random_vector(d, rng);
  }
  return o;
}

/// Central-difference Jacobian of f at x.
template <class F>
DenseMatrix fd_jacobian(const F& f, const Vector& x, double eps) {
  const Vector f0 = f(x);
  DenseMatrix j(f0.size(), x.size());
  for (Index k = 0; k < x.size(); ++k) {
    Vector xp = x, xm = x;
    xp[k] += eps;
    xm[k] -= eps;
    j.col(k) = (f(xp) - f(xm)) / (2.0 * eps);
  }
  return j;
}

/// Central-difference gradient of a scalar function.
template <class F>
Vector fd_gradient(const F& f, const Vector& x, double eps) {
  Vector g(x.size());
  for (Index k = 0; k < x.size(); ++k) {
    Vector xp = x, xm = x;
    xp[k] += eps;
    xm[k] -= eps;
    g[k] = (f(xp) - f(xm)) / (2.0 * eps);
  }
  return g;
}

}  // namespace testing
