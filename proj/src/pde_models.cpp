#include "linimp/pde_models.hpp"

namespace linimp {
namespace {

SparseMatrix diag(const Vector& v) {
  SparseMatrix d(v.size(), v.size());
  d.reserve(Eigen::VectorXi::Constant(v.size(), 1));
  for (Index i = 0; i < v.size(); ++i) d.insert(i, i) = v[i];
  d.makeCompressed();
  return d;
}

}  // namespace

// ---------------------------------------------------------------- Camassa-Holm

CamassaHolmModel::CamassaHolmModel(const PeriodicGrid& grid, double a_param)
    : ops_(std::make_shared<DifferenceOperators>(grid)), a_(a_param) {
  auto ops = ops_;
  auto hessian = [ops](const Vector& u) {
    const Vector dpu = ops->forward * u;
    return SparseMatrix(3.0 * diag(u) + ops->backward_mean * diag(dpu) * ops->forward -
                        ops->second_central * diag(u));
  };
  CubicSystemParts parts;
  parts.dim = grid.points();
  parts.skew = -ops->central;
  parts.mass = SparseMatrix(ops->identity - ops->second_central);
  parts.cubic_hessian = hessian;
  parts.energy = [ops](const Vector& u) {
    const Vector dp = ops->forward * u;
    const Vector dm = ops->backward * u;
    return 0.5 * (u.array().cube() + u.array() * (dp.array().square() + dm.array().square()) / 2.0)
                     .sum();
  };
  parts.gradient = [ops](const Vector& u) {
    const Vector sq = u.array().square();
    const Vector dp = ops->forward * u;
    const Vector dp_sq = dp.array().square();
    return Vector(1.5 * sq + 0.5 * (ops->backward_mean * dp_sq) - 0.5 * (ops->second_central * sq));
  };
  system_ = std::make_shared<CubicHamiltonianSystem>(std::move(parts));
}

double CamassaHolmModel::energy(const Vector& u) const { return system_->energy(u); }
Vector CamassaHolmModel::gradient(const Vector& u) const { return system_->gradient(u); }
SparseMatrix CamassaHolmModel::hessian(const Vector& u) const { return system_->hessian(u); }

double CamassaHolmModel::polarized_energy(const Vector& u, const Vector& v) const {
  require_same_size(u.size(), grid().points(), "CamassaHolmModel::polarized_energy");
  require_same_size(v.size(), grid().points(), "CamassaHolmModel::polarized_energy");
  const auto& ops = *ops_;
  const Eigen::ArrayXd uu = u.array(), vv = v.array();
  const Eigen::ArrayXd p = (ops.forward * u).array();
  const Eigen::ArrayXd q = (ops.forward * v).array();
  const Eigen::ArrayXd mu = (ops.forward_mean * u).array();
  const Eigen::ArrayXd mv = (ops.forward_mean * v).array();
  const Eigen::ArrayXd terms = uu * vv * (uu + vv) / 2.0 + a_ * ((mu + mv) / 2.0) * p * q +
                               (1.0 - a_) * (mu * q.square() + mv * p.square()) / 2.0;
  return 0.5 * terms.sum();
}

Vector CamassaHolmModel::polarized_gradient(const Vector& u, const Vector& v) const {
  const auto& ops = *ops_;
  const Vector p = ops.forward * u;
  const Vector q = ops.forward * v;
  const Vector mu = ops.forward_mean * u;
  const Vector mv = ops.forward_mean * v;
  const Vector pq = p.cwiseProduct(q);
  const Vector sum_q = (mu + mv).cwiseProduct(q);
  const Vector q_sq = q.cwiseProduct(q);
  const Vector mv_p = mv.cwiseProduct(p);
  Vector g = 0.5 * u.cwiseProduct(v) + 0.25 * v.cwiseProduct(v);
  g += (a_ / 4.0) * (ops.backward_mean * pq - ops.backward * sum_q);
  g += ((1.0 - a_) / 4.0) * (ops.backward_mean * q_sq - 2.0 * (ops.backward * mv_p));
  return g;
}

SparseMatrix CamassaHolmModel::polarized_hessian(const Vector&, const Vector& v) const {
  const auto& ops = *ops_;
  const Vector q = ops.forward * v;
  const Vector mv = ops.forward_mean * v;
  const SparseMatrix dq = diag(q);
  return SparseMatrix(0.5 * diag(v) +
                      (a_ / 4.0) * (ops.backward_mean * dq * ops.forward -
                                    ops.backward * dq * ops.forward_mean) -
                      ((1.0 - a_) / 2.0) * (ops.backward * diag(mv) * ops.forward));
}

PolarizedEnergy CamassaHolmModel::polarized() const {
  auto self = std::make_shared<CamassaHolmModel>(*this);
  PolarizedEnergy pe;
  pe.value = [self](const Vector& u, const Vector& v) { return self->polarized_energy(u, v); };
  pe.gradient_first = [self](const Vector& u, const Vector& v) {
    return self->polarized_gradient(u, v);
  };
  pe.hessian_first = [self](const Vector& u, const Vector& v) {
    return self->polarized_hessian(u, v);
  };
  pe.degree_in_first = 2;
  return pe;
}

double CamassaHolmModel::h1(const Vector& u) const {
  return diagnostics_h1(Equation::camassa_holm, grid(), u);
}

// ------------------------------------------------------------------------ KdV

KdVModel::KdVModel(const PeriodicGrid& grid, double a_param)
    : ops_(std::make_shared<DifferenceOperators>(grid)), a_(a_param) {
  auto ops = ops_;
  CubicSystemParts parts;
  parts.dim = grid.points();
  parts.skew = ops->central;
  parts.cubic_hessian = [](const Vector& u) { return SparseMatrix(-6.0 * diag(u)); };
  parts.quadratic_hessian = -ops->second_central;
  parts.energy = [ops](const Vector& u) {
    const Vector dp = ops->forward * u;
    const Vector dm = ops->backward * u;
    return (-u.array().cube() + (dp.array().square() + dm.array().square()) / 4.0).sum();
  };
  parts.gradient = [ops](const Vector& u) {
    return Vector(-3.0 * u.array().square().matrix() - ops->second_central * u);
  };
  system_ = std::make_shared<CubicHamiltonianSystem>(std::move(parts));
}

double KdVModel::energy(const Vector& u) const { return system_->energy(u); }
Vector KdVModel::gradient(const Vector& u) const { return system_->gradient(u); }
SparseMatrix KdVModel::hessian(const Vector& u) const { return system_->hessian(u); }

double KdVModel::polarized_energy(const Vector& u, const Vector& v) const {
  require_same_size(u.size(), grid().points(), "KdVModel::polarized_energy");
  require_same_size(v.size(), grid().points(), "KdVModel::polarized_energy");
  const auto& ops = *ops_;
  const Eigen::ArrayXd uu = u.array(), vv = v.array();
  const Eigen::ArrayXd p = (ops.forward * u).array();
  const Eigen::ArrayXd q = (ops.forward * v).array();
  return (-uu * vv * (uu + vv) / 2.0 + (a_ / 2.0) * p * q +
          ((1.0 - a_) / 2.0) * (p.square() + q.square()) / 2.0)
      .sum();
}

Vector KdVModel::polarized_gradient(const Vector& u, const Vector& v) const {
  const auto& ops = *ops_;
  return Vector(-u.cwiseProduct(v) - 0.5 * v.cwiseProduct(v) -
                (a_ / 2.0) * (ops.second_central * v) -
                ((1.0 - a_) / 2.0) * (ops.second_central * u));
}

SparseMatrix KdVModel::polarized_hessian(const Vector&, const Vector& v) const {
  return SparseMatrix(-diag(v) - ((1.0 - a_) / 2.0) * ops_->second_central);
}

PolarizedEnergy KdVModel::polarized() const {
  auto self = std::make_shared<KdVModel>(*this);
  PolarizedEnergy pe;
  pe.value = [self](const Vector& u, const Vector& v) { return self->polarized_energy(u, v); };
  pe.gradient_first = [self](const Vector& u, const Vector& v) {
    return self->polarized_gradient(u, v);
  };
  pe.hessian_first = [self](const Vector& u, const Vector& v) {
    return self->polarized_hessian(u, v);
  };
  pe.degree_in_first = 2;
  return pe;
}

double KdVModel::h1(const Vector& u) const { return diagnostics_h1(Equation::kdv, grid(), u); }

double diagnostics_h1(Equation equation, const PeriodicGrid& grid, const Vector& u) {
  require_same_size(u.size(), grid.points(), "diagnostics_h1");
  double sum = u.squaredNorm();
  if (equation == Equation::camassa_holm) {
    const double h = grid.spacing();
    for (Index k = 0; k < grid.points(); ++k) {
      const double dp = (u[grid.wrap(k + 1)] - u[k]) / h;
      sum += dp * dp;
    }
  }
  return 0.5 * sum;
}

}  // namespace linimp
