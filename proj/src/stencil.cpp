#include "linimp/stencil.hpp"

#include <numeric>

namespace linimp {

BandedCirculantOperator::BandedCirculantOperator(std::vector<Tap> taps, Index size)
    : taps_(std::move(taps)), size_(size) {
  if (size_ < 3) throw std::invalid_argument("circulant operator needs size >= 3");
}

Vector BandedCirculantOperator::apply(const Vector& v) const {
  require_same_size(v.size(), size_, "BandedCirculantOperator::apply");
  Vector out = Vector::Zero(size_);
  for (const auto& tap : taps_) {
    for (Index k = 0; k < size_; ++k) {
      Index j = (k + tap.offset) % size_;
      if (j < 0) j += size_;
      out[k] += tap.coefficient * v[j];
    }
  }
  return out;
}

SparseMatrix BandedCirculantOperator::to_sparse() const {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(taps_.size() * static_cast<std::size_t>(size_));
  for (const auto& tap : taps_) {
    for (Index k = 0; k < size_; ++k) {
      Index j = (k + tap.offset) % size_;
      if (j < 0) j += size_;
      entries.emplace_back(k, j, tap.coefficient);
    }
  }
  SparseMatrix m(size_, size_);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

DenseMatrix BandedCirculantOperator::to_dense() const { return DenseMatrix(to_sparse()); }

double BandedCirculantOperator::coefficient_sum() const {
  return std::accumulate(taps_.begin(), taps_.end(), 0.0,
                         [](double acc, const Tap& t) { return acc + t.coefficient; });
}

BandedCirculantOperator make_operator(StencilKind kind, const PeriodicGrid& grid) {
  const double h = grid.spacing();
  const Index n = grid.points();
  switch (kind) {
    case StencilKind::forward:
      return {{{1, 1.0 / h}, {0, -1.0 / h}}, n};
    case StencilKind::backward:
      return {{{0, 1.0 / h}, {-1, -1.0 / h}}, n};
    case StencilKind::central:
      return {{{1, 0.5 / h}, {-1, -0.5 / h}}, n};
    case StencilKind::second_central:
      return {{{1, 1.0 / (h * h)}, {0, -2.0 / (h * h)}, {-1, 1.0 / (h * h)}}, n};
    case StencilKind::forward_mean:
      return {{{1, 0.5}, {0, 0.5}}, n};
    case StencilKind::backward_mean:
      return {{{0, 0.5}, {-1, 0.5}}, n};
  }
  throw std::invalid_argument("unknown stencil kind");
}

DifferenceOperators::DifferenceOperators(const PeriodicGrid& g)
    : grid(g),
      forward(make_operator(StencilKind::forward, g).to_sparse()),
      backward(make_operator(StencilKind::backward, g).to_sparse()),
      central(make_operator(StencilKind::central, g).to_sparse()),
      second_central(make_operator(StencilKind::second_central, g).to_sparse()),
      forward_mean(make_operator(StencilKind::forward_mean, g).to_sparse()),
      backward_mean(make_operator(StencilKind::backward_mean, g).to_sparse()),
      identity(g.points(), g.points()) {
  identity.setIdentity();
}

}  // namespace linimp
