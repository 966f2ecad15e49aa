#include "cartankit/subspace.hpp"

#include <cmath>
#include <stdexcept>

#include "cartankit/config.hpp"

namespace cartankit {

Subspace Subspace::span_of(const std::vector<Matrix>& generators,
                           Eigen::Index ambient_dim) {
  Subspace s(ambient_dim);
  for (const Matrix& g : generators) s.absorb(g);
  return s;
}

bool Subspace::absorb(const Matrix& m) {
  if (m.rows() != ambient_dim_ || m.cols() != ambient_dim_)
    throw std::invalid_argument("Subspace::absorb: dimension mismatch");
  Matrix r = m;
  double scale = std::max(1.0, frob(m));
  // Two MGS sweeps; the second mops up the loss of orthogonality on
  // near-dependent inputs.
  for (int sweep = 0; sweep < 2; ++sweep)
    for (const Matrix& b : basis_) r -= trace_inner(b, r) * b;
  double n = frob(r);
  if (n <= tolerance() * scale) return false;
  basis_.push_back(r / n);
  return true;
}

Matrix Subspace::project(const Matrix& m) const {
  Matrix p = Matrix::Zero(ambient_dim_, ambient_dim_);
  for (const Matrix& b : basis_) p += trace_inner(b, m) * b;
  return p;
}

bool Subspace::contains(const Matrix& m) const {
  return frob(m - project(m)) <= tolerance() * std::max(1.0, frob(m));
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) return false;
  for (const Matrix& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

bool Subspace::equals(const Subspace& other) const {
  return dim() == other.dim() && contains(other) && other.contains(*this);
}

CVector Subspace::coordinates(const Matrix& m) const {
  CVector c(static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t i = 0; i < basis_.size(); ++i)
    c(static_cast<Eigen::Index>(i)) = trace_inner(basis_[i], m);
  return c;
}

Matrix Subspace::from_coordinates(const CVector& c) const {
  Matrix m = Matrix::Zero(ambient_dim_, ambient_dim_);
  for (std::size_t i = 0; i < basis_.size(); ++i)
    m += c(static_cast<Eigen::Index>(i)) * basis_[i];
  return m;
}

}  // namespace cartankit
