#ifndef CARTANKIT_SUBSPACE_HPP
#define CARTANKIT_SUBSPACE_HPP

#include <vector>

#include "cartankit/matrix.hpp"

namespace cartankit {

/// A linear subspace of M_n(C) carried by an orthonormal basis under the
/// trace inner product.  Orthonormalization is modified Gram-Schmidt in input
/// order, so bases are reproducible.
class Subspace {
public:
  explicit Subspace(Eigen::Index ambient_dim) : ambient_dim_(ambient_dim) {}

  static Subspace span_of(const std::vector<Matrix>& generators,
                          Eigen::Index ambient_dim);

  Eigen::Index ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Matrix>& basis() const { return basis_; }

  /// Adds m to the basis if it is independent of the current span.
  /// Returns true when the dimension grew.
  bool absorb(const Matrix& m);

  Matrix project(const Matrix& m) const;
  bool contains(const Matrix& m) const;
  bool contains(const Subspace& other) const;
  bool equals(const Subspace& other) const;

  /// Coordinates of m in the orthonormal basis (no membership check).
  CVector coordinates(const Matrix& m) const;
  Matrix from_coordinates(const CVector& c) const;

private:
  Eigen::Index ambient_dim_;
  std::vector<Matrix> basis_;
};

}  // namespace cartankit

#endif
