#ifndef CARTANKIT_STAR_ALGEBRA_HPP
#define CARTANKIT_STAR_ALGEBRA_HPP

#include <memory>
#include <utility>
#include <vector>

#include "cartankit/matrix.hpp"
#include "cartankit/subspace.hpp"

namespace cartankit {

/// A unital *-closed linear subspace of M_n(C): the carrier for the ambient
/// algebra M, the relative commutant N, the abelian algebra D, intermediate
/// algebras, and reconstructed algebras on module spaces.
class StarAlgebra {
public:
  /// Smallest unital *-closed linear span containing the generators.
  /// `unit` defaults to the ambient identity; a subunit projection is allowed
  /// for corner algebras.
  static StarAlgebra generated(const std::vector<Matrix>& generators,
                               Eigen::Index ambient_dim);
  static StarAlgebra generated(const std::vector<Matrix>& generators,
                               Eigen::Index ambient_dim, Matrix unit);

  /// Wraps an already *-closed unital subspace (closure is verified).
  static StarAlgebra from_space(Subspace space, Matrix unit);

  const Subspace& space() const { return space_; }
  const Matrix& unit() const { return unit_; }
  Eigen::Index ambient_dim() const { return space_.ambient_dim(); }
  std::size_t dim() const { return space_.dim(); }
  bool contains(const Matrix& m) const { return space_.contains(m); }

  /// Basis of the center (elements commuting with the whole algebra).
  const std::vector<Matrix>& center_basis() const;
  /// Minimal projections of the center, deterministically ordered.
  const std::vector<Matrix>& minimal_central_projections() const;

private:
  StarAlgebra(Subspace space, Matrix unit)
      : space_(std::move(space)), unit_(std::move(unit)) {}
  void ensure_center() const;

  Subspace space_;
  Matrix unit_;
  mutable bool center_done_ = false;
  mutable std::vector<Matrix> center_basis_;
  mutable std::vector<Matrix> central_projections_;
};

/// Commutant inside the full matrix algebra M_n, as the null space of the
/// stacked maps X -> X A_i - A_i X over the algebra's basis.
StarAlgebra commutant(const StarAlgebra& a);

/// Relative commutant of `a` inside `within` (solved over the coordinates of
/// `within`'s basis).
StarAlgebra relative_commutant(const StarAlgebra& a, const StarAlgebra& within);

/// Murray-von Neumann equivalence of projections p, q in `ambient`, decided
/// by comparing rank(z p) and rank(z q) over the minimal central projections z.
bool projections_equivalent(const Matrix& p, const Matrix& q,
                            const StarAlgebra& ambient);

/// Writes x in `ambient` as a combination of at most four unitaries of the
/// algebra: Hermitian split, then h -> (u + u*)/2 with u = h + i sqrt(1 - h^2).
std::vector<std::pair<Complex, Matrix>> unitary_span_decomposition(
    const Matrix& x, const StarAlgebra& ambient);

}  // namespace cartankit

#endif
