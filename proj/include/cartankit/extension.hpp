#ifndef CARTANKIT_EXTENSION_HPP
#define CARTANKIT_EXTENSION_HPP

#include <array>
#include <memory>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cartankit/cartan_triple.hpp"
#include "cartankit/inverse_monoid.hpp"

namespace cartankit {

/// Supplies the reference partial isometry w with w*w = q_i, w w* = q_j for
/// an equivalent atom pair; used to override the coordinate-matching default
/// (crossed products route through the group unitaries instead).
using IsometryProvider =
    std::function<std::optional<Matrix>(const CartanTripleModel&, int j, int i)>;

struct FrolikParts {
  Matrix fixed;                  // e0: E(v) = v e0
  std::array<Matrix, 3> moved;   // e1, e2, e3 with (v e_i)^2 = 0
};

struct FourierTerm {
  Chart atom;
  Matrix coefficient;  // E(j(a)* x)
};

struct RightonResult {
  std::vector<std::pair<Matrix, Matrix>> terms;  // (w_k, E(w_k* y))
  Matrix resum;
  double residual;
};

/// The extension P -> G -> S attached to a triple: S realized as the chart
/// monoid of the atom equivalences, together with an order-preserving
/// section j built from reference isometries, the cocycle, and the finite
/// expansion machinery.
class ExtensionModel {
public:
  static ExtensionModel build(CartanTripleModel triple);
  static ExtensionModel build(CartanTripleModel triple,
                              const IsometryProvider& provider);

  const CartanTripleModel& triple() const { return *triple_; }
  const InverseMonoid& monoid() const { return s_; }

  /// Order-preserving section: j(s) = sum of reference isometries over dom(s).
  Matrix section(const Chart& s) const;
  /// Chart of v under the quotient map (throws when v is outside G).
  Chart quotient(const Matrix& v) const;
  /// P membership: v in N, partial isometry, v*v = v v* in proj(D).
  bool in_p(const Matrix& v) const;

  /// sigma(v, s) = j(q(v) s)& v j(s); lands in P.
  Matrix cocycle(const Matrix& v, const Chart& s) const;
  /// Delta(v) = v j(q(v) & 1); equals E(v) for v in G.
  Matrix fixed_part(const Matrix& v) const;

  /// Splits v*v into the fixed projection and three pieces with square zero,
  /// by 2/3-coloring the moved-atom graph of the chart.
  FrolikParts frolik_decomposition(const Matrix& v) const;

  /// Exact finite expansion x = sum_a j(a) E(j(a)* x) over the atoms of S.
  std::vector<FourierTerm> fourier_terms(const Matrix& x) const;
  Matrix fourier_resum(const std::vector<FourierTerm>& terms) const;

  /// y = sum_k w_k E(w_k* y) over w_k = j(t_k), t_k the atoms dominated by a
  /// witness chart; throws when y is outside the span of the witnesses.
  RightonResult righton_decompose(const Matrix& y,
                                  std::span<const Matrix> witnesses) const;

  /// Copy with the sign of one reference isometry flipped; still a valid
  /// order-preserving section for the same extension.
  ExtensionModel with_flipped_isometry(int j, int i) const;

  const Matrix& reference_isometry(int j, int i) const;

private:
  ExtensionModel(std::shared_ptr<const CartanTripleModel> triple, InverseMonoid s,
                 std::vector<std::vector<Matrix>> w)
      : triple_(std::move(triple)), s_(std::move(s)), w_(std::move(w)) {}

  std::shared_ptr<const CartanTripleModel> triple_;
  InverseMonoid s_;
  std::vector<std::vector<Matrix>> w_;  // w_[j][i]; empty when inequivalent
};

}  // namespace cartankit

#endif
