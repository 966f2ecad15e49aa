#ifndef CARTANKIT_INVERSE_MONOID_HPP
#define CARTANKIT_INVERSE_MONOID_HPP

#include <vector>

#include "cartankit/chart.hpp"

namespace cartankit {

/// A finite inverse monoid of charts on a fixed atom set.  Always contains
/// every sub-identity (so the idempotent lattice is the full Boolean algebra
/// 2^k) plus whatever the generators force under product and inverse;
/// `closed_under_joins` additionally closes under compatible joins.
class InverseMonoid {
public:
  static InverseMonoid generate(int atom_count, std::vector<Chart> generators,
                                bool close_joins = true);
  static InverseMonoid symmetric(int atom_count);       // I_k
  static InverseMonoid sub_identities(int atom_count);  // semilattice 2^k

  int atom_count() const { return atom_count_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Chart>& elements() const { return elements_; }
  bool contains(const Chart& c) const;

  std::vector<Chart> idempotents() const;
  std::vector<Chart> atoms() const;  // minimal non-zero elements

  bool is_fundamental() const;
  bool is_clifford() const;
  bool is_boolean_inverse_monoid() const;

  /// All spectral sets: downward-closed, orthogonal-join-closed subsets.
  /// Enumerated by closing every subset of atoms; throws CapExceeded when
  /// |S| is over the enumeration cap.
  std::vector<std::vector<Chart>> enumerate_spectral_sets() const;

  /// All inverse submonoids containing every idempotent and closed under
  /// product, inverse and compatible joins.
  std::vector<InverseMonoid> enumerate_cartan_submonoids() const;

  bool operator==(const InverseMonoid& o) const {
    return atom_count_ == o.atom_count_ && elements_ == o.elements_;
  }

private:
  InverseMonoid(int atom_count, std::vector<Chart> sorted_elements)
      : atom_count_(atom_count), elements_(std::move(sorted_elements)) {}

  int atom_count_;
  std::vector<Chart> elements_;  // sorted by Chart ordering
};

/// Definitional filter for spectral sets, also used by the enumeration
/// oracle: (i) downward closed, (ii) contains the join of every pairwise
/// orthogonal subfamily (in particular 0, the empty join).
bool is_spectral_set(const InverseMonoid& monoid, const std::vector<Chart>& subset);

}  // namespace cartankit

#endif
