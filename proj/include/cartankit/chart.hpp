#ifndef CARTANKIT_CHART_HPP
#define CARTANKIT_CHART_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cartankit {

/// A partial bijection on the atom set {0, .., k-1}: the concrete model for
/// elements of the fundamental inverse monoid S.  Sub-identities are the
/// idempotents; the empty chart is the zero.
class Chart {
public:
  explicit Chart(int atom_count) : img_(atom_count, -1) {}

  static Chart identity(int atom_count);
  static Chart sub_identity(int atom_count, std::uint64_t domain_mask);
  static Chart single(int atom_count, int from, int to);
  static Chart from_pairs(int atom_count,
                          const std::vector<std::pair<int, int>>& pairs);

  int atom_count() const { return static_cast<int>(img_.size()); }
  bool defined(int i) const { return img_[i] >= 0; }
  int image(int i) const { return img_[i]; }

  std::uint64_t domain_mask() const;
  std::uint64_t range_mask() const;
  int rank() const;  // |domain|

  bool is_zero() const { return rank() == 0; }
  bool is_identity() const;
  bool is_idempotent() const;  // sub-identity

  Chart inverse() const;

  bool operator==(const Chart& o) const { return img_ == o.img_; }
  /// Deterministic enumeration order: (|domain|, domain mask, image tuple).
  std::strong_ordering operator<=>(const Chart& o) const;

  std::string to_string() const;

private:
  std::vector<int> img_;  // img_[i] = image of atom i, -1 when undefined
};

/// Composition a o b (apply b, then a), restricted to the pullback domain.
Chart compose(const Chart& a, const Chart& b);

/// Natural partial order: s <= t iff s is the restriction of t to dom(s).
bool natural_leq(const Chart& s, const Chart& t);

/// Largest common restriction of s and t.
Chart meet(const Chart& s, const Chart& t);

/// s and t are compatible when s&t and st& are both idempotents.
bool compatible(const Chart& s, const Chart& t);

/// Orthogonal: s&t = st& = 0 (disjoint domains and disjoint ranges).
bool orthogonal(const Chart& s, const Chart& t);

/// Join of a pairwise-compatible family = union of graphs; empty family gives
/// the zero chart.  nullopt when the family is incompatible.
std::optional<Chart> join(std::span<const Chart> family, int atom_count);

}  // namespace cartankit

#endif
