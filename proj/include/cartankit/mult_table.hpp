#ifndef CARTANKIT_MULT_TABLE_HPP
#define CARTANKIT_MULT_TABLE_HPP

#include <vector>

#include "cartankit/chart.hpp"
#include "cartankit/inverse_monoid.hpp"

namespace cartankit {

/// An abstract finite inverse semigroup given by its multiplication table.
/// Construction validates associativity, regularity and commuting
/// idempotents, which together pin down the unique generalized inverse.
class MultTable {
public:
  static MultTable from_table(std::vector<std::vector<int>> table);
  static MultTable from_monoid(const InverseMonoid& m);

  std::size_t size() const { return table_.size(); }
  int product(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  bool is_idempotent(int a) const { return table_[a][a] == a; }
  std::vector<int> idempotents() const;
  const std::vector<std::vector<int>>& table() const { return table_; }

private:
  explicit MultTable(std::vector<std::vector<int>> table)
      : table_(std::move(table)) {}
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
};

/// Quotient by the maximal idempotent-separating congruence
/// (v1 ~ v2 iff v1 e v1& = v2 e v2& for every idempotent e).
struct MunnQuotient {
  MultTable quotient;
  std::vector<int> class_of;  // element index -> class index
};
MunnQuotient munn_quotient(const MultTable& t);

/// Only idempotents commute with every idempotent; equivalently the Munn
/// congruence is trivial.
bool is_fundamental(const MultTable& t);

}  // namespace cartankit

#endif
