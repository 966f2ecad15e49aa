#include "cartankit/mult_table.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cartankit {

MultTable MultTable::from_table(std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("MultTable: table is not square");
    for (int v : row)
      if (v < 0 || v >= n)
        throw std::invalid_argument("MultTable: entry out of range");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw std::invalid_argument("MultTable: not associative");

  MultTable t(std::move(table));
  // idempotents must commute
  for (int e = 0; e < n; ++e)
    if (t.is_idempotent(e))
      for (int f = 0; f < n; ++f)
        if (t.is_idempotent(f) && t.product(e, f) != t.product(f, e))
          throw std::invalid_argument("MultTable: idempotents do not commute");
  // each element needs a generalized inverse; commuting idempotents make it
  // unique, which we verify rather than assume
  t.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int x = 0; x < n; ++x)
      if (t.product(t.product(a, x), a) == a && t.product(t.product(x, a), x) == x) {
        if (t.inverse_[a] >= 0)
          throw std::invalid_argument("MultTable: generalized inverse not unique");
        t.inverse_[a] = x;
      }
    if (t.inverse_[a] < 0)
      throw std::invalid_argument("MultTable: element without generalized inverse");
  }
  return t;
}

MultTable MultTable::from_monoid(const InverseMonoid& m) {
  const auto& el = m.elements();
  const int n = static_cast<int>(el.size());
  auto index_of = [&](const Chart& c) {
    return static_cast<int>(std::lower_bound(el.begin(), el.end(), c) - el.begin());
  };
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      table[a][b] = index_of(compose(el[a], el[b]));
  return from_table(std::move(table));
}

std::vector<int> MultTable::idempotents() const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(size()); ++e)
    if (is_idempotent(e)) out.push_back(e);
  return out;
}

MunnQuotient munn_quotient(const MultTable& t) {
  const int n = static_cast<int>(t.size());
  const std::vector<int> idem = t.idempotents();
  // Munn signature of a: the map e -> a e a& over all idempotents.
  auto signature = [&](int a) {
    std::vector<int> sig;
    sig.reserve(idem.size());
    for (int e : idem) sig.push_back(t.product(t.product(a, e), t.inverse(a)));
    return sig;
  };
  std::map<std::vector<int>, int> classes;
  std::vector<int> class_of(n);
  for (int a = 0; a < n; ++a) {
    auto res = classes.emplace(signature(a), static_cast<int>(classes.size()));
    class_of[a] = res.first->second;
  }
  const int m = static_cast<int>(classes.size());
  std::vector<int> representative(m, -1);
  for (int a = 0; a < n; ++a)
    if (representative[class_of[a]] < 0) representative[class_of[a]] = a;
  std::vector<std::vector<int>> qtable(m, std::vector<int>(m));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      qtable[x][y] = class_of[t.product(representative[x], representative[y])];
  // well-definedness of [v][w] = [vw]
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (qtable[class_of[a]][class_of[b]] != class_of[t.product(a, b)])
        throw std::logic_error("munn_quotient: congruence is not compatible");
  MunnQuotient out{MultTable::from_table(std::move(qtable)), std::move(class_of)};
  if (!is_fundamental(out.quotient))
    throw std::logic_error("munn_quotient: quotient is not fundamental");
  return out;
}

bool is_fundamental(const MultTable& t) {
  const int n = static_cast<int>(t.size());
  const std::vector<int> idem = t.idempotents();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      bool related = true;
      for (int e : idem)
        if (t.product(t.product(a, e), t.inverse(a)) !=
            t.product(t.product(b, e), t.inverse(b))) {
          related = false;
          break;
        }
      if (related) return false;
    }
  return true;
}

}  // namespace cartankit
