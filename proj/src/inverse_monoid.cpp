#include "cartankit/inverse_monoid.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "cartankit/config.hpp"

namespace cartankit {

namespace {

std::vector<Chart> sorted(std::set<Chart> s) {
  return std::vector<Chart>(s.begin(), s.end());
}

std::set<Chart> close(int k, std::set<Chart> set, bool close_joins) {
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m)
    set.insert(Chart::sub_identity(k, m));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Chart> snapshot(set.begin(), set.end());
    for (const Chart& a : snapshot)
      if (set.insert(a.inverse()).second) grew = true;
    for (const Chart& a : snapshot)
      for (const Chart& b : snapshot)
        if (set.insert(compose(a, b)).second) grew = true;
    if (close_joins) {
      for (const Chart& a : snapshot)
        for (const Chart& b : snapshot)
          if (compatible(a, b)) {
            const Chart pair[] = {a, b};
            if (auto j = join(pair, k); j && set.insert(*j).second) grew = true;
          }
    }
  }
  return set;
}

}  // namespace

InverseMonoid InverseMonoid::generate(int atom_count, std::vector<Chart> generators,
                                      bool close_joins) {
  for (const Chart& g : generators)
    if (g.atom_count() != atom_count)
      throw std::invalid_argument("InverseMonoid::generate: atom count mismatch");
  std::set<Chart> set(generators.begin(), generators.end());
  return InverseMonoid(atom_count, sorted(close(atom_count, std::move(set), close_joins)));
}

InverseMonoid InverseMonoid::symmetric(int atom_count) {
  // All partial injections on {0..k-1}, enumerated source by source.
  std::set<Chart> all;
  std::vector<std::pair<int, int>> pairs;
  auto rec = [&](auto&& self, int i, std::uint64_t used) -> void {
    if (i == atom_count) {
      all.insert(Chart::from_pairs(atom_count, pairs));
      return;
    }
    self(self, i + 1, used);  // atom i outside the domain
    for (int to = 0; to < atom_count; ++to)
      if (!(used >> to & 1)) {
        pairs.emplace_back(i, to);
        self(self, i + 1, used | (std::uint64_t{1} << to));
        pairs.pop_back();
      }
  };
  rec(rec, 0, 0);
  return InverseMonoid(atom_count, sorted(std::move(all)));
}

InverseMonoid InverseMonoid::sub_identities(int atom_count) {
  return generate(atom_count, {}, true);
}

bool InverseMonoid::contains(const Chart& c) const {
  return std::binary_search(elements_.begin(), elements_.end(), c);
}

std::vector<Chart> InverseMonoid::idempotents() const {
  std::vector<Chart> out;
  for (const Chart& c : elements_)
    if (c.is_idempotent()) out.push_back(c);
  return out;
}

std::vector<Chart> InverseMonoid::atoms() const {
  std::vector<Chart> out;
  for (const Chart& c : elements_) {
    if (c.is_zero()) continue;
    bool minimal = true;
    for (const Chart& d : elements_)
      if (!d.is_zero() && !(d == c) && natural_leq(d, c)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(c);
  }
  return out;
}

bool InverseMonoid::is_fundamental() const {
  const std::vector<Chart> idem = idempotents();
  auto signature_equal = [&](const Chart& s, const Chart& t) {
    for (const Chart& e : idem)
      if (!(compose(compose(s, e), s.inverse()) ==
            compose(compose(t, e), t.inverse())))
        return false;
    return true;
  };
  for (std::size_t i = 0; i < elements_.size(); ++i)
    for (std::size_t j = i + 1; j < elements_.size(); ++j)
      if (signature_equal(elements_[i], elements_[j])) return false;
  return true;
}

bool InverseMonoid::is_clifford() const {
  for (const Chart& s : elements_)
    for (const Chart& e : elements_)
      if (e.is_idempotent() && !(compose(s, e) == compose(e, s))) return false;
  return true;
}

bool InverseMonoid::is_boolean_inverse_monoid() const {
  const int k = atom_count_;
  // E(M) must be the full Boolean algebra 2^k.
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m)
    if (!contains(Chart::sub_identity(k, m))) return false;
  // all compatible joins exist in M
  for (const Chart& a : elements_)
    for (const Chart& b : elements_)
      if (compatible(a, b)) {
        const Chart pair[] = {a, b};
        auto j = join(pair, k);
        if (!j || !contains(*j)) return false;
      }
  return true;
}

std::vector<std::vector<Chart>> InverseMonoid::enumerate_spectral_sets() const {
  if (size() > enumeration_cap())
    throw CapExceeded("enumerate_spectral_sets", size(), enumeration_cap());
  const std::vector<Chart> at = atoms();
  // An element belongs to the closure of T <= atoms exactly when all of its
  // single-atom restrictions do; 0 always belongs.
  auto atom_indices_below = [&](const Chart& s) {
    std::vector<std::size_t> ix;
    for (std::size_t i = 0; i < at.size(); ++i)
      if (natural_leq(at[i], s)) ix.push_back(i);
    return ix;
  };
  std::set<std::vector<Chart>> found;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << at.size()); ++mask) {
    std::vector<Chart> set;
    for (const Chart& s : elements_) {
      if (s.is_zero()) {
        set.push_back(s);
        continue;
      }
      bool all_in = true;
      for (std::size_t i : atom_indices_below(s))
        if (!(mask >> i & 1)) {
          all_in = false;
          break;
        }
      // non-zero s is a join of its atom restrictions; require at least one
      if (all_in && s.rank() > 0) set.push_back(s);
    }
    std::sort(set.begin(), set.end());
    found.insert(std::move(set));
  }
  return std::vector<std::vector<Chart>>(found.begin(), found.end());
}

std::vector<InverseMonoid> InverseMonoid::enumerate_cartan_submonoids() const {
  if (size() > enumeration_cap())
    throw CapExceeded("enumerate_cartan_submonoids", size(), enumeration_cap());
  std::set<std::vector<Chart>> found;
  std::vector<std::vector<Chart>> frontier;
  std::vector<Chart> base = generate(atom_count_, {}, true).elements_;
  found.insert(base);
  frontier.push_back(base);
  while (!frontier.empty()) {
    std::vector<std::vector<Chart>> next;
    for (const auto& t : frontier)
      for (const Chart& s : elements_) {
        if (std::binary_search(t.begin(), t.end(), s)) continue;
        std::vector<Chart> gens = t;
        gens.push_back(s);
        std::vector<Chart> closed = generate(atom_count_, std::move(gens), true).elements_;
        if (found.insert(closed).second) next.push_back(std::move(closed));
      }
    frontier = std::move(next);
  }
  std::vector<InverseMonoid> out;
  for (const auto& t : found) out.push_back(InverseMonoid(atom_count_, t));
  std::sort(out.begin(), out.end(), [](const InverseMonoid& a, const InverseMonoid& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  });
  return out;
}

bool is_spectral_set(const InverseMonoid& monoid, const std::vector<Chart>& subset) {
  const int k = monoid.atom_count();
  auto in = [&](const Chart& c) {
    return std::find(subset.begin(), subset.end(), c) != subset.end();
  };
  if (!in(Chart(k))) return false;  // empty orthogonal family joins to 0
  for (const Chart& s : subset)
    for (const Chart& t : monoid.elements())
      if (natural_leq(t, s) && !in(t)) return false;
  for (const Chart& s : subset)
    for (const Chart& t : subset)
      if (orthogonal(s, t)) {
        const Chart pair[] = {s, t};
        auto j = join(pair, k);
        if (!j || !in(*j)) return false;
      }
  return true;
}

}  // namespace cartankit
