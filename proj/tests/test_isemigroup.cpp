#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cartankit/config.hpp"
#include "cartankit/inverse_monoid.hpp"
#include "cartankit/mult_table.hpp"

using namespace cartankit;

namespace {

Chart swap2() { return Chart::from_pairs(2, {{0, 1}, {1, 0}}); }

// Brute-force spectral-set filter: conditions checked with raw loops over
// arbitrary orthogonal subfamilies (via their index masks).
bool oracle_is_spectral(const InverseMonoid& m, const std::vector<Chart>& a) {
  auto member = [&](const Chart& c) {
    return std::find(a.begin(), a.end(), c) != a.end();
  };
  // downward closure
  for (const Chart& s : a)
    for (const Chart& t : m.elements())
      if (natural_leq(t, s) && !member(t)) return false;
  // joins of every pairwise orthogonal subfamily, the empty one included
  const std::size_t n = a.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Chart> family;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) family.push_back(a[i]);
    bool pairwise = true;
    for (std::size_t i = 0; i < family.size() && pairwise; ++i)
      for (std::size_t j = i + 1; j < family.size(); ++j)
        if (!orthogonal(family[i], family[j])) pairwise = false;
    if (!pairwise) continue;
    auto joined = join(family, m.atom_count());
    if (!joined || !member(*joined)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("chart composition, inverse and order") {
  Chart id2 = Chart::identity(2);
  CHECK(compose(id2, swap2()) == swap2());
  CHECK(compose(Chart::single(2, 0, 1), Chart::single(2, 1, 0)) ==
        Chart::sub_identity(2, 0b10));
  CHECK(Chart::single(2, 0, 1).inverse() == Chart::single(2, 1, 0));

  CHECK(natural_leq(Chart::single(2, 0, 1), swap2()));
  CHECK_FALSE(natural_leq(swap2(), id2));
  CHECK(natural_leq(Chart(2), swap2()));  // zero is the minimum
  for (const Chart& s : InverseMonoid::symmetric(2).elements())
    CHECK(natural_leq(Chart(2), s));
}

TEST_CASE("meet, compatibility and join") {
  CHECK(meet(swap2(), Chart::single(2, 0, 1)) == Chart::single(2, 0, 1));
  CHECK(meet(Chart::identity(2), swap2()) == Chart(2));  // empty agreement

  const Chart family[] = {Chart::single(2, 0, 1), Chart::single(2, 1, 0)};
  auto joined = join(family, 2);
  REQUIRE(joined.has_value());
  CHECK(*joined == swap2());

  // incompatible: two different images for atom 0
  const Chart bad[] = {Chart::single(2, 0, 0), Chart::single(2, 0, 1)};
  CHECK_FALSE(join(bad, 2).has_value());

  CHECK(join(std::span<const Chart>{}, 2).value() == Chart(2));
}

TEST_CASE("source idempotent of a meet: (s^t)&(s^t) = s&t ^ 1") {
  for (int k : {2, 3}) {
    InverseMonoid m = InverseMonoid::symmetric(k);
    for (const Chart& s : m.elements())
      for (const Chart& t : m.elements()) {
        Chart lhs = compose(meet(s, t).inverse(), meet(s, t));
        Chart rhs = meet(compose(s.inverse(), t), Chart::identity(k));
        CHECK(lhs == rhs);
        // s = s s& s
        CHECK(compose(compose(s, s.inverse()), s) == s);
      }
  }
}

TEST_CASE("symmetric inverse monoid sizes and structure") {
  CHECK(InverseMonoid::symmetric(1).size() == 2);
  CHECK(InverseMonoid::symmetric(2).size() == 7);
  CHECK(InverseMonoid::symmetric(3).size() == 34);
  InverseMonoid i2 = InverseMonoid::symmetric(2);
  CHECK(i2.is_fundamental());
  CHECK_FALSE(i2.is_clifford());
  CHECK(i2.is_boolean_inverse_monoid());

  InverseMonoid lattice = InverseMonoid::sub_identities(2);
  CHECK(lattice.size() == 4);
  CHECK(lattice.is_fundamental());
  CHECK(lattice.is_clifford());
  CHECK(lattice.is_boolean_inverse_monoid());
}

TEST_CASE("join closure is what makes a chart monoid Boolean") {
  // the two single-point swaps without their join fail the Boolean test
  InverseMonoid no_joins = InverseMonoid::generate(
      2, {Chart::single(2, 0, 1), Chart::single(2, 1, 0)}, false);
  CHECK(no_joins.size() == 6);  // everything except the full swap
  CHECK_FALSE(no_joins.is_boolean_inverse_monoid());
  InverseMonoid with_joins = InverseMonoid::generate(
      2, {Chart::single(2, 0, 1), Chart::single(2, 1, 0)}, true);
  CHECK(with_joins.size() == 7);
  CHECK(with_joins.is_boolean_inverse_monoid());
}

TEST_CASE("atoms are the minimal non-zero elements") {
  InverseMonoid i2 = InverseMonoid::symmetric(2);
  std::vector<Chart> atoms = i2.atoms();
  REQUIRE(atoms.size() == 4);
  std::set<Chart> expected{Chart::single(2, 0, 0), Chart::single(2, 1, 1),
                           Chart::single(2, 0, 1), Chart::single(2, 1, 0)};
  CHECK(std::set<Chart>(atoms.begin(), atoms.end()) == expected);

  CHECK(InverseMonoid::sub_identities(3).atoms().size() == 3);

  // every non-zero element is the join of the atoms below it
  for (const Chart& s : i2.elements()) {
    if (s.is_zero()) continue;
    std::vector<Chart> below;
    for (const Chart& a : atoms)
      if (natural_leq(a, s)) below.push_back(a);
    auto j = join(below, 2);
    REQUIRE(j.has_value());
    CHECK(*j == s);
  }

  // atoms are pairwise meet-disjoint
  for (const Chart& a : atoms)
    for (const Chart& b : atoms)
      if (!(a == b)) CHECK(meet(a, b).is_zero());
}

TEST_CASE("abstract Munn quotient") {
  // a group has a single idempotent: the quotient is trivial
  MultTable z3 = MultTable::from_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  MunnQuotient q3 = munn_quotient(z3);
  CHECK(q3.quotient.size() == 1);
  CHECK_FALSE(is_fundamental(z3));

  // a semilattice is idempotent separated: the quotient is itself
  MultTable chain = MultTable::from_table({{0, 0}, {0, 1}});
  MunnQuotient qc = munn_quotient(chain);
  CHECK(qc.quotient.size() == 2);
  CHECK(is_fundamental(chain));

  // Z2 x chain: elements (g, e); oracle = direct congruence computation
  // index = 2 * e + g with product (g+h mod 2, e ^ f)
  std::vector<std::vector<int>> table(4, std::vector<int>(4));
  auto idx = [](int g, int e) { return 2 * e + g; };
  for (int g = 0; g < 2; ++g)
    for (int e = 0; e < 2; ++e)
      for (int h = 0; h < 2; ++h)
        for (int f = 0; f < 2; ++f)
          table[idx(g, e)][idx(h, f)] = idx((g + h) % 2, e & f);
  MultTable z2chain = MultTable::from_table(table);
  MunnQuotient qz = munn_quotient(z2chain);
  CHECK(qz.quotient.size() == 2);  // the chain survives, the sign collapses
  CHECK(qz.class_of[idx(0, 1)] == qz.class_of[idx(1, 1)]);
  CHECK(qz.class_of[idx(0, 0)] == qz.class_of[idx(1, 0)]);
  CHECK(qz.class_of[idx(0, 0)] != qz.class_of[idx(0, 1)]);
  {
    // oracle: brute-force the congruence classes from the definition
    std::vector<int> idem;
    for (int a = 0; a < 4; ++a)
      if (z2chain.is_idempotent(a)) idem.push_back(a);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        bool related = true;
        for (int e : idem)
          if (z2chain.product(z2chain.product(a, e), z2chain.inverse(a)) !=
              z2chain.product(z2chain.product(b, e), z2chain.inverse(b)))
            related = false;
        CHECK(related == (qz.class_of[a] == qz.class_of[b]));
      }
  }

  // the quotient map is injective on idempotents
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (z2chain.is_idempotent(a) && z2chain.is_idempotent(b) && a != b)
        CHECK(qz.class_of[a] != qz.class_of[b]);

  // non-inverse input is rejected: a left-zero band has non-commuting
  // idempotents
  CHECK_THROWS_AS(MultTable::from_table({{0, 0}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("charts from a monoid round-trip through the abstract table") {
  InverseMonoid i2 = InverseMonoid::symmetric(2);
  MultTable t = MultTable::from_monoid(i2);
  CHECK(t.size() == 7);
  CHECK(is_fundamental(t));
  MunnQuotient q = munn_quotient(t);
  CHECK(q.quotient.size() == 7);  // fundamental: the quotient changes nothing
}

TEST_CASE("spectral set enumeration equals the brute-force filter") {
  InverseMonoid i2 = InverseMonoid::symmetric(2);
  auto enumerated = i2.enumerate_spectral_sets();

  // oracle: filter all 2^7 subsets
  std::set<std::vector<Chart>> oracle;
  const auto& el = i2.elements();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << el.size()); ++mask) {
    std::vector<Chart> subset;
    for (std::size_t i = 0; i < el.size(); ++i)
      if (mask >> i & 1) subset.push_back(el[i]);
    if (oracle_is_spectral(i2, subset)) {
      std::sort(subset.begin(), subset.end());
      oracle.insert(subset);
    }
  }
  CHECK(oracle.size() == 16);  // one spectral set per subset of the 4 atoms
  std::set<std::vector<Chart>> got(enumerated.begin(), enumerated.end());
  CHECK(got == oracle);

  // {0} and the whole monoid are always spectral
  std::vector<Chart> zero_only{Chart(2)};
  CHECK(is_spectral_set(i2, zero_only));
  std::vector<Chart> everything = i2.elements();
  CHECK(is_spectral_set(i2, everything));

  // the two-element semilattice has exactly the two spectral sets
  CHECK(InverseMonoid::sub_identities(1).enumerate_spectral_sets().size() == 2);
}

TEST_CASE("cartan submonoid enumeration") {
  InverseMonoid i2 = InverseMonoid::symmetric(2);
  auto subs = i2.enumerate_cartan_submonoids();
  REQUIRE(subs.size() == 2);
  CHECK(subs[0].size() == 4);  // the idempotent semilattice
  CHECK(subs[1].size() == 7);  // all of I2

  // oracle: check closure of all 2^3 subsets of the non-idempotents
  std::vector<Chart> non_idem;
  for (const Chart& c : i2.elements())
    if (!c.is_idempotent()) non_idem.push_back(c);
  REQUIRE(non_idem.size() == 3);
  int closed_count = 0;
  const std::vector<Chart> idem = i2.idempotents();
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    std::set<Chart> t(idem.begin(), idem.end());
    for (std::size_t i = 0; i < 3; ++i)
      if (mask >> i & 1) t.insert(non_idem[i]);
    bool closed = true;
    for (const Chart& a : t) {
      if (t.find(a.inverse()) == t.end()) closed = false;
      for (const Chart& b : t) {
        if (t.find(compose(a, b)) == t.end()) closed = false;
        if (compatible(a, b)) {
          const Chart pair[] = {a, b};
          auto j = join(pair, 2);
          if (j && t.find(*j) == t.end()) closed = false;
        }
      }
    }
    closed_count += closed;
  }
  CHECK(closed_count == 2);

  // a semilattice has only itself
  CHECK(InverseMonoid::sub_identities(2).enumerate_cartan_submonoids().size() == 1);

  // sub-identities plus the full swap alone is not closed: composing the swap
  // with an atom forces the single-point swaps in
  InverseMonoid forced = InverseMonoid::generate(2, {swap2()});
  CHECK(forced.size() == 7);

  // partitions of the atom set index the submonoids of I3
  set_enumeration_cap(40);
  CHECK(InverseMonoid::symmetric(3).enumerate_cartan_submonoids().size() == 5);
  set_enumeration_cap(24);
}

TEST_CASE("enumeration caps guard the exponential paths") {
  set_enumeration_cap(10);
  CHECK_THROWS_AS(InverseMonoid::symmetric(3).enumerate_spectral_sets(),
                  CapExceeded);
  CHECK_THROWS_AS(InverseMonoid::symmetric(3).enumerate_cartan_submonoids(),
                  CapExceeded);
  set_enumeration_cap(24);
}
