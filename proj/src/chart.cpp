#include "cartankit/chart.hpp"

#include <stdexcept>

namespace cartankit {

Chart Chart::identity(int atom_count) {
  Chart c(atom_count);
  for (int i = 0; i < atom_count; ++i) c.img_[i] = i;
  return c;
}

Chart Chart::sub_identity(int atom_count, std::uint64_t domain_mask) {
  Chart c(atom_count);
  for (int i = 0; i < atom_count; ++i)
    if (domain_mask >> i & 1) c.img_[i] = i;
  return c;
}

Chart Chart::single(int atom_count, int from, int to) {
  Chart c(atom_count);
  c.img_[from] = to;
  return c;
}

Chart Chart::from_pairs(int atom_count,
                        const std::vector<std::pair<int, int>>& pairs) {
  Chart c(atom_count);
  for (auto [from, to] : pairs) {
    if (from < 0 || from >= atom_count || to < 0 || to >= atom_count)
      throw std::invalid_argument("Chart::from_pairs: atom out of range");
    if (c.img_[from] >= 0)
      throw std::invalid_argument("Chart::from_pairs: duplicate source");
    c.img_[from] = to;
  }
  std::uint64_t seen = 0;
  for (int i = 0; i < atom_count; ++i)
    if (c.img_[i] >= 0) {
      if (seen >> c.img_[i] & 1)
        throw std::invalid_argument("Chart::from_pairs: not injective");
      seen |= std::uint64_t{1} << c.img_[i];
    }
  return c;
}

std::uint64_t Chart::domain_mask() const {
  std::uint64_t m = 0;
  for (int i = 0; i < atom_count(); ++i)
    if (img_[i] >= 0) m |= std::uint64_t{1} << i;
  return m;
}

std::uint64_t Chart::range_mask() const {
  std::uint64_t m = 0;
  for (int i = 0; i < atom_count(); ++i)
    if (img_[i] >= 0) m |= std::uint64_t{1} << img_[i];
  return m;
}

int Chart::rank() const {
  int r = 0;
  for (int v : img_) r += v >= 0;
  return r;
}

bool Chart::is_identity() const {
  for (int i = 0; i < atom_count(); ++i)
    if (img_[i] != i) return false;
  return true;
}

bool Chart::is_idempotent() const {
  for (int i = 0; i < atom_count(); ++i)
    if (img_[i] >= 0 && img_[i] != i) return false;
  return true;
}

Chart Chart::inverse() const {
  Chart c(atom_count());
  for (int i = 0; i < atom_count(); ++i)
    if (img_[i] >= 0) c.img_[img_[i]] = i;
  return c;
}

std::strong_ordering Chart::operator<=>(const Chart& o) const {
  if (auto c = rank() <=> o.rank(); c != 0) return c;
  if (auto c = domain_mask() <=> o.domain_mask(); c != 0) return c;
  return img_ <=> o.img_;
}

std::string Chart::to_string() const {
  if (is_zero()) return "0";
  if (is_identity()) return "1";
  if (is_idempotent()) {
    std::string s = "id{";
    bool first = true;
    for (int i = 0; i < atom_count(); ++i)
      if (img_[i] >= 0) {
        if (!first) s += ",";
        s += std::to_string(i + 1);
        first = false;
      }
    return s + "}";
  }
  std::string s = "(";
  bool first = true;
  for (int i = 0; i < atom_count(); ++i)
    if (img_[i] >= 0) {
      if (!first) s += ",";
      s += std::to_string(i + 1) + ">" + std::to_string(img_[i] + 1);
      first = false;
    }
  return s + ")";
}

Chart compose(const Chart& a, const Chart& b) {
  if (a.atom_count() != b.atom_count())
    throw std::invalid_argument("compose: atom count mismatch");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < b.atom_count(); ++i)
    if (b.defined(i) && a.defined(b.image(i)))
      pairs.emplace_back(i, a.image(b.image(i)));
  return Chart::from_pairs(a.atom_count(), pairs);
}

bool natural_leq(const Chart& s, const Chart& t) {
  for (int i = 0; i < s.atom_count(); ++i)
    if (s.defined(i) && (!t.defined(i) || t.image(i) != s.image(i)))
      return false;
  return true;
}

Chart meet(const Chart& s, const Chart& t) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < s.atom_count(); ++i)
    if (s.defined(i) && t.defined(i) && s.image(i) == t.image(i))
      pairs.emplace_back(i, s.image(i));
  return Chart::from_pairs(s.atom_count(), pairs);
}

bool compatible(const Chart& s, const Chart& t) {
  return compose(s.inverse(), t).is_idempotent() &&
         compose(s, t.inverse()).is_idempotent();
}

bool orthogonal(const Chart& s, const Chart& t) {
  return compose(s.inverse(), t).is_zero() && compose(s, t.inverse()).is_zero();
}

std::optional<Chart> join(std::span<const Chart> family, int atom_count) {
  std::vector<int> img(atom_count, -1);
  std::vector<int> hit(atom_count, -1);  // hit[to] = source mapping onto `to`
  for (const Chart& c : family)
    for (int i = 0; i < atom_count; ++i)
      if (c.defined(i)) {
        int to = c.image(i);
        if (img[i] >= 0 && img[i] != to) return std::nullopt;
        if (hit[to] >= 0 && hit[to] != i) return std::nullopt;
        img[i] = to;
        hit[to] = i;
      }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < atom_count; ++i)
    if (img[i] >= 0) pairs.emplace_back(i, img[i]);
  return Chart::from_pairs(atom_count, pairs);
}

}  // namespace cartankit
