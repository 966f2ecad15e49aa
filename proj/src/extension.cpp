#include "cartankit/extension.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "cartankit/config.hpp"

namespace cartankit {

namespace {

/// Coordinate lists of an atom projection (ascending diagonal support).
std::vector<int> atom_coordinates(const Matrix& q) {
  std::vector<int> out;
  for (Eigen::Index c = 0; c < q.rows(); ++c)
    if (q(c, c).real() > 0.5) out.push_back(static_cast<int>(c));
  return out;
}

/// Default reference isometry: 0/1 coordinate matching, smallest-to-smallest.
std::optional<Matrix> coordinate_matching(const CartanTripleModel& t, int j, int i) {
  std::vector<int> from = atom_coordinates(t.atom_projections()[i]);
  std::vector<int> to = atom_coordinates(t.atom_projections()[j]);
  if (from.size() != to.size()) return std::nullopt;
  Matrix w = zero(t.ambient_dim());
  for (std::size_t c = 0; c < from.size(); ++c) w(to[c], from[c]) = 1.0;
  if (!t.m_algebra().contains(w)) return std::nullopt;
  return w;
}

/// Fallback for algebras where the coordinate matching leaves M: polar part
/// of a deterministic full-rank corner element.
std::optional<Matrix> polar_fallback(const CartanTripleModel& t, int j, int i) {
  const Matrix& qi = t.atom_projections()[i];
  const Matrix& qj = t.atom_projections()[j];
  Matrix x = zero(t.ambient_dim());
  double weight = 1.0;
  for (const Matrix& b : t.m_algebra().space().basis()) {
    x += weight * (qj * b * qi);
    weight *= 0.618033988749894848;  // fixed irrational decay, reproducible
  }
  Matrix w = polar_partial_isometry(x);
  const double tol = tolerance();
  if (!approx_equal(Matrix(w.adjoint() * w), qi, 1e4 * tol)) return std::nullopt;
  if (!approx_equal(Matrix(w * w.adjoint()), qj, 1e4 * tol)) return std::nullopt;
  if (!t.m_algebra().contains(w)) return std::nullopt;
  return w;
}

}  // namespace

ExtensionModel ExtensionModel::build(CartanTripleModel triple) {
  return build(std::move(triple), IsometryProvider{});
}

ExtensionModel ExtensionModel::build(CartanTripleModel triple,
                                     const IsometryProvider& provider) {
  auto shared = std::make_shared<const CartanTripleModel>(std::move(triple));
  const CartanTripleModel& t = *shared;
  const int k = t.atom_count();

  // Atom equivalence decides which single-point charts exist in S.
  std::vector<std::vector<bool>> equivalent(k, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      equivalent[i][j] =
          projections_equivalent(t.atom_projections()[i], t.atom_projections()[j],
                                 t.m_algebra());

  // S = all charts respecting the equivalence; closed under product, inverse
  // and joins by construction.
  std::set<Chart> charts;
  std::vector<std::pair<int, int>> pairs;
  auto rec = [&](auto&& self, int i, std::uint64_t used) -> void {
    if (i == k) {
      charts.insert(Chart::from_pairs(k, pairs));
      return;
    }
    self(self, i + 1, used);
    for (int to = 0; to < k; ++to)
      if (equivalent[i][to] && !(used >> to & 1)) {
        pairs.emplace_back(i, to);
        self(self, i + 1, used | (std::uint64_t{1} << to));
        pairs.pop_back();
      }
  };
  rec(rec, 0, 0);
  InverseMonoid s = InverseMonoid::generate(
      k, std::vector<Chart>(charts.begin(), charts.end()), true);

  // Reference isometries w_{ji}: w_{ii} = q_i, w_{ij} = w_{ji}*.
  std::vector<std::vector<Matrix>> w(k, std::vector<Matrix>(k));
  for (int i = 0; i < k; ++i) w[i][i] = t.atom_projections()[i];
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (!equivalent[i][j]) continue;
      std::optional<Matrix> wji;
      if (provider) wji = provider(t, j, i);
      if (!wji) wji = coordinate_matching(t, j, i);
      if (!wji) wji = polar_fallback(t, j, i);
      if (!wji)
        throw std::runtime_error("ExtensionModel: no reference isometry for "
                                 "equivalent atoms " + std::to_string(i) + "," +
                                 std::to_string(j));
      w[j][i] = *wji;
      w[i][j] = wji->adjoint();
    }
  return ExtensionModel(std::move(shared), std::move(s), std::move(w));
}

const Matrix& ExtensionModel::reference_isometry(int j, int i) const {
  if (w_[j][i].size() == 0)
    throw std::invalid_argument("reference_isometry: atoms are inequivalent");
  return w_[j][i];
}

Matrix ExtensionModel::section(const Chart& s) const {
  if (s.atom_count() != triple_->atom_count())
    throw std::invalid_argument("section: atom count mismatch");
  Matrix out = zero(triple_->ambient_dim());
  for (int i = 0; i < s.atom_count(); ++i)
    if (s.defined(i)) out += reference_isometry(s.image(i), i);
  return out;
}

Chart ExtensionModel::quotient(const Matrix& v) const {
  GnResult r = triple_->gn_membership(v);
  if (!r) throw std::invalid_argument("quotient: v is not a groupoid normalizer");
  return *r.chart;
}

bool ExtensionModel::in_p(const Matrix& v) const {
  const double tol = tolerance();
  if (!triple_->n_algebra().contains(v)) return false;
  if (!is_partial_isometry(v, 1e4 * tol)) return false;
  Matrix src = v.adjoint() * v;
  if (!approx_equal(src, Matrix(v * v.adjoint()), 1e4 * tol)) return false;
  return triple_->projd_mask(src).has_value();
}

Matrix ExtensionModel::cocycle(const Matrix& v, const Chart& s) const {
  Chart qv = quotient(v);
  return section(compose(qv, s)).adjoint() * v * section(s);
}

Matrix ExtensionModel::fixed_part(const Matrix& v) const {
  Chart qv = quotient(v);
  return v * section(meet(qv, Chart::identity(qv.atom_count())));
}

FrolikParts ExtensionModel::frolik_decomposition(const Matrix& v) const {
  const Chart pi = quotient(v);
  const int k = pi.atom_count();
  const Eigen::Index n = triple_->ambient_dim();
  FrolikParts parts{zero(n), {zero(n), zero(n), zero(n)}};

  std::vector<int> color(k, -1);  // -1 unassigned, 3 = fixed
  std::vector<bool> moved(k, false);
  for (int i = 0; i < k; ++i)
    if (pi.defined(i)) {
      if (pi.image(i) == i)
        color[i] = 3;
      else
        moved[i] = true;
    }
  // Graph on moved atoms: i -> pi(i) whenever both are moved; disjoint paths
  // and cycles.  Two colors alternate along each walk; a third closes odd
  // cycles.
  auto successor = [&](int i) {
    int to = pi.image(i);
    return (to >= 0 && moved[to]) ? to : -1;
  };
  std::vector<bool> has_pred(k, false);
  for (int i = 0; i < k; ++i)
    if (moved[i] && successor(i) >= 0) has_pred[successor(i)] = true;
  // paths first (walk from sources), in ascending order
  for (int start = 0; start < k; ++start) {
    if (!moved[start] || has_pred[start] || color[start] >= 0) continue;
    int c = 0, node = start;
    while (node >= 0 && color[node] < 0) {
      color[node] = c;
      c = 1 - c;
      node = successor(node);
    }
  }
  // remaining components are cycles; start at the smallest member
  for (int start = 0; start < k; ++start) {
    if (!moved[start] || color[start] >= 0) continue;
    std::vector<int> cycle;
    int node = start;
    do {
      cycle.push_back(node);
      node = successor(node);
    } while (node != start);
    for (std::size_t pos = 0; pos < cycle.size(); ++pos)
      color[cycle[pos]] = static_cast<int>(pos % 2);
    if (cycle.size() % 2 == 1) color[cycle.back()] = 2;
  }

  const auto& atoms = triple_->atom_projections();
  for (int i = 0; i < k; ++i) {
    if (color[i] == 3) parts.fixed += atoms[i];
    else if (color[i] >= 0) parts.moved[color[i]] += atoms[i];
  }
  return parts;
}

std::vector<FourierTerm> ExtensionModel::fourier_terms(const Matrix& x) const {
  if (!triple_->m_algebra().contains(x))
    throw std::invalid_argument("fourier_terms: x outside M");
  std::vector<FourierTerm> terms;
  for (const Chart& a : s_.atoms()) {
    Matrix ja = section(a);
    terms.push_back({a, triple_->expectation(Matrix(ja.adjoint() * x))});
  }
  return terms;
}

Matrix ExtensionModel::fourier_resum(const std::vector<FourierTerm>& terms) const {
  Matrix out = zero(triple_->ambient_dim());
  for (const FourierTerm& t : terms) out += section(t.atom) * t.coefficient;
  return out;
}

RightonResult ExtensionModel::righton_decompose(
    const Matrix& y, std::span<const Matrix> witnesses) const {
  std::set<Chart> picked;
  for (const Matrix& v : witnesses) {
    Chart s = quotient(v);
    for (const Chart& a : s_.atoms())
      if (natural_leq(a, s)) picked.insert(a);
  }
  RightonResult out;
  out.resum = zero(triple_->ambient_dim());
  for (const Chart& a : picked) {
    Matrix w = section(a);
    Matrix c = triple_->expectation(Matrix(w.adjoint() * y));
    out.resum += w * c;
    out.terms.emplace_back(std::move(w), std::move(c));
  }
  out.residual = frob(Matrix(y - out.resum));
  if (out.residual > 1e4 * tolerance() * std::max(1.0, frob(y)))
    throw std::invalid_argument("righton_decompose: y is outside the span of "
                                "the witnesses (residual " +
                                std::to_string(out.residual) + ")");
  return out;
}

ExtensionModel ExtensionModel::with_flipped_isometry(int j, int i) const {
  if (i == j || w_[j][i].size() == 0)
    throw std::invalid_argument("with_flipped_isometry: need an off-diagonal "
                                "equivalent pair");
  ExtensionModel copy = *this;
  copy.w_[j][i] = -w_[j][i];
  copy.w_[i][j] = copy.w_[j][i].adjoint();
  return copy;
}

}  // namespace cartankit
