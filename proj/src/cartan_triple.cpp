#include "cartankit/cartan_triple.hpp"

#include <algorithm>
#include <numeric>

#include "cartankit/config.hpp"

namespace cartankit {

std::string to_string(TripleDefect d) {
  switch (d) {
    case TripleDefect::none: return "none";
    case TripleDefect::atoms_not_partition: return "atoms_not_partition";
    case TripleDefect::atoms_cross_blocks: return "atoms_cross_blocks";
    case TripleDefect::d_not_abelian: return "d_not_abelian";
    case TripleDefect::n_not_relative_commutant: return "n_not_relative_commutant";
    case TripleDefect::expectation_failure: return "expectation_failure";
    case TripleDefect::not_regular: return "not_regular";
    case TripleDefect::not_full: return "not_full";
  }
  return "unknown";
}

TripleDefect TripleExam::first_defect() const {
  if (!atoms_partition) return TripleDefect::atoms_not_partition;
  if (!d_abelian) return TripleDefect::d_not_abelian;
  if (!n_matches) return TripleDefect::n_not_relative_commutant;
  if (!expectation_ok) return TripleDefect::expectation_failure;
  if (!regular) return TripleDefect::not_regular;
  if (!full) return TripleDefect::not_full;
  return TripleDefect::none;
}

namespace {

int corner_dim(const StarAlgebra& m, const Matrix& qj, const Matrix& qi) {
  Subspace corner(m.ambient_dim());
  for (const Matrix& b : m.space().basis()) corner.absorb(qj * b * qi);
  return static_cast<int>(corner.dim());
}

}  // namespace

TripleExam CartanTripleModel::examine(const StarAlgebra& m,
                                      const std::vector<Matrix>& atoms,
                                      const StarAlgebra* n_expected) {
  TripleExam exam;
  const double tol = tolerance();
  const Eigen::Index n = m.ambient_dim();

  // atoms: projections in M, pairwise orthogonal, summing to the unit
  Matrix sum = zero(n);
  bool atoms_ok = !atoms.empty();
  for (const Matrix& q : atoms) {
    if (!is_projection(q, 10 * tol) || !m.contains(q) || projection_rank(q) == 0)
      atoms_ok = false;
    sum += q;
  }
  if (atoms_ok)
    for (std::size_t i = 0; i < atoms.size() && atoms_ok; ++i)
      for (std::size_t j = i + 1; j < atoms.size(); ++j)
        if (!approx_zero(Matrix(atoms[i] * atoms[j]), 10 * tol)) atoms_ok = false;
  exam.atoms_partition = atoms_ok && approx_equal(sum, m.unit(), 10 * tol);

  StarAlgebra d = StarAlgebra::generated(atoms, n, m.unit());
  exam.d_abelian = true;
  for (const Matrix& a : d.space().basis())
    for (const Matrix& b : d.space().basis())
      if (!approx_zero(Matrix(a * b - b * a), 10 * tol)) exam.d_abelian = false;

  StarAlgebra dc = relative_commutant(d, m);
  exam.n_matches = n_expected == nullptr || dc.space().equals(n_expected->space());

  // E(x) = sum q_i x q_i: idempotent and faithful by construction; check the
  // bimodule law on the computed commutant's basis.
  exam.expectation_ok = true;
  {
    auto expect = [&](const Matrix& x) {
      Matrix e = zero(n);
      for (const Matrix& q : atoms) e += q * x * q;
      return e;
    };
    for (const Matrix& b : dc.space().basis())
      if (!approx_equal(expect(b), b, 100 * tol)) exam.expectation_ok = false;
    for (const Matrix& b : m.space().basis()) {
      Matrix e = expect(b);
      if (!dc.contains(e) || !approx_equal(expect(e), e, 100 * tol))
        exam.expectation_ok = false;
    }
  }

  // regularity: a corner q_j M q_i is reachable by normalizers exactly when
  // the atoms are Murray-von Neumann equivalent in M; a non-zero corner
  // between inequivalent atoms cannot be spanned.
  exam.regular = true;
  if (exam.atoms_partition)
    for (std::size_t i = 0; i < atoms.size(); ++i)
      for (std::size_t j = 0; j < atoms.size(); ++j) {
        if (i == j) continue;
        if (corner_dim(m, atoms[j], atoms[i]) > 0 &&
            !projections_equivalent(atoms[i], atoms[j], m))
          exam.regular = false;
      }

  // fullness: D = Z(N)
  StarAlgebra zn = relative_commutant(dc, dc);
  exam.full = zn.space().equals(d.space());
  return exam;
}

CartanTripleModel CartanTripleModel::build(const TripleSpec& spec) {
  int total = std::accumulate(spec.blocks.begin(), spec.blocks.end(), 0);
  if (total <= 0 || total > 64)
    throw TripleRejection(TripleDefect::atoms_not_partition,
                          "ambient dimension must be in 1..64");
  // coordinate -> block id
  std::vector<int> block_of(total);
  {
    int c = 0, b = 0;
    for (int size : spec.blocks) {
      if (size <= 0)
        throw TripleRejection(TripleDefect::atoms_not_partition, "empty block");
      for (int i = 0; i < size; ++i) block_of[c++] = b;
      ++b;
    }
  }
  std::vector<int> seen(total, 0);
  for (const auto& atom : spec.atoms) {
    if (atom.empty())
      throw TripleRejection(TripleDefect::atoms_not_partition, "empty atom");
    for (int c : atom) {
      if (c < 0 || c >= total || seen[c]++)
        throw TripleRejection(TripleDefect::atoms_not_partition,
                              "coordinates must partition 0.." + std::to_string(total - 1));
      if (block_of[c] != block_of[atom.front()])
        throw TripleRejection(TripleDefect::atoms_cross_blocks,
                              "atom spans more than one block");
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != total)
    throw TripleRejection(TripleDefect::atoms_not_partition,
                          "coordinates must partition 0.." + std::to_string(total - 1));

  // M = direct sum of full blocks: generated by the block matrix units.
  std::vector<Matrix> gens;
  {
    int offset = 0;
    for (int size : spec.blocks) {
      for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) {
          Matrix e = zero(total);
          e(offset + r, offset + c) = 1.0;
          gens.push_back(e);
        }
      offset += size;
    }
  }
  StarAlgebra m = StarAlgebra::generated(gens, total);

  std::vector<Matrix> atoms;
  for (const auto& atom : spec.atoms) {
    Matrix q = zero(total);
    for (int c : atom) q(c, c) = 1.0;
    atoms.push_back(q);
  }
  return build(std::move(m), std::move(atoms));
}

CartanTripleModel CartanTripleModel::build(StarAlgebra m, std::vector<Matrix> atoms) {
  TripleExam exam = examine(m, atoms, nullptr);
  if (TripleDefect d = exam.first_defect(); d != TripleDefect::none) {
    std::string detail = "structural validation failed";
    if (d == TripleDefect::not_regular)
      detail = "atoms of unequal rank are joined by a non-zero corner of M; "
               "the normalizer span is a proper subspace";
    throw TripleRejection(d, detail);
  }
  StarAlgebra d = StarAlgebra::generated(atoms, m.ambient_dim(), m.unit());
  StarAlgebra n = relative_commutant(d, m);
  return CartanTripleModel(std::move(m), std::move(n), std::move(d), std::move(atoms));
}

Matrix CartanTripleModel::expectation(const Matrix& x) const {
  if (!m_.contains(x))
    throw std::invalid_argument("expectation: x outside M");
  Matrix e = zero(ambient_dim());
  for (const Matrix& q : atoms_) e += q * x * q;
  return e;
}

std::optional<std::uint64_t> CartanTripleModel::projd_mask(const Matrix& p) const {
  const double tol = tolerance();
  std::uint64_t mask = 0;
  Matrix sum = zero(ambient_dim());
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    double c = (atoms_[i] * p).trace().real() / projection_rank(atoms_[i]);
    if (std::abs(c - 1.0) <= 1e-6) {
      mask |= std::uint64_t{1} << i;
      sum += atoms_[i];
    } else if (std::abs(c) > 1e-6) {
      return std::nullopt;
    }
  }
  if (!approx_equal(sum, p, 1e4 * tol)) return std::nullopt;
  return mask;
}

Matrix CartanTripleModel::projd(std::uint64_t mask) const {
  Matrix p = zero(ambient_dim());
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (mask >> i & 1) p += atoms_[i];
  return p;
}

GnResult CartanTripleModel::gn_membership(const Matrix& v) const {
  const double tol = tolerance();
  GnResult out;
  if (!m_.contains(v) || !is_partial_isometry(v, 1e4 * tol)) {
    out.reason = GnReason::not_partial_isometry;
    return out;
  }
  auto source = projd_mask(Matrix(v.adjoint() * v));
  if (!source) {
    out.reason = GnReason::source_not_in_projd;
    return out;
  }
  auto range = projd_mask(Matrix(v * v.adjoint()));
  if (!range) {
    out.reason = GnReason::range_not_in_projd;
    return out;
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < atom_count(); ++i) {
    if (!(*source >> i & 1)) continue;
    Matrix image = v * atoms_[i] * v.adjoint();
    int to = -1;
    for (int j = 0; j < atom_count(); ++j)
      if (approx_equal(image, atoms_[j], 1e4 * tol)) {
        to = j;
        break;
      }
    if (to < 0) {
      out.reason = GnReason::atom_image_not_atom;
      return out;
    }
    pairs.emplace_back(i, to);
  }
  out.chart = Chart::from_pairs(atom_count(), pairs);
  return out;
}

}  // namespace cartankit
