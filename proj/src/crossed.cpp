#include "cartankit/crossed.hpp"

#include <stdexcept>

#include "cartankit/config.hpp"

namespace cartankit {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("FiniteGroup: table not square");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("FiniteGroup: bad entry");
  }
  for (int a = 0; a < n; ++a)
    if (table[0][a] != a || table[a][0] != a)
      throw std::invalid_argument("FiniteGroup: index 0 is not an identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw std::invalid_argument("FiniteGroup: not associative");
  FiniteGroup g{std::move(table), std::vector<int>(n, -1)};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g.table[a][b] == 0 && g.table[b][a] == 0) g.inverse_[a] = b;
    if (g.inverse_[a] < 0)
      throw std::invalid_argument("FiniteGroup: element without inverse");
  }
  return g;
}

GroupAction GroupAction::from_unitaries(StarAlgebra n, FiniteGroup group,
                                        const std::vector<Matrix>& unitaries) {
  if (unitaries.size() != group.order())
    throw std::invalid_argument("GroupAction: one unitary per group element");
  const double tol = tolerance();
  const auto& basis = n.space().basis();
  std::vector<Matrix> maps;
  for (const Matrix& u : unitaries) {
    if (!is_unitary(u, 1e4 * tol))
      throw std::invalid_argument("GroupAction: non-unitary action matrix");
    Matrix coeff(static_cast<Eigen::Index>(basis.size()),
                 static_cast<Eigen::Index>(basis.size()));
    for (std::size_t c = 0; c < basis.size(); ++c) {
      Matrix image = u * basis[c] * u.adjoint();
      if (!n.contains(image))
        throw std::invalid_argument("GroupAction: conjugation leaves the algebra");
      for (std::size_t r = 0; r < basis.size(); ++r)
        coeff(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            trace_inner(basis[r], image);
    }
    maps.push_back(std::move(coeff));
  }
  GroupAction a(std::make_shared<const StarAlgebra>(std::move(n)),
                std::move(group), std::move(maps));
  a.validate();
  return a;
}

GroupAction GroupAction::from_basis_maps(StarAlgebra n, FiniteGroup group,
                                         std::vector<Matrix> coefficient_maps) {
  if (coefficient_maps.size() != group.order())
    throw std::invalid_argument("GroupAction: one map per group element");
  const Eigen::Index d = static_cast<Eigen::Index>(n.dim());
  for (const Matrix& m : coefficient_maps)
    if (m.rows() != d || m.cols() != d)
      throw std::invalid_argument("GroupAction: coefficient map has wrong size");
  GroupAction a(std::make_shared<const StarAlgebra>(std::move(n)),
                std::move(group), std::move(coefficient_maps));
  a.validate();
  return a;
}

Matrix GroupAction::apply(int g, const Matrix& x) const {
  const auto& basis = n_->space().basis();
  CVector coords = n_->space().coordinates(x);
  CVector mapped = maps_[g] * coords;
  Matrix out = zero(n_->ambient_dim());
  for (std::size_t i = 0; i < basis.size(); ++i)
    out += mapped(static_cast<Eigen::Index>(i)) * basis[i];
  return out;
}

void GroupAction::validate() const {
  const double tol = 1e4 * tolerance();
  const auto& basis = n_->space().basis();
  const int order = static_cast<int>(group_.order());
  // alpha_e = id
  for (const Matrix& b : basis)
    if (!approx_equal(apply(0, b), b, tol))
      throw std::invalid_argument("GroupAction: alpha_e is not the identity");
  // homomorphism alpha_g alpha_h = alpha_{gh}
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h)
      for (const Matrix& b : basis)
        if (!approx_equal(apply(g, apply(h, b)), apply(group_.product(g, h), b), tol))
          throw std::invalid_argument("GroupAction: not a homomorphism");
  // each alpha_g is a *-automorphism of N fixing the unit
  for (int g = 0; g < order; ++g) {
    if (!approx_equal(apply(g, n_->unit()), n_->unit(), tol))
      throw std::invalid_argument("GroupAction: unit not fixed");
    for (const Matrix& a : basis) {
      if (!n_->contains(apply(g, a)))
        throw std::invalid_argument("GroupAction: image leaves N");
      if (!approx_equal(apply(g, Matrix(a.adjoint())),
                        Matrix(apply(g, a).adjoint()), tol))
        throw std::invalid_argument("GroupAction: not *-preserving");
      for (const Matrix& b : basis)
        if (!approx_equal(apply(g, Matrix(a * b)), Matrix(apply(g, a) * apply(g, b)),
                          tol))
          throw std::invalid_argument("GroupAction: not multiplicative");
    }
    if (numerical_rank(maps_[g], tolerance()) != static_cast<Eigen::Index>(basis.size()))
      throw std::invalid_argument("GroupAction: map not invertible");
  }
}

Matrix CrossedProduct::embed(const Matrix& x) const {
  const GroupAction& a = *action;
  const Eigen::Index n = a.domain().ambient_dim();
  const Eigen::Index order = static_cast<Eigen::Index>(a.group().order());
  Matrix out = zero(n * order);
  for (Eigen::Index h = 0; h < order; ++h)
    out.block(h * n, h * n, n, n) =
        a.apply(a.group().inverse(static_cast<int>(h)), x);
  return out;
}

Matrix CrossedProduct::expectation_onto_n(const Matrix& x) const {
  return embed(fourier_coefficient(x, 0));
}

Matrix CrossedProduct::fourier_coefficient(const Matrix& x, int g) const {
  const Eigen::Index n = action->domain().ambient_dim();
  Matrix shifted = x * unitaries[g].adjoint();
  return shifted.block(0, 0, n, n);  // the (e, e) block
}

Matrix CrossedProduct::fixed_central_projection(int g) const {
  const GroupAction& a = *action;
  Matrix p = zero(a.domain().ambient_dim());
  for (const Matrix& z : a.domain().minimal_central_projections())
    if (approx_equal(a.apply(g, z), z, 1e4 * tolerance())) p += z;
  return p;
}

CrossedProduct build_crossed_product(const GroupAction& action) {
  const StarAlgebra& n_alg = action.domain();
  const Eigen::Index n = n_alg.ambient_dim();
  const Eigen::Index order = static_cast<Eigen::Index>(action.group().order());
  const Eigen::Index big = n * order;

  auto embed = [&](const Matrix& x) {
    Matrix out = zero(big);
    for (Eigen::Index h = 0; h < order; ++h)
      out.block(h * n, h * n, n, n) =
          action.apply(action.group().inverse(static_cast<int>(h)), x);
    return out;
  };

  // u_g: block (h, h') = I when h = g h'
  std::vector<Matrix> unitaries;
  for (int g = 0; g < static_cast<int>(order); ++g) {
    Matrix u = zero(big);
    for (int hp = 0; hp < static_cast<int>(order); ++hp) {
      int h = action.group().product(g, hp);
      u.block(static_cast<Eigen::Index>(h) * n, static_cast<Eigen::Index>(hp) * n,
              n, n) = identity(n);
    }
    unitaries.push_back(std::move(u));
  }

  std::vector<Matrix> n_gens;
  for (const Matrix& b : n_alg.space().basis()) n_gens.push_back(embed(b));
  std::vector<Matrix> m_gens = n_gens;
  for (const Matrix& u : unitaries) m_gens.push_back(u);

  std::vector<Matrix> d_atoms;
  for (const Matrix& z : n_alg.minimal_central_projections())
    d_atoms.push_back(embed(z));

  // covariance: u_g embed(x) u_g* = embed(alpha_g(x))
  const double tol = 1e4 * tolerance();
  for (int g = 0; g < static_cast<int>(order); ++g)
    for (const Matrix& b : n_alg.space().basis())
      if (!approx_equal(Matrix(unitaries[g] * embed(b) * unitaries[g].adjoint()),
                        embed(action.apply(g, b)), tol))
        throw std::logic_error("build_crossed_product: covariance failure");

  return CrossedProduct{StarAlgebra::generated(m_gens, big),
                        StarAlgebra::generated(n_gens, big),
                        std::move(unitaries),
                        std::move(d_atoms),
                        std::make_shared<const GroupAction>(action)};
}

std::vector<bool> is_properly_outer(const GroupAction& action,
                                    const StarAlgebra& restrict_to) {
  const double tol = tolerance();
  const auto& basis = restrict_to.space().basis();
  const Eigen::Index n = restrict_to.ambient_dim();
  // invariance of restrict_to under the action
  for (std::size_t g = 0; g < action.group().order(); ++g)
    for (const Matrix& b : basis)
      if (!restrict_to.contains(action.apply(static_cast<int>(g), b)))
        throw std::invalid_argument("is_properly_outer: restrict_to is not "
                                    "invariant under the action");
  std::vector<bool> out(action.group().order(), true);
  for (std::size_t g = 0; g < action.group().order(); ++g) {
    // solve y x = x alpha_g(y) for x in restrict_to, over all basis y
    const Eigen::Index nn = n * n;
    Matrix constraints(static_cast<Eigen::Index>(basis.size()) * nn,
                       static_cast<Eigen::Index>(basis.size()));
    for (std::size_t yi = 0; yi < basis.size(); ++yi) {
      Matrix alpha_y = action.apply(static_cast<int>(g), basis[yi]);
      for (std::size_t xi = 0; xi < basis.size(); ++xi)
        constraints.block(static_cast<Eigen::Index>(yi) * nn,
                          static_cast<Eigen::Index>(xi), nn, 1) =
            vectorize(Matrix(basis[yi] * basis[xi] - basis[xi] * alpha_y));
    }
    out[g] = null_space(constraints, tol).empty();
  }
  return out;
}

CrossedVerdict crossed_cartan_verdict(const GroupAction& action) {
  CrossedVerdict verdict;
  CrossedProduct cp = build_crossed_product(action);

  verdict.exam =
      CartanTripleModel::examine(cp.algebra, cp.d_atoms, &cp.n_embedded);
  verdict.direct_cartan =
      verdict.exam.atoms_partition && verdict.exam.d_abelian &&
      verdict.exam.n_matches && verdict.exam.expectation_ok &&
      verdict.exam.regular && verdict.exam.full;

  StarAlgebra center = StarAlgebra::generated(
      action.domain().minimal_central_projections(), action.domain().ambient_dim());
  verdict.outer_on_center = is_properly_outer(action, center);
  verdict.outer_on_n = is_properly_outer(action, action.domain());
  verdict.predicted_cartan = true;
  for (std::size_t g = 1; g < action.group().order(); ++g)
    if (!verdict.outer_on_center[g]) verdict.predicted_cartan = false;

  verdict.agree = verdict.direct_cartan == verdict.predicted_cartan;
  verdict.diagnostic = verdict.direct_cartan
                           ? "crossed product is a full Cartan triple"
                           : "not a Cartan triple: " +
                                 to_string(verdict.exam.first_defect());
  return verdict;
}

ExtensionModel build_crossed_extension(const CrossedProduct& cp) {
  CrossedVerdict v = crossed_cartan_verdict(*cp.action);
  if (!v.direct_cartan)
    throw TripleRejection(v.exam.first_defect(),
                          "crossed product is not a Cartan triple");
  CartanTripleModel triple = CartanTripleModel::build(cp.algebra, cp.d_atoms);

  // section through group unitaries: w_{ji} = u_g q_i when ad u_g moves
  // central atom i to atom j
  const CrossedProduct cp_copy = cp;
  IsometryProvider provider = [cp_copy](const CartanTripleModel& t, int j,
                                        int i) -> std::optional<Matrix> {
    const double tol = 1e4 * tolerance();
    for (std::size_t g = 0; g < cp_copy.unitaries.size(); ++g) {
      Matrix candidate = cp_copy.unitaries[g] * t.atom_projections()[i];
      if (approx_equal(Matrix(candidate * candidate.adjoint()),
                       t.atom_projections()[j], tol))
        return candidate;
    }
    return std::nullopt;
  };
  return ExtensionModel::build(std::move(triple), provider);
}

}  // namespace cartankit
