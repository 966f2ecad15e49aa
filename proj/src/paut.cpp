#include "cartankit/paut.hpp"

#include <stdexcept>

#include "cartankit/config.hpp"

namespace cartankit {

namespace {
Matrix apply_coeff(const StarAlgebra& n, const Matrix& coeff, const Matrix& x) {
  CVector coords = n.space().coordinates(x);
  CVector mapped = coeff * coords;
  Matrix out = zero(n.ambient_dim());
  const auto& basis = n.space().basis();
  for (std::size_t i = 0; i < basis.size(); ++i)
    out += mapped(static_cast<Eigen::Index>(i)) * basis[i];
  return out;
}
}  // namespace

PartialAutomorphism PartialAutomorphism::make_trusted(
    std::shared_ptr<const StarAlgebra> n, Matrix e, Matrix f,
    const std::function<Matrix(const Matrix&)>& map) {
  PartialAutomorphism p(std::move(n), std::move(e), std::move(f));
  const StarAlgebra& alg = *p.n_;
  const auto& basis = alg.space().basis();
  p.coeff_.resize(static_cast<Eigen::Index>(basis.size()),
                  static_cast<Eigen::Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    Matrix image = map(Matrix(p.f_ * basis[c] * p.f_));
    for (std::size_t r = 0; r < basis.size(); ++r)
      p.coeff_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          trace_inner(basis[r], image);
  }
  return p;
}

PartialAutomorphism PartialAutomorphism::make(
    std::shared_ptr<const StarAlgebra> n, Matrix e, Matrix f,
    const std::function<Matrix(const Matrix&)>& map) {
  const double tol = 1e4 * tolerance();
  if (!is_projection(e, tol) || !is_projection(f, tol))
    throw std::invalid_argument("PartialAutomorphism: corners must be projections");
  const StarAlgebra& n_check = *n;
  for (const Matrix& b : n_check.space().basis())
    if (!n_check.contains(map(Matrix(f * b * f))))
      throw std::invalid_argument("PartialAutomorphism: image leaves N");
  PartialAutomorphism p = make_trusted(std::move(n), std::move(e), std::move(f), map);
  if (p.is_zero()) return p;
  // corner laws: alpha(f) = e, multiplicative, *-preserving
  if (!approx_equal(p.apply(p.f_), p.e_, tol))
    throw std::invalid_argument("PartialAutomorphism: alpha(f) != e");
  const auto& checked = p.n_->space().basis();
  for (const Matrix& a : checked) {
    Matrix fa = p.f_ * a * p.f_;
    if (!approx_equal(p.apply(Matrix(fa.adjoint())), Matrix(p.apply(fa).adjoint()),
                      tol))
      throw std::invalid_argument("PartialAutomorphism: not *-preserving");
    for (const Matrix& b : checked) {
      Matrix fb = p.f_ * b * p.f_;
      if (!approx_equal(p.apply(Matrix(fa * fb)), Matrix(p.apply(fa) * p.apply(fb)),
                        tol))
        throw std::invalid_argument("PartialAutomorphism: not multiplicative");
    }
  }
  return p;
}

PartialAutomorphism PartialAutomorphism::zero(std::shared_ptr<const StarAlgebra> n) {
  const Eigen::Index dim = n->ambient_dim();
  return make(std::move(n), cartankit::zero(dim), cartankit::zero(dim),
              [](const Matrix& x) { return cartankit::zero(x.rows()); });
}

PartialAutomorphism PartialAutomorphism::idempotent(
    std::shared_ptr<const StarAlgebra> n, const Matrix& e) {
  return make(std::move(n), e, e, [](const Matrix& x) { return x; });
}

bool PartialAutomorphism::is_zero() const {
  return projection_rank(e_) == 0 || projection_rank(f_) == 0;
}

bool PartialAutomorphism::is_idempotent_element() const {
  const double tol = 1e4 * tolerance();
  if (!approx_equal(e_, f_, tol)) return false;
  for (const Matrix& b : n_->space().basis()) {
    Matrix fb = f_ * b * f_;
    if (!approx_equal(apply(fb), fb, tol)) return false;
  }
  return true;
}

Matrix PartialAutomorphism::apply(const Matrix& x) const {
  return apply_coeff(*n_, coeff_, Matrix(f_ * x * f_));
}

PartialAutomorphism PartialAutomorphism::inverse() const {
  const PartialAutomorphism self = *this;
  // invert via least squares on the corner: alpha^{-1}(y) solves alpha(x) = e y e
  return make_trusted(n_, f_, e_, [self](const Matrix& y) {
    const StarAlgebra& alg = *self.n_;
    CVector coords = alg.space().coordinates(y);
    CVector pre = self.coeff_.completeOrthogonalDecomposition().solve(coords);
    Matrix x = cartankit::zero(alg.ambient_dim());
    const auto& basis = alg.space().basis();
    for (std::size_t i = 0; i < basis.size(); ++i)
      x += pre(static_cast<Eigen::Index>(i)) * basis[i];
    return Matrix(self.f_ * x * self.f_);
  });
}

PartialAutomorphism PartialAutomorphism::restrict(const Matrix& d) const {
  const PartialAutomorphism self = *this;
  Matrix new_f = f_ * d * f_;
  if (!is_projection(new_f, 1e4 * tolerance()))
    throw std::invalid_argument("restrict: d does not commute with the source");
  Matrix new_e = apply(new_f);
  return make_trusted(n_, new_e, new_f,
              [self](const Matrix& x) { return self.apply(x); });
}

bool PartialAutomorphism::equal(const PartialAutomorphism& o) const {
  const double tol = 1e4 * tolerance();
  if (!approx_equal(e_, o.e_, tol) || !approx_equal(f_, o.f_, tol)) return false;
  for (const Matrix& b : n_->space().basis())
    if (!approx_equal(apply(b), o.apply(b), tol)) return false;
  return true;
}

bool PartialAutomorphism::munn_related(const PartialAutomorphism& o,
                                       const std::vector<Matrix>& d_basis) const {
  const double tol = 1e4 * tolerance();
  if (!approx_equal(e_, o.e_, tol) || !approx_equal(f_, o.f_, tol)) return false;
  for (const Matrix& d : d_basis)
    if (!approx_equal(apply(d), o.apply(d), tol)) return false;
  return true;
}

PartialAutomorphism compose(const PartialAutomorphism& a,
                            const PartialAutomorphism& b) {
  // (e1,a1,f1)(e2,a2,f2) = (a1(f1 e2), (a1 a2)|, a2^{-1}(f1 e2))
  Matrix middle = b.e_ * a.f_;  // e2 f1 (commuting projections in D)
  PartialAutomorphism b_inv = b.inverse();
  Matrix new_f = b_inv.apply(middle);
  Matrix new_e = a.apply(Matrix(a.f_ * middle));
  const PartialAutomorphism a_copy = a, b_copy = b;
  return PartialAutomorphism::make_trusted(a.n_, new_e, new_f, [a_copy, b_copy](const Matrix& x) {
    return a_copy.apply(b_copy.apply(x));
  });
}

bool paut_compatible(const PartialAutomorphism& a, const PartialAutomorphism& b) {
  return compose(a.inverse(), b).is_idempotent_element() &&
         compose(a, b.inverse()).is_idempotent_element();
}

std::optional<PartialAutomorphism> paut_join(
    std::span<const PartialAutomorphism> family) {
  if (family.empty()) return std::nullopt;
  auto n = family[0].n_;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (!paut_compatible(family[i], family[j])) return std::nullopt;
  // refine by the Boolean algebra generated by the sources, then sum blocks
  const Eigen::Index dim = n->ambient_dim();
  std::vector<Matrix> pieces{identity(dim)};
  for (const PartialAutomorphism& a : family) {
    std::vector<Matrix> next;
    for (const Matrix& p : pieces) {
      Matrix inside = p * a.source_projection();
      Matrix outside = p - inside;
      if (projection_rank(inside) > 0) next.push_back(inside);
      if (projection_rank(outside) > 0) next.push_back(outside);
    }
    pieces = std::move(next);
  }
  Matrix e = zero(dim), f = zero(dim);
  // ordered orthogonal blocks: (member index, piece restriction)
  std::vector<PartialAutomorphism> blocks;
  for (const Matrix& p : pieces) {
    // find a family member whose source contains p; compatibility makes the
    // choice irrelevant on overlaps
    for (const PartialAutomorphism& a : family)
      if (approx_equal(Matrix(a.source_projection() * p), p, 1e4 * tolerance())) {
        blocks.push_back(a.restrict(p));
        f += p;
        e += blocks.back().range_projection();
        break;
      }
  }
  std::vector<PartialAutomorphism> blocks_copy = blocks;
  return PartialAutomorphism::make_trusted(n, e, f, [blocks_copy](const Matrix& x) {
    Matrix out = cartankit::zero(x.rows());
    for (const PartialAutomorphism& b : blocks_copy) out += b.apply(x);
    return out;
  });
}

PartialAutomorphism theta_representative(const ExtensionModel& ext, const Chart& s) {
  auto n = std::make_shared<const StarAlgebra>(ext.triple().n_algebra());
  Matrix js = ext.section(s);
  Matrix e = js * js.adjoint();
  Matrix f = js.adjoint() * js;
  return PartialAutomorphism::make(
      n, std::move(e), std::move(f),
      [js](const Matrix& x) { return Matrix(js * x * js.adjoint()); });
}

FulmanResult fulman_lift(const ExtensionModel& ext) {
  FulmanResult result;
  const InverseMonoid& s = ext.monoid();
  const StarAlgebra& d = ext.triple().d_algebra();
  for (const Chart& a : s.elements())
    for (const Chart& b : s.elements()) {
      Matrix defect = ext.section(compose(a, b)).adjoint() * ext.section(a) *
                      ext.section(b);
      if (!d.contains(defect)) {
        result.condition_holds = false;
        result.condition_failures.emplace_back(a, b);
      }
    }
  if (!result.condition_holds) return result;

  result.lift_emitted = true;
  std::vector<PartialAutomorphism> lift;
  for (const Chart& a : s.elements()) lift.push_back(theta_representative(ext, a));
  auto index_of = [&](const Chart& c) {
    return static_cast<std::size_t>(
        std::lower_bound(s.elements().begin(), s.elements().end(), c) -
        s.elements().begin());
  };
  result.homomorphism_ok = true;
  for (std::size_t i = 0; i < s.elements().size(); ++i)
    for (std::size_t j = 0; j < s.elements().size(); ++j) {
      const Chart product = compose(s.elements()[i], s.elements()[j]);
      if (!compose(lift[i], lift[j]).equal(lift[index_of(product)]))
        result.homomorphism_ok = false;
    }
  result.projects_to_theta = true;
  const auto d_basis = d.space().basis();
  for (std::size_t i = 0; i < s.elements().size(); ++i)
    if (!lift[i].munn_related(theta_representative(ext, s.elements()[i]), d_basis))
      result.projects_to_theta = false;
  return result;
}

RegularizerVerdict regularizer_check(
    const ExtensionModel& ext, const std::vector<Matrix>& r_generators,
    const std::vector<std::function<Matrix(const Matrix&)>>& automorphisms) {
  if (r_generators.size() != automorphisms.size())
    throw std::invalid_argument("regularizer_check: one automorphism per "
                                "generator");
  RegularizerVerdict verdict;
  const CartanTripleModel& t = ext.triple();
  const double tol = 1e4 * tolerance();

  for (std::size_t i = 0; i < r_generators.size(); ++i) {
    const Matrix& u = r_generators[i];
    if (!is_unitary(u, tol) || !t.gn_membership(u)) {
      verdict.failures.push_back("generator " + std::to_string(i) +
                                 " is not a unitary groupoid normalizer");
      verdict.covariance_ok = false;
      continue;
    }
    // (a) kernel: generators already in U(N) must act as the identity
    if (t.n_algebra().contains(u)) {
      for (const Matrix& b : t.n_algebra().space().basis())
        if (!approx_equal(automorphisms[i](b), b, tol)) {
          verdict.kernel_ok = false;
          verdict.failures.push_back("generator " + std::to_string(i) +
                                     " lies in U(N) but does not act trivially");
          break;
        }
    }
    // (c)(ii) covariance on D
    for (const Matrix& q : t.atom_projections())
      if (!approx_equal(automorphisms[i](q), Matrix(u * q * u.adjoint()), tol)) {
        verdict.covariance_ok = false;
        verdict.failures.push_back("generator " + std::to_string(i) +
                                   " violates alpha_u(d) = u d u*");
      }
    // (c)(i) fixed-point clause at the largest fixed projection
    Chart chart = *t.gn_membership(u).chart;
    Matrix p = zero(t.ambient_dim());
    for (int a = 0; a < t.atom_count(); ++a)
      if (chart.defined(a) && chart.image(a) == a) p += t.atom_projections()[a];
    for (const Matrix& b : t.n_algebra().space().basis()) {
      Matrix pb = p * b * p;
      if (!approx_equal(automorphisms[i](pb), pb, tol)) {
        verdict.fixed_point_ok = false;
        verdict.failures.push_back("generator " + std::to_string(i) +
                                   " moves N p despite fixing D p");
        break;
      }
    }
  }

  // (b) density: the span of the generated group must be all of M
  Subspace span(t.ambient_dim());
  span.absorb(identity(t.ambient_dim()));
  for (const Matrix& u : r_generators) {
    span.absorb(u);
    span.absorb(u.adjoint());
  }
  // U(N) is always inside R, so N is inside the span
  for (const Matrix& b : t.n_algebra().space().basis()) span.absorb(b);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Matrix> snapshot = span.basis();
    for (const Matrix& x : snapshot)
      for (const Matrix& y : snapshot)
        if (span.absorb(x * y)) grew = true;
  }
  verdict.density_ok = span.dim() == t.m_algebra().dim();
  if (!verdict.density_ok)
    verdict.failures.push_back("span of the generated group has dimension " +
                               std::to_string(span.dim()) + " < dim M = " +
                               std::to_string(t.m_algebra().dim()));
  return verdict;
}

}  // namespace cartankit
