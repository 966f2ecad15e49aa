#include "cartankit/kernel_space.hpp"

#include <algorithm>
#include <stdexcept>

namespace cartankit {

Matrix kernel_K(const ExtensionModel& ext, const Chart& t, const Chart& s) {
  Chart e = meet(compose(s.inverse(), t), Chart::identity(s.atom_count()));
  return ext.section(e);
}

KernelSpace KernelSpace::build(const ExtensionModel& ext) {
  KernelSpace ks;
  ks.ext_ = std::make_shared<const ExtensionModel>(ext);
  ks.s_elements_ = ext.monoid().elements();
  ks.n_basis_ = ext.triple().n_algebra().space().basis();

  const std::size_t m = ks.s_elements_.size();
  const std::size_t dn = ks.n_basis_.size();
  for (std::size_t si = 0; si < m; ++si)
    for (std::size_t bi = 0; bi < dn; ++bi) ks.labels_.emplace_back(si, bi);

  const Eigen::Index big = static_cast<Eigen::Index>(m * dn);
  // cache the projections j(s& t ^ 1) per chart pair
  std::vector<std::vector<Matrix>> kmat(m, std::vector<Matrix>(m));
  for (std::size_t si = 0; si < m; ++si)
    for (std::size_t ti = 0; ti < m; ++ti)
      kmat[si][ti] = kernel_K(ext, ks.s_elements_[ti], ks.s_elements_[si]);
  // gram[(s,b),(t,c)] = tr(b* j(s& t ^ 1) c)
  Matrix gram(big, big);
  for (Eigen::Index a = 0; a < big; ++a)
    for (Eigen::Index b = 0; b < big; ++b) {
      auto [si, bi] = ks.labels_[static_cast<std::size_t>(a)];
      auto [ti, ci] = ks.labels_[static_cast<std::size_t>(b)];
      gram(a, b) = (ks.n_basis_[bi].adjoint() * kmat[si][ti] * ks.n_basis_[ci]).trace();
    }

  HermitianEigen eig = hermitian_eigen(gram);
  ks.gram_min_ev_ = eig.values.size() ? eig.values.minCoeff() : 0.0;
  const double scale = eig.values.size() ? std::max(1.0, eig.values.maxCoeff()) : 1.0;
  const double cut = 1e3 * tolerance() * scale;
  if (ks.gram_min_ev_ < -cut)
    throw std::logic_error("KernelSpace: gram has a negative eigenvalue " +
                           std::to_string(ks.gram_min_ev_));
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) > cut) kept.push_back(i);
  const Eigen::Index r = static_cast<Eigen::Index>(kept.size());
  ks.embed_.resize(r, big);
  ks.kept_eigenvalues_.resize(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    ks.kept_eigenvalues_(i) = eig.values(kept[i]);
    ks.embed_.row(i) =
        std::sqrt(eig.values(kept[i])) * eig.vectors.col(kept[i]).adjoint();
  }

  // V: L^2(N) -> module space, x -> k_1 x
  const Chart one = Chart::identity(ext.triple().atom_count());
  const std::size_t one_index = static_cast<std::size_t>(
      std::lower_bound(ks.s_elements_.begin(), ks.s_elements_.end(), one) -
      ks.s_elements_.begin());
  ks.v_.resize(r, static_cast<Eigen::Index>(dn));
  for (std::size_t bi = 0; bi < dn; ++bi)
    ks.v_.col(static_cast<Eigen::Index>(bi)) =
        ks.embed_.col(static_cast<Eigen::Index>(one_index * dn + bi));

  // spanning unitaries of N for the N_q generators
  for (const Matrix& b : ks.n_basis_)
    for (const auto& [coeff, u] :
         unitary_span_decomposition(b, ext.triple().n_algebra())) {
      (void)coeff;
      bool fresh = true;
      for (const Matrix& seen : ks.n_unitaries_)
        if (approx_equal(seen, u, 100 * tolerance())) fresh = false;
      if (fresh) ks.n_unitaries_.push_back(u);
    }
  return ks;
}

CVector KernelSpace::label_vector(std::size_t s_index, std::size_t b_index) const {
  return embed_.col(static_cast<Eigen::Index>(s_index * n_basis_.size() + b_index));
}

Matrix KernelSpace::operator_from_label_map(const Matrix& c) const {
  // c(target, source); with B B* = Lambda the operator is A = B c B* Lambda^{-1},
  // the unique map with A (B e_src) = B (c e_src) on the quotiented space.
  return embed_ * c * embed_.adjoint() *
         kept_eigenvalues_.cwiseInverse().asDiagonal();
}

Matrix KernelSpace::lambda(const Matrix& v) const {
  const ExtensionModel& ext = *ext_;
  const Chart qv = ext.quotient(v);
  const std::size_t m = s_elements_.size();
  const std::size_t dn = n_basis_.size();
  const Eigen::Index big = static_cast<Eigen::Index>(m * dn);
  Matrix c = Matrix::Zero(big, big);
  auto s_index = [&](const Chart& ch) {
    return static_cast<std::size_t>(
        std::lower_bound(s_elements_.begin(), s_elements_.end(), ch) -
        s_elements_.begin());
  };
  for (std::size_t si = 0; si < m; ++si) {
    const Chart& s = s_elements_[si];
    const std::size_t target = s_index(compose(qv, s));
    const Matrix sigma = ext.cocycle(v, s);
    for (std::size_t bi = 0; bi < dn; ++bi) {
      const Matrix image = sigma * n_basis_[bi];
      for (std::size_t mi = 0; mi < dn; ++mi) {
        Complex coeff = trace_inner(n_basis_[mi], image);
        if (std::abs(coeff) > 1e-14)
          c(static_cast<Eigen::Index>(target * dn + mi),
            static_cast<Eigen::Index>(si * dn + bi)) = coeff;
      }
    }
  }
  return operator_from_label_map(c);
}

Matrix KernelSpace::q_projection(const Chart& s) const {
  const std::size_t m = s_elements_.size();
  const std::size_t dn = n_basis_.size();
  const Eigen::Index big = static_cast<Eigen::Index>(m * dn);
  Matrix c = Matrix::Zero(big, big);
  auto s_index = [&](const Chart& ch) {
    return static_cast<std::size_t>(
        std::lower_bound(s_elements_.begin(), s_elements_.end(), ch) -
        s_elements_.begin());
  };
  for (std::size_t ti = 0; ti < m; ++ti) {
    const std::size_t target = s_index(meet(s, s_elements_[ti]));
    for (std::size_t bi = 0; bi < dn; ++bi)
      c(static_cast<Eigen::Index>(target * dn + bi),
        static_cast<Eigen::Index>(ti * dn + bi)) = 1.0;
  }
  return operator_from_label_map(c);
}

Matrix KernelSpace::p_projection() const {
  return q_projection(Chart::identity(ext_->triple().atom_count()));
}

Matrix KernelSpace::pi(const Matrix& n) const {
  const std::size_t dn = n_basis_.size();
  Matrix out(static_cast<Eigen::Index>(dn), static_cast<Eigen::Index>(dn));
  for (std::size_t c = 0; c < dn; ++c) {
    Matrix image = n * n_basis_[c];
    for (std::size_t r = 0; r < dn; ++r)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          trace_inner(n_basis_[r], image);
  }
  return out;
}

Matrix KernelSpace::alpha(const Matrix& x) const {
  const std::size_t dn = n_basis_.size();
  Matrix compressed = v_.adjoint() * x * v_;
  // recover n with pi(n) = compressed by applying to the coordinates of I
  CVector id_coords(static_cast<Eigen::Index>(dn));
  const Matrix eye = identity(ext_->triple().ambient_dim());
  for (std::size_t r = 0; r < dn; ++r)
    id_coords(static_cast<Eigen::Index>(r)) = trace_inner(n_basis_[r], eye);
  CVector n_coords = compressed * id_coords;
  Matrix n = zero(ext_->triple().ambient_dim());
  for (std::size_t r = 0; r < dn; ++r)
    n += n_coords(static_cast<Eigen::Index>(r)) * n_basis_[r];
  if (!approx_equal(pi(n), compressed, 1e5 * tolerance()))
    throw std::invalid_argument("alpha: V* x V is not a left multiplication "
                                "by N (x outside M_q?)");
  return n;
}

Matrix KernelSpace::expectation_q(const Matrix& x) const {
  Matrix n = alpha(x);
  Matrix out = Matrix::Zero(embed_.rows(), embed_.rows());
  for (const auto& [coeff, u] :
       unitary_span_decomposition(n, ext_->triple().n_algebra()))
    out += coeff * lambda(u);
  return out;
}

ReconstructedTriple reconstruct_triple(const KernelSpace& space) {
  const ExtensionModel& ext = space.extension();
  const Eigen::Index r = static_cast<Eigen::Index>(space.dim());
  const int k = ext.triple().atom_count();

  std::vector<Matrix> m_gens, n_gens, d_gens;
  for (const Chart& s : ext.monoid().elements())
    m_gens.push_back(space.lambda(ext.section(s)));
  for (const Matrix& u : space.n_spanning_unitaries()) {
    Matrix lu = space.lambda(u);
    m_gens.push_back(lu);
    n_gens.push_back(std::move(lu));
  }
  for (const Chart& s : ext.monoid().elements())
    if (s.is_idempotent()) {
      Matrix le = space.lambda(ext.section(s));
      n_gens.push_back(le);
      d_gens.push_back(std::move(le));
    }

  ReconstructedTriple rec{
      StarAlgebra::generated(m_gens, r),
      StarAlgebra::generated(n_gens, r),
      StarAlgebra::generated(d_gens, r),
      {},
  };
  for (int i = 0; i < k; ++i)
    rec.d_atoms.push_back(space.lambda(
        ext.section(Chart::sub_identity(k, std::uint64_t{1} << i))));

  StarAlgebra commutant_dq = relative_commutant(rec.d_q, rec.m_q);
  rec.n_q_is_commutant = commutant_dq.space().equals(rec.n_q.space());
  StarAlgebra z_nq = relative_commutant(rec.n_q, rec.n_q);
  rec.d_q_central = z_nq.space().contains(rec.d_q.space());
  rec.full = z_nq.space().equals(rec.d_q.space());
  return rec;
}

EquivalenceVerdict check_extension_equivalence(const KernelSpace& space,
                                               const ReconstructedTriple& rec,
                                               Rng& rng, int samples) {
  EquivalenceVerdict verdict;
  auto fail = [&](std::string msg) {
    verdict.equivalent = false;
    verdict.failures.push_back(std::move(msg));
  };
  const ExtensionModel& ext = space.extension();
  const CartanTripleModel& t = ext.triple();
  const int k = t.atom_count();
  const double tol = 1e-8;

  if (!rec.n_q_is_commutant) fail("N_q != relative commutant of D_q in M_q");
  if (!rec.d_q_central) fail("D_q not central in N_q");
  if (!rec.full) fail("reconstructed triple is not full");

  // (i) S-level: conjugation charts of lambda(j(s)) on the reconstructed
  // atoms replay S, and the atom equivalence patterns agree.
  for (const Chart& s : ext.monoid().elements()) {
    Matrix ls = space.lambda(ext.section(s));
    for (int i = 0; i < k; ++i) {
      Matrix conj = ls * rec.d_atoms[i] * ls.adjoint();
      if (s.defined(i)) {
        if (!approx_equal(conj, rec.d_atoms[s.image(i)], tol))
          fail("chart of lambda(j(" + s.to_string() + ")) moves atom " +
               std::to_string(i) + " wrongly");
      } else if (!approx_zero(conj, tol)) {
        fail("lambda(j(" + s.to_string() + ")) does not vanish on atom " +
             std::to_string(i));
      }
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      bool orig = projections_equivalent(t.atom_projections()[i],
                                         t.atom_projections()[j], t.m_algebra());
      bool reco = projections_equivalent(rec.d_atoms[i], rec.d_atoms[j], rec.m_q);
      if (orig != reco)
        fail("atom equivalence pattern differs at (" + std::to_string(i) + "," +
             std::to_string(j) + ")");
    }

  // (ii) P-level: alpha is a *-isomorphism N_q -> N with alpha(D_q) = D.
  const auto& nq_basis = rec.n_q.space().basis();
  if (nq_basis.size() != t.n_algebra().dim())
    fail("dim N_q = " + std::to_string(nq_basis.size()) + " != dim N = " +
         std::to_string(t.n_algebra().dim()));
  std::vector<Matrix> images;
  for (const Matrix& x : nq_basis) {
    Matrix ax = space.alpha(x);
    if (!t.n_algebra().contains(ax)) fail("alpha image leaves N");
    images.push_back(std::move(ax));
  }
  Subspace image_span = Subspace::span_of(images, t.ambient_dim());
  if (image_span.dim() != t.n_algebra().dim() ||
      !t.n_algebra().space().contains(image_span))
    fail("alpha is not onto N");
  for (std::size_t a = 0; a < nq_basis.size(); ++a) {
    if (!approx_equal(space.alpha(Matrix(nq_basis[a].adjoint())),
                      Matrix(images[a].adjoint()), tol))
      fail("alpha is not *-preserving on basis element " + std::to_string(a));
    for (std::size_t b = 0; b < nq_basis.size(); ++b)
      if (!approx_equal(space.alpha(Matrix(nq_basis[a] * nq_basis[b])),
                        Matrix(images[a] * images[b]), tol))
        fail("alpha is not multiplicative at basis pair (" + std::to_string(a) +
             "," + std::to_string(b) + ")");
  }
  {
    std::vector<Matrix> d_images;
    for (const Matrix& x : rec.d_q.space().basis())
      d_images.push_back(space.alpha(x));
    Subspace d_span = Subspace::span_of(d_images, t.ambient_dim());
    if (!d_span.equals(t.d_algebra().space())) fail("alpha(D_q) != D");
  }

  // (iii) commuting square on sampled elements of P: alpha(lambda(v)) = v.
  for (int i = 0; i < samples; ++i) {
    const auto& us = space.n_spanning_unitaries();
    const Matrix& u = us[rng.pick(us.size())];
    std::uint64_t mask = rng.pick(std::size_t{1} << k);
    Matrix v = u * ext.triple().projd(mask);  // generic element of P
    if (!ext.in_p(v)) continue;
    if (!approx_equal(space.alpha(space.lambda(v)), v, tol))
      fail("alpha(lambda(v)) != v for a sampled v in P");
  }
  return verdict;
}

}  // namespace cartankit
