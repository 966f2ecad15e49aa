#include "cartankit/star_algebra.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>

#include "cartankit/config.hpp"

namespace cartankit {

StarAlgebra StarAlgebra::generated(const std::vector<Matrix>& generators,
                                   Eigen::Index ambient_dim) {
  return generated(generators, ambient_dim, identity(ambient_dim));
}

StarAlgebra StarAlgebra::generated(const std::vector<Matrix>& generators,
                                   Eigen::Index ambient_dim, Matrix unit) {
  for (const Matrix& g : generators)
    if (g.rows() != ambient_dim || g.cols() != ambient_dim)
      throw std::invalid_argument("StarAlgebra::generated: non-square or "
                                  "mismatched generator");
  Subspace space(ambient_dim);
  space.absorb(unit);
  for (const Matrix& g : generators) {
    space.absorb(g);
    space.absorb(g.adjoint());
  }
  // span <- span + span*span until the dimension stabilizes.
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Matrix> snapshot = space.basis();
    for (const Matrix& a : snapshot)
      for (const Matrix& b : snapshot) {
        if (space.absorb(a * b)) grew = true;
      }
    for (const Matrix& a : snapshot)
      if (space.absorb(a.adjoint())) grew = true;
  }
  return StarAlgebra(std::move(space), std::move(unit));
}

StarAlgebra StarAlgebra::from_space(Subspace space, Matrix unit) {
  if (!space.contains(unit))
    throw std::invalid_argument("StarAlgebra::from_space: unit not in space");
  for (const Matrix& a : space.basis()) {
    if (!space.contains(a.adjoint()))
      throw std::invalid_argument("StarAlgebra::from_space: not *-closed");
    for (const Matrix& b : space.basis())
      if (!space.contains(a * b))
        throw std::invalid_argument("StarAlgebra::from_space: not closed "
                                    "under multiplication");
  }
  return StarAlgebra(std::move(space), std::move(unit));
}

void StarAlgebra::ensure_center() const {
  if (center_done_) return;
  StarAlgebra self(space_, unit_);
  StarAlgebra z = relative_commutant(self, self);
  center_basis_ = z.space().basis();

  // Refine {unit} by spectral projections of the Hermitian parts of every
  // center basis element; what remains is the minimal central decomposition.
  const double tol = tolerance();
  std::vector<Matrix> projs{unit_};
  for (const Matrix& z0 : center_basis_) {
    for (Matrix h : {Matrix((z0 + z0.adjoint()) / 2.0),
                     Matrix((z0 - z0.adjoint()) / Complex(0, 2.0))}) {
      if (approx_zero(h, tol)) continue;
      std::vector<Matrix> next;
      for (const Matrix& p : projs) {
        Matrix php = p * h * p;
        HermitianEigen eig = hermitian_eigen(php);
        double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
        double gap = 1e3 * tol * scale;
        Eigen::Index i = 0;
        const Eigen::Index n = eig.values.size();
        while (i < n) {
          Eigen::Index j = i;
          while (j + 1 < n && eig.values(j + 1) - eig.values(j) <= gap) ++j;
          Matrix q = Matrix::Zero(p.rows(), p.cols());
          for (Eigen::Index c = i; c <= j; ++c)
            q += eig.vectors.col(c) * eig.vectors.col(c).adjoint();
          q = p * q;  // spectral projection of h|_p inside range(p)
          if (projection_rank(q) > 0 && is_projection(q, 1e-7)) next.push_back(q);
          i = j + 1;
        }
      }
      if (!next.empty()) projs = next;
    }
  }
  central_projections_ = std::move(projs);
  center_done_ = true;
}

const std::vector<Matrix>& StarAlgebra::center_basis() const {
  ensure_center();
  return center_basis_;
}

const std::vector<Matrix>& StarAlgebra::minimal_central_projections() const {
  ensure_center();
  return central_projections_;
}

StarAlgebra commutant(const StarAlgebra& a) {
  const Eigen::Index n = a.ambient_dim();
  const Eigen::Index nn = n * n;
  const auto& basis = a.space().basis();
  Matrix constraints(static_cast<Eigen::Index>(basis.size()) * nn, nn);
  const Matrix eye = identity(n);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Matrix k = Eigen::kroneckerProduct(basis[j].transpose(), eye) -
               Eigen::kroneckerProduct(eye, basis[j]);
    constraints.middleRows(static_cast<Eigen::Index>(j) * nn, nn) = k;
  }
  std::vector<Matrix> gens;
  for (const CVector& v : null_space(constraints, tolerance()))
    gens.push_back(unvectorize(v, n, n));
  return StarAlgebra::generated(gens, n);
}

StarAlgebra relative_commutant(const StarAlgebra& a, const StarAlgebra& within) {
  if (a.ambient_dim() != within.ambient_dim())
    throw std::invalid_argument("relative_commutant: ambient mismatch");
  const Eigen::Index n = within.ambient_dim();
  const Eigen::Index nn = n * n;
  const auto& wb = within.space().basis();
  const auto& ab = a.space().basis();
  Matrix constraints(static_cast<Eigen::Index>(ab.size()) * nn,
                     static_cast<Eigen::Index>(wb.size()));
  for (std::size_t j = 0; j < ab.size(); ++j)
    for (std::size_t b = 0; b < wb.size(); ++b)
      constraints.block(static_cast<Eigen::Index>(j) * nn,
                        static_cast<Eigen::Index>(b), nn, 1) =
          vectorize(Matrix(wb[b] * ab[j] - ab[j] * wb[b]));
  std::vector<Matrix> gens;
  for (const CVector& c : null_space(constraints, tolerance())) {
    Matrix x = Matrix::Zero(n, n);
    for (std::size_t b = 0; b < wb.size(); ++b)
      x += c(static_cast<Eigen::Index>(b)) * wb[b];
    gens.push_back(x);
  }
  return StarAlgebra::generated(gens, n, within.unit());
}

bool projections_equivalent(const Matrix& p, const Matrix& q,
                            const StarAlgebra& ambient) {
  const double tol = tolerance();
  if (!is_projection(p, 10 * tol) || !is_projection(q, 10 * tol))
    throw std::invalid_argument("projections_equivalent: input is not a projection");
  if (!ambient.contains(p) || !ambient.contains(q))
    throw std::invalid_argument("projections_equivalent: projection outside algebra");
  for (const Matrix& z : ambient.minimal_central_projections())
    if (projection_rank(Matrix(z * p)) != projection_rank(Matrix(z * q)))
      return false;
  return true;
}

std::vector<std::pair<Complex, Matrix>> unitary_span_decomposition(
    const Matrix& x, const StarAlgebra& ambient) {
  const double tol = tolerance();
  if (!ambient.contains(x))
    throw std::invalid_argument("unitary_span_decomposition: x outside algebra");
  std::vector<std::pair<Complex, Matrix>> out;
  if (approx_zero(x, tol)) return out;
  const Matrix& unit = ambient.unit();
  if (approx_zero(Matrix(x.adjoint() * x - unit), 10 * tol) &&
      approx_zero(Matrix(x * x.adjoint() - unit), 10 * tol)) {
    out.emplace_back(1.0, x);
    return out;
  }
  Matrix h = (x + Matrix(x.adjoint())) / 2.0;
  Matrix k = (x - Matrix(x.adjoint())) / Complex(0.0, 2.0);
  for (auto& [part, phase] :
       {std::pair<Matrix, Complex>{h, 1.0}, std::pair<Matrix, Complex>{k, Complex(0, 1)}}) {
    double beta = hermitian_op_norm(part);
    if (beta <= tol) continue;
    Matrix scaled = part / beta;
    // u = h + i sqrt(1 - h^2) through one joint functional calculus on the
    // clustered spectrum, so u is exactly unitary on the unit's support and an
    // exact polynomial of h (hence inside the algebra even when the spectrum
    // touches +-1).  The zero cluster straddles the unit's kernel, where the
    // circle function must vanish instead of contributing i; compressing that
    // cluster by the unit handles both at once.
    HermitianEigen eig = hermitian_eigen(scaled);
    Matrix u = zero(x.rows());
    const double gap = 1e3 * tol;
    Eigen::Index i = 0;
    while (i < eig.values.size()) {
      Eigen::Index j = i;
      while (j + 1 < eig.values.size() && eig.values(j + 1) - eig.values(j) <= gap)
        ++j;
      Matrix cluster = zero(x.rows());
      for (Eigen::Index c = i; c <= j; ++c)
        cluster += eig.vectors.col(c) * eig.vectors.col(c).adjoint();
      double lambda = std::clamp(eig.values(i), -1.0, 1.0);
      if (std::abs(lambda) <= gap)
        u += Complex(0, 1) * (unit * cluster * unit);
      else
        u += Complex(lambda, std::sqrt(1.0 - lambda * lambda)) * cluster;
      i = j + 1;
    }
    out.emplace_back(phase * beta / 2.0, u);
    out.emplace_back(phase * beta / 2.0, Matrix(u.adjoint()));
  }
  return out;
}

}  // namespace cartankit
