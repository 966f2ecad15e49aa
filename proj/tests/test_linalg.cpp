#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <set>

#include "cartankit/config.hpp"
#include "cartankit/star_algebra.hpp"

using namespace cartankit;

namespace {

Matrix unit_matrix(int n, int r, int c) {
  Matrix m = zero(n);
  m(r, c) = 1.0;
  return m;
}

// Oracle span tracker, independent of Subspace: stacks vectorizations and
// takes the rank through column-pivoted QR.
struct OracleSpan {
  std::vector<CVector> rows;
  void add(const Matrix& m) { rows.push_back(vectorize(m)); }
  Eigen::Index rank() const {
    if (rows.empty()) return 0;
    Matrix stacked(static_cast<Eigen::Index>(rows.size()), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      stacked.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    Eigen::ColPivHouseholderQR<Matrix> qr(stacked);
    qr.setThreshold(1e-9);
    return qr.rank();
  }
};

// Oracle closure by repeated multiplication, tracking dimension only.
Eigen::Index closure_dimension_oracle(std::vector<Matrix> gens, int n) {
  std::vector<Matrix> basis{identity(n)};
  for (const Matrix& g : gens) {
    basis.push_back(g);
    basis.push_back(g.adjoint());
  }
  OracleSpan span;
  for (const Matrix& b : basis) span.add(b);
  Eigen::Index dim = span.rank();
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Matrix> next = basis;
    for (const Matrix& a : basis)
      for (const Matrix& b : basis) next.push_back(a * b);
    OracleSpan bigger;
    for (const Matrix& m : next) bigger.add(m);
    if (bigger.rank() > dim) {
      dim = bigger.rank();
      basis = std::move(next);
      grew = true;
    }
  }
  return dim;
}

Matrix random_matrix(int n, Rng& rng) {
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = Complex(rng.gaussian(), rng.gaussian());
  return m;
}

}  // namespace

TEST_CASE("generated algebra matches the closure oracle") {
  // diagonal idempotent generates {1, E11}
  StarAlgebra a = StarAlgebra::generated({unit_matrix(2, 0, 0)}, 2);
  CHECK(a.dim() == 2);
  CHECK(a.dim() == static_cast<std::size_t>(
                       closure_dimension_oracle({unit_matrix(2, 0, 0)}, 2)));

  // a single off-diagonal matrix unit generates all of M2
  StarAlgebra b = StarAlgebra::generated({unit_matrix(2, 0, 1)}, 2);
  CHECK(b.dim() == 4);
  CHECK(b.dim() == static_cast<std::size_t>(
                       closure_dimension_oracle({unit_matrix(2, 0, 1)}, 2)));

  // the empty generating set gives the scalars
  StarAlgebra c = StarAlgebra::generated({}, 3);
  CHECK(c.dim() == 1);
  CHECK(c.contains(identity(3)));

  CHECK_THROWS_AS(StarAlgebra::generated({unit_matrix(2, 0, 0)}, 3),
                  std::invalid_argument);
}

TEST_CASE("generated algebra is idempotent on its own basis") {
  StarAlgebra a = StarAlgebra::generated(
      {unit_matrix(4, 0, 1), unit_matrix(4, 2, 2)}, 4);
  StarAlgebra again = StarAlgebra::generated(a.space().basis(), 4);
  CHECK(a.space().equals(again.space()));
}

TEST_CASE("commutant against the stacked null-space oracle") {
  // span{E11+E22, E33+E44} inside M4 has commutant M2 (+) M2
  Matrix p = unit_matrix(4, 0, 0) + unit_matrix(4, 1, 1);
  Matrix q = unit_matrix(4, 2, 2) + unit_matrix(4, 3, 3);
  StarAlgebra d = StarAlgebra::generated({p, q}, 4);
  StarAlgebra dc = commutant(d);
  CHECK(dc.dim() == 8);

  // oracle: assemble the coordinate constraints by hand and count the kernel
  Eigen::Index oracle_dim;
  {
    const auto& basis = d.space().basis();
    Matrix constraints(static_cast<Eigen::Index>(basis.size()) * 16, 16);
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (int col = 0; col < 16; ++col) {
        Matrix e = unit_matrix(4, col % 4, col / 4);
        constraints.block(static_cast<Eigen::Index>(k) * 16, col, 16, 1) =
            vectorize(Matrix(e * basis[k] - basis[k] * e));
      }
    Eigen::ColPivHouseholderQR<Matrix> qr(constraints);
    qr.setThreshold(1e-9);
    oracle_dim = 16 - qr.rank();
  }
  CHECK(static_cast<Eigen::Index>(dc.dim()) == oracle_dim);

  // everything commutes with the scalars
  CHECK(commutant(StarAlgebra::generated({}, 3)).dim() == 9);
}

TEST_CASE("double commutant recovers random unital *-subalgebras of M4") {
  Rng rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<Matrix> gens;
    int count = 1 + static_cast<int>(rng.pick(2));
    for (int i = 0; i < count; ++i) {
      Matrix x = random_matrix(4, rng);
      gens.push_back(x + x.adjoint());
    }
    StarAlgebra a = StarAlgebra::generated(gens, 4);
    StarAlgebra dc = commutant(commutant(a));
    CHECK(dc.space().equals(a.space()));
  }
}

TEST_CASE("projection equivalence by central rank vectors") {
  StarAlgebra m4 = StarAlgebra::generated(
      {unit_matrix(4, 0, 1), unit_matrix(4, 1, 2), unit_matrix(4, 2, 3)}, 4);
  Matrix p = unit_matrix(4, 0, 0) + unit_matrix(4, 1, 1);
  Matrix q = unit_matrix(4, 2, 2) + unit_matrix(4, 3, 3);
  CHECK(projections_equivalent(p, q, m4));  // equal ranks in a factor
  CHECK(projections_equivalent(p, p, m4));  // reflexive with identity witness

  // M2 (+) M3: the block units have rank vectors (2,0) and (0,3)
  std::vector<Matrix> gens;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) gens.push_back(unit_matrix(5, r, c));
  for (int r = 2; r < 5; ++r)
    for (int c = 2; c < 5; ++c) gens.push_back(unit_matrix(5, r, c));
  StarAlgebra m2m3 = StarAlgebra::generated(gens, 5);
  Matrix z1 = unit_matrix(5, 0, 0) + unit_matrix(5, 1, 1);
  Matrix z2 = unit_matrix(5, 2, 2) + unit_matrix(5, 3, 3) + unit_matrix(5, 4, 4);
  CHECK_FALSE(projections_equivalent(z1, z2, m2m3));

  CHECK_THROWS_AS(projections_equivalent(unit_matrix(4, 0, 1), p, m4),
                  std::invalid_argument);
}

TEST_CASE("projection equivalence is an equivalence relation") {
  StarAlgebra m4 = StarAlgebra::generated(
      {unit_matrix(4, 0, 1), unit_matrix(4, 1, 2), unit_matrix(4, 2, 3)}, 4);
  std::vector<Matrix> projections;
  for (int r = 0; r < 4; ++r) projections.push_back(unit_matrix(4, r, r));
  projections.push_back(unit_matrix(4, 0, 0) + unit_matrix(4, 2, 2));
  for (const Matrix& a : projections) {
    CHECK(projections_equivalent(a, a, m4));
    for (const Matrix& b : projections) {
      CHECK(projections_equivalent(a, b, m4) == projections_equivalent(b, a, m4));
      for (const Matrix& c : projections)
        if (projections_equivalent(a, b, m4) && projections_equivalent(b, c, m4))
          CHECK(projections_equivalent(a, c, m4));
    }
  }
}

TEST_CASE("unitary span decomposition") {
  StarAlgebra m2 = StarAlgebra::generated({unit_matrix(2, 0, 1)}, 2);

  // an already unitary input returns itself
  Matrix u0 = zero(2);
  u0(0, 1) = 1.0;
  u0(1, 0) = 1.0;
  auto terms = unitary_span_decomposition(u0, m2);
  REQUIRE(terms.size() == 1);
  CHECK(approx_equal(terms[0].second, u0, 1e-12));
  CHECK(terms[0].first == Complex(1.0));

  CHECK(unitary_span_decomposition(zero(2), m2).empty());

  // x = E11: the Hermitian branch gives u = E11 + i E22
  auto e11_terms = unitary_span_decomposition(unit_matrix(2, 0, 0), m2);
  REQUIRE(e11_terms.size() == 2);
  Matrix expected_u = unit_matrix(2, 0, 0) + Complex(0, 1) * unit_matrix(2, 1, 1);
  CHECK(approx_equal(e11_terms[0].second, expected_u, 1e-10));
  Matrix resum = zero(2);
  for (auto& [c, u] : e11_terms) resum += c * u;
  CHECK(approx_equal(resum, unit_matrix(2, 0, 0), 1e-10));

  // random elements: at most 4 unitaries, resum within 10 tol
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix x = random_matrix(2, rng);
    auto t = unitary_span_decomposition(x, m2);
    CHECK(t.size() <= 4);
    Matrix sum = zero(2);
    for (auto& [c, u] : t) {
      CHECK(is_unitary(u, 1e-9));
      CHECK(m2.contains(u));
      sum += c * u;
    }
    CHECK(frob(Matrix(sum - x)) <= 10 * tolerance() * std::max(1.0, frob(x)));
  }

  CHECK_THROWS_AS(
      unitary_span_decomposition(unit_matrix(3, 0, 1),
                                 StarAlgebra::generated({}, 3)),
      std::invalid_argument);
}

TEST_CASE("corner algebras decompose through unitaries of the corner") {
  // subunit case: ambient unit = E11 + E22 inside M3
  Matrix p = unit_matrix(3, 0, 0) + unit_matrix(3, 1, 1);
  StarAlgebra corner = StarAlgebra::generated({unit_matrix(3, 0, 1)}, 3, p);
  Matrix x = unit_matrix(3, 0, 0);  // a projection strictly inside the corner
  auto t = unitary_span_decomposition(x, corner);
  Matrix sum = zero(3);
  for (auto& [c, u] : t) {
    sum += c * u;
    CHECK(approx_equal(Matrix(u.adjoint() * u), p, 1e-9));  // unitary in pNp
    CHECK(corner.contains(u));
  }
  CHECK(approx_equal(sum, x, 1e-9));
}

TEST_CASE("minimal central projections of a conjugated block algebra") {
  // M2 (+) M3 (+) M2 conjugated by a random unitary: the three block units
  // survive as the minimal central projections, with ranks 2, 3, 2
  const int n = 7;
  std::vector<Matrix> gens;
  int offset = 0;
  for (int size : {2, 3, 2}) {
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c) gens.push_back(unit_matrix(n, offset + r, offset + c));
    offset += size;
  }
  Rng rng(83);
  Matrix x = random_matrix(n, rng);
  Matrix h = x + x.adjoint();
  HermitianEigen eig = hermitian_eigen(h);
  Matrix u = eig.vectors;  // a Haar-ish unitary
  for (Matrix& g : gens) g = u * g * u.adjoint();
  StarAlgebra a = StarAlgebra::generated(gens, n);
  CHECK(a.dim() == 17);
  auto centrals = a.minimal_central_projections();
  REQUIRE(centrals.size() == 3);
  std::multiset<int> ranks;
  Matrix sum = zero(n);
  for (const Matrix& z : centrals) {
    CHECK(is_projection(z, 1e-8));
    CHECK(a.contains(z));
    ranks.insert(projection_rank(z));
    sum += z;
  }
  CHECK(ranks == std::multiset<int>({2, 2, 3}));
  CHECK(approx_equal(sum, identity(n), 1e-8));
}

TEST_CASE("membership in a subspace is idempotent") {
  Rng rng(3);
  std::vector<Matrix> gens{random_matrix(3, rng), random_matrix(3, rng)};
  Subspace s = Subspace::span_of(gens, 3);
  for (const Matrix& g : gens) {
    CHECK(s.contains(g));
    CHECK(approx_equal(s.project(s.project(g)), s.project(g), 1e-12));
  }
  CHECK_FALSE(Subspace::span_of({identity(3)}, 3).contains(unit_matrix(3, 0, 1)));
}

TEST_CASE("hermitian eigendecomposition is deterministic and ordered") {
  Rng rng(17);
  Matrix x = random_matrix(4, rng);
  Matrix h = x + x.adjoint();
  HermitianEigen a = hermitian_eigen(h);
  HermitianEigen b = hermitian_eigen(h);
  CHECK(frob(Matrix(a.vectors - b.vectors)) == 0.0);
  for (Eigen::Index i = 1; i < a.values.size(); ++i)
    CHECK(a.values(i - 1) <= a.values(i) + 1e-14);
  CHECK(approx_equal(
      Matrix(a.vectors * a.values.asDiagonal() * a.vectors.adjoint()), h, 1e-10));
}

TEST_CASE("projection and partial isometry predicates respect tolerances") {
  Matrix p = unit_matrix(3, 0, 0);
  CHECK(is_projection(p, 1e-9));
  Matrix almost = p;
  almost(0, 0) += 1e-5;
  CHECK_FALSE(is_projection(almost, 1e-9));
  Matrix v = unit_matrix(3, 0, 1);
  CHECK(is_partial_isometry(v, 1e-9));
  CHECK_FALSE(is_partial_isometry(Matrix(2.0 * v), 1e-9));
}
