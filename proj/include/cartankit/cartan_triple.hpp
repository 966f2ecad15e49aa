#ifndef CARTANKIT_CARTAN_TRIPLE_HPP
#define CARTANKIT_CARTAN_TRIPLE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cartankit/chart.hpp"
#include "cartankit/matrix.hpp"
#include "cartankit/star_algebra.hpp"

namespace cartankit {

/// Block description of a multi-matrix ambient algebra: M is the direct sum
/// of full matrix blocks, atoms partition the coordinates and each atom lies
/// inside one block.
struct TripleSpec {
  std::vector<int> blocks;
  std::vector<std::vector<int>> atoms;
};

enum class TripleDefect {
  none,
  atoms_not_partition,
  atoms_cross_blocks,
  d_not_abelian,
  n_not_relative_commutant,
  expectation_failure,
  not_regular,
  not_full,
};

std::string to_string(TripleDefect d);

class TripleRejection : public std::runtime_error {
public:
  TripleRejection(TripleDefect defect, const std::string& detail)
      : std::runtime_error("triple rejected (" + to_string(defect) + "): " + detail),
        defect(defect),
        detail(detail) {}
  TripleDefect defect;
  std::string detail;
};

/// Structured groupoid-normalizer membership result: the chart of the
/// conjugation action on atoms, or the reason v fails to belong.
enum class GnReason {
  ok,
  not_partial_isometry,
  source_not_in_projd,
  range_not_in_projd,
  atom_image_not_atom,
};
struct GnResult {
  std::optional<Chart> chart;
  GnReason reason = GnReason::ok;
  explicit operator bool() const { return chart.has_value(); }
};

/// Non-throwing structural examination used by the crossed-product verdict;
/// `build` turns any defect into a TripleRejection.
struct TripleExam {
  bool atoms_partition = false;
  bool d_abelian = false;
  bool n_matches = false;   // supplied N equals the relative commutant of D
  bool regular = false;     // span GN(M, D) = M (corner-equivalence test)
  bool full = false;        // D = Z(N)
  bool expectation_ok = false;
  TripleDefect first_defect() const;
};

/// The model (M, N, D, E): ambient *-algebra M, diagonal atom projections
/// generating D, the relative commutant N = D^c inside M, and the
/// compression expectation E(x) = sum_i q_i x q_i onto N.
class CartanTripleModel {
public:
  /// Block-structured build: M = direct sum of full matrix blocks.
  static CartanTripleModel build(const TripleSpec& spec);
  /// General build: any unital *-subalgebra M with abelian atom projections.
  static CartanTripleModel build(StarAlgebra m, std::vector<Matrix> atom_projections);

  static TripleExam examine(const StarAlgebra& m,
                            const std::vector<Matrix>& atom_projections,
                            const StarAlgebra* n_expected = nullptr);

  const StarAlgebra& m_algebra() const { return m_; }
  const StarAlgebra& n_algebra() const { return n_; }
  const StarAlgebra& d_algebra() const { return d_; }
  const std::vector<Matrix>& atom_projections() const { return atoms_; }
  int atom_count() const { return static_cast<int>(atoms_.size()); }
  Eigen::Index ambient_dim() const { return m_.ambient_dim(); }
  bool is_full() const { return true; }     // enforced by the validator
  bool is_regular() const { return true; }  // enforced by the validator

  /// E(x) = sum_i q_i x q_i; the unique expectation of M onto D^c.
  Matrix expectation(const Matrix& x) const;

  /// Membership in GN(M, D) with the chart of the conjugation action.
  GnResult gn_membership(const Matrix& v) const;

  /// proj(D) helpers: which atoms sum to p (if any), and the converse.
  std::optional<std::uint64_t> projd_mask(const Matrix& p) const;
  Matrix projd(std::uint64_t mask) const;

private:
  CartanTripleModel(StarAlgebra m, StarAlgebra n, StarAlgebra d,
                    std::vector<Matrix> atoms)
      : m_(std::move(m)), n_(std::move(n)), d_(std::move(d)),
        atoms_(std::move(atoms)) {}

  StarAlgebra m_, n_, d_;
  std::vector<Matrix> atoms_;
};

}  // namespace cartankit

#endif
