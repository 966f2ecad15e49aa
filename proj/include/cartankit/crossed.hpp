#ifndef CARTANKIT_CROSSED_HPP
#define CARTANKIT_CROSSED_HPP

#include <memory>
#include <string>
#include <vector>

#include "cartankit/cartan_triple.hpp"
#include "cartankit/extension.hpp"
#include "cartankit/star_algebra.hpp"

namespace cartankit {

/// A finite group by its multiplication table; index 0 is the identity.
struct FiniteGroup {
  static FiniteGroup from_table(std::vector<std::vector<int>> table);
  std::size_t order() const { return table.size(); }
  int product(int g, int h) const { return table[g][h]; }
  int inverse(int g) const { return inverse_[g]; }
  std::vector<std::vector<int>> table;
  std::vector<int> inverse_;
};

/// A finite group acting on a *-algebra by automorphisms, stored as linear
/// maps on the algebra's orthonormal basis and validated at ingestion.
class GroupAction {
public:
  static GroupAction from_unitaries(StarAlgebra n, FiniteGroup group,
                                    const std::vector<Matrix>& unitaries);
  static GroupAction from_basis_maps(StarAlgebra n, FiniteGroup group,
                                     std::vector<Matrix> coefficient_maps);

  const StarAlgebra& domain() const { return *n_; }
  const FiniteGroup& group() const { return group_; }
  Matrix apply(int g, const Matrix& x) const;

private:
  GroupAction(std::shared_ptr<const StarAlgebra> n, FiniteGroup group,
              std::vector<Matrix> maps)
      : n_(std::move(n)), group_(std::move(group)), maps_(std::move(maps)) {}
  void validate() const;

  std::shared_ptr<const StarAlgebra> n_;
  FiniteGroup group_;
  std::vector<Matrix> maps_;  // coefficient matrices over the basis of N
};

/// M = N x G realized on H (x) C^|G|: n acts blockwise by alpha_{h^-1}(n) and
/// u_g is the translation permutation.
struct CrossedProduct {
  StarAlgebra algebra;                 // M
  StarAlgebra n_embedded;
  std::vector<Matrix> unitaries;       // u_g
  std::vector<Matrix> d_atoms;         // embedded atoms of Z(N)
  std::shared_ptr<const GroupAction> action;

  Matrix embed(const Matrix& x) const;
  /// E_N(x): the g = e Fourier coefficient, embedded back into M.
  Matrix expectation_onto_n(const Matrix& x) const;
  /// x_g = E_N(x u_g*), returned as an element of the acted-on algebra.
  Matrix fourier_coefficient(const Matrix& x, int g) const;
  /// Largest projection of Z(N) fixed pointwise by alpha_g.
  Matrix fixed_central_projection(int g) const;
};

CrossedProduct build_crossed_product(const GroupAction& action);

/// Per non-identity group element: does y x = x alpha_g(y) for all y in
/// `restrict_to` force x = 0 (solved as a null space over the algebra)?
std::vector<bool> is_properly_outer(const GroupAction& action,
                                    const StarAlgebra& restrict_to);

struct CrossedVerdict {
  bool direct_cartan = false;     // triple axioms checked on (M, N, Z(N))
  bool predicted_cartan = false;  // properly-outer predictor on Z(N)
  bool agree = false;
  TripleExam exam;                // the direct route's evidence
  std::vector<bool> outer_on_center;
  std::vector<bool> outer_on_n;
  std::string diagnostic;
};

/// Both routes of the crossed-product criterion, with their agreement.
CrossedVerdict crossed_cartan_verdict(const GroupAction& action);

/// Extension of a crossed-product triple with the section routed through the
/// group unitaries (w = u_g q_i whenever ad u_g carries atom i to atom j).
ExtensionModel build_crossed_extension(const CrossedProduct& cp);

}  // namespace cartankit

#endif
