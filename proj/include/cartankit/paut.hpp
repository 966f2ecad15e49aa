#ifndef CARTANKIT_PAUT_HPP
#define CARTANKIT_PAUT_HPP

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cartankit/extension.hpp"
#include "cartankit/star_algebra.hpp"

namespace cartankit {

/// A partial automorphism (e, alpha, f) of the pair (N, D): projections
/// e, f in D and a *-isomorphism of the corner f N onto e N carrying f D
/// onto e D.  The zero element has e = f = 0.
class PartialAutomorphism {
public:
  static PartialAutomorphism make(std::shared_ptr<const StarAlgebra> n, Matrix e,
                                  Matrix f,
                                  const std::function<Matrix(const Matrix&)>& map);
  static PartialAutomorphism zero(std::shared_ptr<const StarAlgebra> n);
  static PartialAutomorphism idempotent(std::shared_ptr<const StarAlgebra> n,
                                        const Matrix& e);

  const Matrix& range_projection() const { return e_; }
  const Matrix& source_projection() const { return f_; }
  bool is_zero() const;
  bool is_idempotent_element() const;

  /// alpha(f x): defined on the source corner, kills the complement.
  Matrix apply(const Matrix& x) const;

  PartialAutomorphism inverse() const;
  /// Restriction to the sub-corner d (meet with the idempotent on d).
  PartialAutomorphism restrict(const Matrix& d) const;

  bool equal(const PartialAutomorphism& o) const;
  /// Munn relation: same corners and the same action on f D.
  bool munn_related(const PartialAutomorphism& o,
                    const std::vector<Matrix>& d_basis) const;

  friend PartialAutomorphism compose(const PartialAutomorphism& a,
                                     const PartialAutomorphism& b);
  friend bool paut_compatible(const PartialAutomorphism& a,
                              const PartialAutomorphism& b);
  /// Join of a compatible family (blockwise sum over the Boolean refinement
  /// of the sources); nullopt for incompatible families.
  friend std::optional<PartialAutomorphism> paut_join(
      std::span<const PartialAutomorphism> family);

  const StarAlgebra& algebra() const { return *n_; }

private:
  PartialAutomorphism(std::shared_ptr<const StarAlgebra> n, Matrix e, Matrix f)
      : n_(std::move(n)), e_(std::move(e)), f_(std::move(f)) {}
  /// Builds the coefficient matrix without the corner-law validation; used
  /// by the semigroup operations, whose outputs satisfy the laws by
  /// construction.
  static PartialAutomorphism make_trusted(
      std::shared_ptr<const StarAlgebra> n, Matrix e, Matrix f,
      const std::function<Matrix(const Matrix&)>& map);

  std::shared_ptr<const StarAlgebra> n_;
  Matrix e_, f_;
  Matrix coeff_;  // action on basis coordinates; zero off the source corner
};

PartialAutomorphism compose(const PartialAutomorphism& a,
                            const PartialAutomorphism& b);
bool paut_compatible(const PartialAutomorphism& a, const PartialAutomorphism& b);
std::optional<PartialAutomorphism> paut_join(
    std::span<const PartialAutomorphism> family);

/// theta(s) = [j(s s&), ad_{j(s)}, j(s& s)]: the canonical class
/// representative in the fundamental quotient of paut(N, D).
PartialAutomorphism theta_representative(const ExtensionModel& ext, const Chart& s);

struct FulmanResult {
  bool condition_holds = true;     // j(st)* j(s) j(t) in D for all pairs
  std::vector<std::pair<Chart, Chart>> condition_failures;
  bool lift_emitted = false;
  bool homomorphism_ok = false;    // alpha(st) = alpha(s) alpha(t) exactly
  bool projects_to_theta = false;  // pi(alpha(s)) = theta(s)
};

/// Tests the sufficient lifting condition and, when it holds, emits
/// alpha(s) = (j(s s&), ad_{j(s)}, j(s& s)) and verifies it is a semigroup
/// homomorphism lifting theta.  Failure of the condition is reported as
/// inconclusive, never as nonexistence.
FulmanResult fulman_lift(const ExtensionModel& ext);

struct RegularizerVerdict {
  bool kernel_ok = true;       // generators inside U(N) act trivially
  bool density_ok = true;      // span of the generated group is all of M
  bool fixed_point_ok = true;  // alpha_u trivial on N p for the fixed p in D
  bool covariance_ok = true;   // alpha_u(d) = u d u*
  std::vector<std::string> failures;
  bool all() const {
    return kernel_ok && density_ok && fixed_point_ok && covariance_ok;
  }
};

/// Checks the regularizer clauses for a unitary generating set R and its
/// automorphism assignment.
RegularizerVerdict regularizer_check(
    const ExtensionModel& ext, const std::vector<Matrix>& r_generators,
    const std::vector<std::function<Matrix(const Matrix&)>>& automorphisms);

}  // namespace cartankit

#endif
