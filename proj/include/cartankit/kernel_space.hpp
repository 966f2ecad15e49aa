#ifndef CARTANKIT_KERNEL_SPACE_HPP
#define CARTANKIT_KERNEL_SPACE_HPP

#include <memory>
#include <string>
#include <vector>

#include "cartankit/config.hpp"
#include "cartankit/extension.hpp"
#include "cartankit/star_algebra.hpp"

namespace cartankit {

/// D-valued reproducing kernel of the extension: K(t, s) = j(s& t ^ 1).
Matrix kernel_K(const ExtensionModel& ext, const Chart& t, const Chart& s);

/// The completed module space spanned by labels (s in S, b in an orthonormal
/// basis of N), with gram <k_s b, k_t c> = tr(b* j(s& t ^ 1) c): the
/// realization of the extension's module tensored over the trace
/// representation of N.  Null gram directions are quotiented away.
class KernelSpace {
public:
  static KernelSpace build(const ExtensionModel& ext);

  const ExtensionModel& extension() const { return *ext_; }
  std::size_t dim() const { return static_cast<std::size_t>(embed_.rows()); }
  std::size_t label_count() const { return labels_.size(); }

  /// The vector of label (s, b) in the orthonormalized space.
  CVector label_vector(std::size_t s_index, std::size_t b_index) const;

  /// lambda(v): partial isometry acting by k_s x -> k_{q(v)s} sigma(v, s) x.
  Matrix lambda(const Matrix& v) const;

  /// Q_s: k_t x -> k_{s^t} x; P = Q_1.
  Matrix q_projection(const Chart& s) const;
  Matrix p_projection() const;

  /// V : L^2(N) -> module space, x -> k_1 x (an isometry).
  const Matrix& isometry() const { return v_; }

  /// pi(n): left multiplication by n on L^2(N) coordinates.
  Matrix pi(const Matrix& n) const;

  /// alpha(x) = pi^{-1}(V* x V) as an element of N; throws when V* x V is not
  /// a left multiplication (x outside M_q).
  Matrix alpha(const Matrix& x) const;

  /// E_q(x) = alpha^{-1}(pi^{-1}(V* x V)): the expectation onto N_q.
  Matrix expectation_q(const Matrix& x) const;

  /// Unitaries of N whose span is N (at most 4 per basis element); the
  /// lambda images generate N_q.
  const std::vector<Matrix>& n_spanning_unitaries() const { return n_unitaries_; }

  double gram_min_eigenvalue() const { return gram_min_ev_; }

private:
  KernelSpace() = default;

  std::shared_ptr<const ExtensionModel> ext_;
  std::vector<std::pair<std::size_t, std::size_t>> labels_;  // (s index, b index)
  std::vector<Chart> s_elements_;
  std::vector<Matrix> n_basis_;
  Matrix embed_;        // B: rows = space dim r, cols = labels; B*B = gram
  Eigen::VectorXd kept_eigenvalues_;
  Matrix v_;            // r x dim(N)
  std::vector<Matrix> n_unitaries_;
  double gram_min_ev_ = 0.0;

  Matrix operator_from_label_map(const Matrix& c) const;
};

struct ReconstructedTriple {
  StarAlgebra m_q;
  StarAlgebra n_q;
  StarAlgebra d_q;
  std::vector<Matrix> d_atoms;  // lambda(j(e_i)) over atom sub-identities
  bool n_q_is_commutant = false;
  bool d_q_central = false;
  bool full = false;
};

/// M_q from lambda over section images and N-spanning unitaries; validates
/// the triple laws on the result.
ReconstructedTriple reconstruct_triple(const KernelSpace& space);

struct EquivalenceVerdict {
  bool equivalent = true;
  std::vector<std::string> failures;
};

/// Equivalence of the original extension with the one attached to the
/// reconstructed triple: chart action of the reconstructed normalizers
/// matches S, alpha is a *-isomorphism N_q -> N carrying D_q onto D, and the
/// embedding squares commute on samples.
EquivalenceVerdict check_extension_equivalence(const KernelSpace& space,
                                               const ReconstructedTriple& rec,
                                               Rng& rng, int samples = 25);

}  // namespace cartankit

#endif
