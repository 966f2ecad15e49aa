#ifndef CARTANKIT_BIMODULE_HPP
#define CARTANKIT_BIMODULE_HPP

#include <optional>
#include <string>
#include <vector>

#include "cartankit/config.hpp"
#include "cartankit/extension.hpp"
#include "cartankit/subspace.hpp"

namespace cartankit {

/// A subspace of M closed under left/right multiplication by N.
class Bimodule {
public:
  const Subspace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  bool contains(const Matrix& x) const { return space_.contains(x); }
  bool equals(const Bimodule& o) const { return space_.equals(o.space_); }

private:
  friend Bimodule bimodule_closure(const CartanTripleModel&,
                                   const std::vector<Matrix>&);
  explicit Bimodule(Subspace s) : space_(std::move(s)) {}
  Subspace space_;
};

/// Smallest N-bimodule containing the generators: iterate span N.gen.N.
Bimodule bimodule_closure(const CartanTripleModel& triple,
                          const std::vector<Matrix>& generators);

/// A downward-closed, orthogonal-join-closed subset of S.
class SpectralSet {
public:
  static SpectralSet validate(const InverseMonoid& s, std::vector<Chart> charts);
  const std::vector<Chart>& charts() const { return charts_; }
  bool contains(const Chart& c) const;
  bool operator==(const SpectralSet& o) const { return charts_ == o.charts_; }

private:
  explicit SpectralSet(std::vector<Chart> sorted) : charts_(std::move(sorted)) {}
  std::vector<Chart> charts_;
};

/// Theta(B) = q(GN(B, D)): the support of B in S, computed per chart by the
/// linear corner test (every atom restriction of s must have its section
/// image inside B).
SpectralSet theta(const ExtensionModel& ext, const Bimodule& b);

/// Psi(A) = span{j(a) n : a in A, n in N}.
Bimodule psi(const ExtensionModel& ext, const SpectralSet& a);

struct SpectralTheoremReport {
  bool passed = true;
  std::size_t spectral_set_count = 0;
  std::size_t random_bimodules_checked = 0;
  std::vector<std::string> failures;  // counterexample payloads
};

/// Theta(Psi(A)) = A over every enumerated spectral set, Psi(Theta(B)) = B on
/// seeded random bimodules, and inclusion preservation spot checks.
SpectralTheoremReport verify_spectral_theorem(const ExtensionModel& ext, Rng& rng,
                                              int random_samples = 200);

struct GaloisPair {
  InverseMonoid submonoid;
  Bimodule algebra;  // Psi(T), verified to be a *-algebra containing N
};

struct GaloisResult {
  std::vector<GaloisPair> pairs;               // one per Cartan submonoid
  std::size_t independent_algebra_count = 0;   // brute-force route
  bool bijection_verified = false;
  std::vector<std::string> failures;
};

/// Enumerates Cartan submonoids, maps each through Psi, and independently
/// brute-forces the intermediate von Neumann algebras from N and section
/// images of atom charts; the two lists must biject via Theta.
GaloisResult galois_correspondence(const ExtensionModel& ext);

}  // namespace cartankit

#endif
