#include "cartankit/bimodule.hpp"

#include <algorithm>
#include <set>

namespace cartankit {

Bimodule bimodule_closure(const CartanTripleModel& triple,
                          const std::vector<Matrix>& generators) {
  const Eigen::Index n = triple.ambient_dim();
  Subspace space(n);
  for (const Matrix& g : generators) {
    if (!triple.m_algebra().contains(g))
      throw std::invalid_argument("bimodule_closure: generator outside M");
    space.absorb(g);
  }
  const auto& nb = triple.n_algebra().space().basis();
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Matrix> snapshot = space.basis();
    for (const Matrix& x : snapshot)
      for (const Matrix& a : nb) {
        if (space.absorb(a * x)) grew = true;
        if (space.absorb(x * a)) grew = true;
      }
  }
  return Bimodule(std::move(space));
}

SpectralSet SpectralSet::validate(const InverseMonoid& s, std::vector<Chart> charts) {
  std::sort(charts.begin(), charts.end());
  charts.erase(std::unique(charts.begin(), charts.end()), charts.end());
  for (const Chart& c : charts)
    if (!s.contains(c))
      throw std::invalid_argument("SpectralSet: chart outside the monoid");
  if (!is_spectral_set(s, charts))
    throw std::invalid_argument("SpectralSet: subset fails the spectral-set "
                                "conditions");
  return SpectralSet(std::move(charts));
}

bool SpectralSet::contains(const Chart& c) const {
  return std::binary_search(charts_.begin(), charts_.end(), c);
}

SpectralSet theta(const ExtensionModel& ext, const Bimodule& b) {
  const InverseMonoid& s = ext.monoid();
  // s lies in Theta(B) iff j(a) in B for every atom restriction a <= s: the
  // set {n in N : j(s) n in B} is an ideal of the source corner, so it is a
  // full corner exactly when it contains each source atom.
  const std::vector<Chart> atoms = s.atoms();
  std::vector<Chart> in_theta;
  for (const Chart& c : s.elements()) {
    if (c.is_zero()) {
      in_theta.push_back(c);
      continue;
    }
    bool all = true;
    for (const Chart& a : atoms)
      if (natural_leq(a, c) && !b.contains(ext.section(a))) {
        all = false;
        break;
      }
    if (all) in_theta.push_back(c);
  }
  return SpectralSet::validate(s, std::move(in_theta));
}

Bimodule psi(const ExtensionModel& ext, const SpectralSet& a) {
  std::vector<Matrix> gens;
  for (const Chart& c : a.charts())
    if (!c.is_zero()) gens.push_back(ext.section(c));
  return bimodule_closure(ext.triple(), gens);
}

namespace {

std::string describe(const std::vector<Chart>& charts) {
  std::string out = "{";
  for (std::size_t i = 0; i < charts.size(); ++i) {
    if (i) out += ",";
    out += charts[i].to_string();
  }
  return out + "}";
}

Matrix random_element(const CartanTripleModel& t, Rng& rng) {
  const Eigen::Index n = t.ambient_dim();
  Matrix g(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      g(r, c) = Complex(rng.gaussian(), rng.gaussian());
  // project onto M so the generator is honest
  return t.m_algebra().space().project(g);
}

}  // namespace

SpectralTheoremReport verify_spectral_theorem(const ExtensionModel& ext, Rng& rng,
                                              int random_samples) {
  SpectralTheoremReport report;
  const InverseMonoid& s = ext.monoid();
  std::vector<std::vector<Chart>> all = s.enumerate_spectral_sets();
  report.spectral_set_count = all.size();

  std::vector<SpectralSet> sets;
  std::vector<Bimodule> images;
  for (const auto& charts : all) {
    SpectralSet a = SpectralSet::validate(s, charts);
    Bimodule b = psi(ext, a);
    SpectralSet back = theta(ext, b);
    if (!(back == a)) {
      report.passed = false;
      report.failures.push_back("theta(psi(A)) != A for A = " + describe(charts) +
                                ", got " + describe(back.charts()));
    }
    sets.push_back(a);
    images.push_back(std::move(b));
  }

  // inclusion preservation: A1 <= A2 <=> Psi(A1) <= Psi(A2)
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j) {
      bool set_leq = std::includes(sets[j].charts().begin(), sets[j].charts().end(),
                                   sets[i].charts().begin(), sets[i].charts().end());
      bool mod_leq = images[j].space().contains(images[i].space());
      if (set_leq != mod_leq) {
        report.passed = false;
        report.failures.push_back("inclusion mismatch between " +
                                  describe(sets[i].charts()) + " and " +
                                  describe(sets[j].charts()));
      }
    }

  // Psi(Theta(B)) = B for seeded random bimodules
  for (int k = 0; k < random_samples; ++k) {
    std::vector<Matrix> gens;
    std::size_t count = 1 + rng.pick(2);
    for (std::size_t g = 0; g < count; ++g)
      gens.push_back(random_element(ext.triple(), rng));
    Bimodule b = bimodule_closure(ext.triple(), gens);
    Bimodule back = psi(ext, theta(ext, b));
    ++report.random_bimodules_checked;
    if (!back.equals(b)) {
      report.passed = false;
      report.failures.push_back("psi(theta(B)) != B for random bimodule #" +
                                std::to_string(k) + " (dim " +
                                std::to_string(b.dim()) + " vs " +
                                std::to_string(back.dim()) + ")");
    }
  }
  return report;
}

GaloisResult galois_correspondence(const ExtensionModel& ext) {
  GaloisResult result;
  const InverseMonoid& s = ext.monoid();
  const CartanTripleModel& t = ext.triple();

  // route 1: Cartan submonoids mapped through Psi
  for (const InverseMonoid& sub : s.enumerate_cartan_submonoids()) {
    SpectralSet a = SpectralSet::validate(
        s, std::vector<Chart>(sub.elements().begin(), sub.elements().end()));
    Bimodule b = psi(ext, a);
    // the image must be a *-algebra containing N
    bool star_algebra = b.space().contains(t.n_algebra().space());
    for (const Matrix& x : b.space().basis()) {
      if (!b.contains(x.adjoint())) star_algebra = false;
      for (const Matrix& y : b.space().basis())
        if (!b.contains(x * y)) star_algebra = false;
    }
    if (!star_algebra) {
      result.failures.push_back("psi of submonoid of size " +
                                std::to_string(sub.size()) +
                                " is not a *-algebra over N");
    }
    result.pairs.push_back({sub, std::move(b)});
  }

  // route 2: brute force, generating algebras from N plus section images of
  // atom subsets
  const std::vector<Chart> atoms = s.atoms();
  if (atoms.size() > 20)
    throw CapExceeded("galois_correspondence", atoms.size(), 20);
  std::vector<Subspace> algebras;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms.size()); ++mask) {
    std::vector<Matrix> gens = t.n_algebra().space().basis();
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask >> i & 1) gens.push_back(ext.section(atoms[i]));
    StarAlgebra alg = StarAlgebra::generated(gens, t.ambient_dim());
    bool fresh = true;
    for (const Subspace& seen : algebras)
      if (seen.equals(alg.space())) {
        fresh = false;
        break;
      }
    if (fresh) algebras.push_back(alg.space());
  }
  result.independent_algebra_count = algebras.size();

  // the two routes must biject via Theta
  result.bijection_verified = algebras.size() == result.pairs.size();
  for (const Subspace& alg : algebras) {
    Bimodule b = bimodule_closure(t, alg.basis());
    SpectralSet support = theta(ext, b);
    std::size_t hits = 0;
    for (const GaloisPair& p : result.pairs) {
      std::vector<Chart> sub_charts(p.submonoid.elements().begin(),
                                    p.submonoid.elements().end());
      std::sort(sub_charts.begin(), sub_charts.end());
      if (support.charts() == sub_charts) ++hits;
    }
    if (hits != 1) {
      result.bijection_verified = false;
      result.failures.push_back("brute-force algebra of dim " +
                                std::to_string(alg.dim()) +
                                " matched " + std::to_string(hits) +
                                " submonoids via theta");
    }
  }
  return result;
}

}  // namespace cartankit
