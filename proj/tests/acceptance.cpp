// Acceptance gate: one pass/fail line per criterion, non-zero exit on any
// failure.  Run through ctest or directly.
#include <algorithm>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cartankit/bimodule.hpp"
#include "cartankit/config.hpp"
#include "cartankit/instance.hpp"
#include "cartankit/kernel_space.hpp"
#include "cartankit/paut.hpp"
#include "cartankit/suites.hpp"

using namespace cartankit;

namespace {

const std::string kInstances = CARTANKIT_INSTANCE_DIR;

using Failures = std::vector<std::string>;

void expect(bool ok, const std::string& what, Failures& failures) {
  if (!ok) failures.push_back(what);
}

BuiltInstance load(const std::string& name) {
  BuiltInstance built = build_instance(InstanceSpec::load(kInstances + "/" + name + ".json"));
  if (!built.usable() && !built.spec.expect.negative())
    throw std::runtime_error(name + " did not build");
  return built;
}

// ---------------------------------------------------------------- criterion 1
void extension_round_trip(Failures& failures) {
  for (const std::string& name :
       {"m4_two_atoms", "m2_diag", "m2m3_center", "m6_three_cycle"}) {
    BuiltInstance built = load(name);
    const ExtensionModel& ext = *built.extension;
    Rng rng(built.spec.seed);

    KernelSpace space = KernelSpace::build(ext);
    ReconstructedTriple rec = reconstruct_triple(space);
    EquivalenceVerdict verdict = check_extension_equivalence(space, rec, rng);
    expect(verdict.equivalent, std::string(name) + ": reconstruction verdict",
           failures);
    for (const std::string& f : verdict.failures)
      failures.push_back(std::string(name) + ": " + f);

    // the verdict must survive a sign-perturbed section
    const CartanTripleModel& t = ext.triple();
    int fi = -1, fj = -1;
    for (int i = 0; i < t.atom_count() && fi < 0; ++i)
      for (int j = i + 1; j < t.atom_count() && fi < 0; ++j)
        if (projections_equivalent(t.atom_projections()[i],
                                   t.atom_projections()[j], t.m_algebra())) {
          fi = i;
          fj = j;
        }
    if (fi >= 0) {
      KernelSpace space2 = KernelSpace::build(ext.with_flipped_isometry(fj, fi));
      ReconstructedTriple rec2 = reconstruct_triple(space2);
      Rng rng2(built.spec.seed);
      expect(check_extension_equivalence(space2, rec2, rng2).equivalent,
             std::string(name) + ": perturbed-section verdict", failures);
    }
  }
}

// ---------------------------------------------------------------- criterion 2
void spectral_theorem(Failures& failures) {
  BuiltInstance built = load("m4_two_atoms");
  const ExtensionModel& ext = *built.extension;
  const InverseMonoid& s = ext.monoid();

  // brute-force oracle over all 2^7 subsets of I_2
  std::set<std::vector<Chart>> oracle;
  const auto& el = s.elements();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << el.size()); ++mask) {
    std::vector<Chart> subset;
    for (std::size_t i = 0; i < el.size(); ++i)
      if (mask >> i & 1) subset.push_back(el[i]);
    auto member = [&](const Chart& c) {
      return std::find(subset.begin(), subset.end(), c) != subset.end();
    };
    bool good = member(Chart(2));
    for (const Chart& a : subset) {
      for (const Chart& b : el)
        if (natural_leq(b, a) && !member(b)) good = false;
      for (const Chart& b : subset)
        if (orthogonal(a, b)) {
          const Chart pair[] = {a, b};
          auto j = join(pair, 2);
          if (!j || !member(*j)) good = false;
        }
    }
    if (good) {
      std::sort(subset.begin(), subset.end());
      oracle.insert(subset);
    }
  }
  auto enumerated = s.enumerate_spectral_sets();
  std::set<std::vector<Chart>> got(enumerated.begin(), enumerated.end());
  expect(got == oracle, "m4: enumerated spectral sets equal the subset-filter "
                        "oracle", failures);

  for (const auto& charts : enumerated) {
    SpectralSet a = SpectralSet::validate(s, charts);
    if (!(theta(ext, psi(ext, a)) == a)) {
      expect(false, "m4: theta(psi(A)) != A", failures);
      break;
    }
  }

  Rng rng(built.spec.seed);
  for (int k = 0; k < 200; ++k) {
    std::vector<Matrix> gens;
    std::size_t count = 1 + rng.pick(2);
    for (std::size_t g = 0; g < count; ++g) {
      Matrix x(4, 4);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) x(r, c) = Complex(rng.gaussian(), rng.gaussian());
      gens.push_back(ext.triple().m_algebra().space().project(x));
    }
    Bimodule b = bimodule_closure(ext.triple(), gens);
    if (!psi(ext, theta(ext, b)).equals(b)) {
      expect(false, "m4: psi(theta(B)) != B at random bimodule " + std::to_string(k),
             failures);
      break;
    }
  }
}

// ---------------------------------------------------------------- criterion 3
void galois_counts(Failures& failures) {
  {
    BuiltInstance built = load("m4_two_atoms");
    GaloisResult g = galois_correspondence(*built.extension);
    expect(g.pairs.size() == 2, "m4: exactly 2 Cartan submonoids", failures);
    expect(g.independent_algebra_count == 2,
           "m4: exactly 2 intermediate algebras by brute force", failures);
    expect(g.bijection_verified, "m4: the two routes biject via theta", failures);
  }
  {
    BuiltInstance built = load("m3_diag");  // the three-atom Cartan pair
    GaloisResult g = galois_correspondence(*built.extension);
    expect(g.pairs.size() == g.independent_algebra_count,
           "m3_diag: both routes agree on the count", failures);
    expect(g.pairs.size() == 5, "m3_diag: five intermediate algebras", failures);
    expect(g.bijection_verified, "m3_diag: the two routes biject via theta",
           failures);
  }
}

// ---------------------------------------------------------------- criterion 4
void expectation_laws(Failures& failures) {
  for (const std::string& name :
       {"m4_two_atoms", "m2_diag", "m2m3_center", "m6_three_cycle"}) {
    BuiltInstance built = load(name);
    const ExtensionModel& ext = *built.extension;
    const CartanTripleModel& t = ext.triple();
    Rng rng(built.spec.seed);
    KernelSpace space = KernelSpace::build(ext);
    const double tol = 1e-8;

    for (int i = 0; i < 100; ++i) {
      Matrix v = random_normalizer(ext, rng);
      Chart qv = ext.quotient(v);
      // E(v) = v j(q(v) ^ 1)
      if (!approx_equal(t.expectation(v), ext.fixed_part(v), tol)) {
        expect(false, name + ": E(v) != v j(q(v)^1) at sample " + std::to_string(i),
               failures);
        break;
      }
      // square-zero splitting
      FrolikParts parts = ext.frolik_decomposition(v);
      Matrix sum = parts.fixed;
      bool ok = approx_equal(t.expectation(v), Matrix(v * parts.fixed), tol);
      for (int k = 0; k < 3; ++k) {
        sum += parts.moved[k];
        Matrix ve = v * parts.moved[k];
        if (!approx_zero(Matrix(ve * ve), tol)) ok = false;
        for (int l = k + 1; l < 3; ++l)
          if (!approx_zero(Matrix(parts.moved[k] * parts.moved[l]), tol)) ok = false;
        if (!approx_zero(Matrix(parts.fixed * parts.moved[k]), tol)) ok = false;
      }
      if (!approx_equal(sum, Matrix(v.adjoint() * v), tol)) ok = false;
      for (int a = 0; a < t.atom_count(); ++a)  // maximality of the fixed part
        if (qv.defined(a) && qv.image(a) == a &&
            approx_zero(Matrix(parts.fixed * t.atom_projections()[a]), tol))
          ok = false;
      if (!ok) {
        expect(false, name + ": square-zero splitting fails at sample " +
                          std::to_string(i), failures);
        break;
      }
      // E_q(lambda(v)) = lambda(Delta(v))
      if (!approx_equal(space.expectation_q(space.lambda(v)),
                        space.lambda(ext.fixed_part(v)), tol)) {
        expect(false, name + ": E_q(lambda(v)) != lambda(Delta(v)) at sample " +
                          std::to_string(i), failures);
        break;
      }
    }
  }
}

// ---------------------------------------------------------------- criterion 5
void finite_expansions(Failures& failures) {
  for (const std::string& name :
       {"m4_two_atoms", "m2_diag", "m2m3_center", "m6_three_cycle"}) {
    BuiltInstance built = load(name);
    const ExtensionModel& ext = *built.extension;
    const CartanTripleModel& t = ext.triple();
    Rng rng(built.spec.seed + 1);

    for (int i = 0; i < 100; ++i) {
      Matrix x = zero(t.ambient_dim());
      for (const Matrix& b : t.m_algebra().space().basis())
        x += Complex(rng.gaussian(), rng.gaussian()) * b;
      double residual = frob(Matrix(x - ext.fourier_resum(ext.fourier_terms(x))));
      if (residual > 1e-8 * std::max(1.0, frob(x))) {
        expect(false, name + ": expansion residual " + std::to_string(residual),
               failures);
        break;
      }
    }
    for (int i = 0; i < 100; ++i) {
      std::vector<Matrix> witnesses;
      Matrix y = zero(t.ambient_dim());
      for (int w = 0; w < 3; ++w) {
        witnesses.push_back(random_normalizer(ext, rng));
        y += Complex(rng.gaussian(), rng.gaussian()) * witnesses.back();
      }
      RightonResult r = ext.righton_decompose(y, witnesses);
      if (r.residual > 1e-8 * std::max(1.0, frob(y))) {
        expect(false, name + ": witness decomposition residual " +
                          std::to_string(r.residual), failures);
        break;
      }
    }
  }
}

// ---------------------------------------------------------------- criterion 6
void crossed_criterion(Failures& failures) {
  {
    BuiltInstance built = load("z2_swap_crossed");
    CrossedVerdict v = crossed_cartan_verdict(*built.crossed->action);
    expect(v.direct_cartan, "z2_swap_crossed: full Cartan triple", failures);
    expect(v.exam.full, "z2_swap_crossed: fullness", failures);
    expect(v.predicted_cartan, "z2_swap_crossed: properly-outer prediction",
           failures);
    expect(v.agree, "z2_swap_crossed: routes agree", failures);
  }
  {
    BuiltInstance built = load("m2_inner_action");
    CrossedVerdict v = crossed_cartan_verdict(*built.crossed->action);
    expect(!v.direct_cartan, "m2_inner_action: not a Cartan triple", failures);
    expect(!v.predicted_cartan, "m2_inner_action: predictor agrees", failures);
    expect(v.agree, "m2_inner_action: routes agree", failures);
  }
}

// ---------------------------------------------------------------- criterion 7
void fulman_criterion(Failures& failures) {
  BuiltInstance built = load("z2_swap_crossed");
  const ExtensionModel& ext = *built.extension;
  expect(ext.monoid().size() == 7, "z2_swap_crossed: |S| = 7", failures);
  FulmanResult r = fulman_lift(ext);
  expect(r.condition_holds,
         "z2_swap_crossed: j(st)* j(s) j(t) lies in D for all 49 pairs",
         failures);
  expect(r.lift_emitted && r.homomorphism_ok,
         "z2_swap_crossed: the lift is a homomorphism", failures);
  expect(r.projects_to_theta, "z2_swap_crossed: pi(alpha(s)) = theta(s)",
         failures);
}

// ---------------------------------------------------------------- criterion 8
void fullness_validator(Failures& failures) {
  for (const std::string& name : {"m4_two_atoms", "m2_diag", "m3_diag",
                                  "m2m3_center", "m6_three_cycle"}) {
    BuiltInstance built = load(name);
    expect(built.usable(), name + ": accepted by the validator", failures);
    if (built.usable()) {
      expect(built.triple->is_full(), name + ": full", failures);
      TripleExam exam = CartanTripleModel::examine(
          built.triple->m_algebra(), built.triple->atom_projections(),
          &built.triple->n_algebra());
      expect(exam.full && exam.regular, name + ": examine agrees", failures);
    }
  }
  BuiltInstance bad = load("m3_rank_mismatch");
  expect(!bad.usable(), "m3_rank_mismatch: rejected", failures);
  expect(bad.rejection.has_value() &&
             bad.rejection->defect == TripleDefect::not_regular,
         "m3_rank_mismatch: regularity diagnostic", failures);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* label;
    std::function<void(Failures&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "extension round trip with perturbed sections", extension_round_trip},
      {2, "spectral theorem against the subset-filter oracle", spectral_theorem},
      {3, "intermediate-algebra counts by two independent routes", galois_counts},
      {4, "conditional-expectation laws on 100 seeded normalizers",
       expectation_laws},
      {5, "exact finite expansions (atom family and witnesses)",
       finite_expansions},
      {6, "crossed-product criterion on both verdict routes", crossed_criterion},
      {7, "section lifting condition and emitted lift", fulman_criterion},
      {8, "finite-dimensional fullness validator", fullness_validator},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Failures failures;
    try {
      c.run(failures);
    } catch (const std::exception& e) {
      failures.push_back(std::string("exception: ") + e.what());
    }
    std::printf("CRITERION %d: %s - %s\n", c.id,
                failures.empty() ? "PASS" : "FAIL", c.label);
    for (const std::string& f : failures) std::printf("    %s\n", f.c_str());
    failed += !failures.empty();
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
