#ifndef CARTANKIT_SUITES_HPP
#define CARTANKIT_SUITES_HPP

#include <string>
#include <vector>

#include "cartankit/config.hpp"
#include "cartankit/instance.hpp"
#include "cartankit/report.hpp"

namespace cartankit {

/// Seeded sampling helpers shared by the suites and the test harnesses.
Matrix random_unitary_in(const StarAlgebra& algebra, Rng& rng);
Matrix random_normalizer(const ExtensionModel& ext, Rng& rng);  // j(s) u

const std::vector<std::string>& suite_names();  // without "all"
bool is_suite_name(const std::string& name);    // includes "all"

/// Runs one named suite.  "all" callers should use run_suites.
Report run_suite(const BuiltInstance& built, const std::string& suite);

/// Expands "all" into every suite in canonical order.
std::vector<Report> run_suites(const BuiltInstance& built, const std::string& name);

}  // namespace cartankit

#endif
