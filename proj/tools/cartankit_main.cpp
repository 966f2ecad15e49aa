#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "cartankit/bimodule.hpp"
#include "cartankit/config.hpp"
#include "cartankit/instance.hpp"
#include "cartankit/report.hpp"
#include "cartankit/suites.hpp"

namespace {

using namespace cartankit;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

void write_out(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << payload;
}

BuiltInstance load_and_build(const std::string& spec_path,
                             std::optional<std::uint64_t> seed,
                             std::optional<double> tol) {
  InstanceSpec spec = InstanceSpec::load(spec_path);
  if (seed) spec.seed = *seed;
  if (tol) spec.tol = *tol;
  return build_instance(spec);
}

int cmd_verify(const std::string& spec_path, const std::string& suite,
               std::optional<std::uint64_t> seed, std::optional<double> tol,
               const std::string& out_path, const std::string& format) {
  BuiltInstance built = load_and_build(spec_path, seed, tol);

  // an explicitly requested enumeration suite over the cap is a refusal
  if (suite != "all" && built.usable()) {
    bool capped = built.extension->monoid().size() > enumeration_cap();
    if (capped && (suite == "spectral" || suite == "galois")) {
      std::cerr << "refused: |S| = " << built.extension->monoid().size()
                << " exceeds the enumeration cap " << enumeration_cap()
                << " (raise caps.enumeration or CARTANKIT_CAP)\n";
      return kExitUsage;
    }
  }

  std::vector<Report> reports = run_suites(built, suite);
  for (const Report& r : reports) {
    std::cerr << r.to_console();
    std::cerr << "   (" << r.elapsed_ms << " ms)\n";
  }
  if (!out_path.empty()) {
    if (format == "csv")
      write_out(out_path, reports_to_csv(reports));
    else
      write_out(out_path, reports_to_json(reports).dump(2) + "\n");
  }
  std::size_t failures = 0;
  for (const Report& r : reports) failures += r.failures();
  std::cerr << (failures == 0 ? "PASS" : "FAIL") << " (" << failures
            << " failing checks)\n";
  return failures == 0 ? kExitOk : kExitVerificationFailure;
}

int cmd_enumerate(const std::string& spec_path, const std::string& what,
                  std::optional<std::uint64_t> seed, std::optional<double> tol) {
  BuiltInstance built = load_and_build(spec_path, seed, tol);
  if (!built.usable()) {
    std::cerr << "instance does not build a Cartan triple: "
              << (built.rejection ? built.rejection->what() : "unknown") << "\n";
    return kExitUsage;
  }
  const ExtensionModel& ext = *built.extension;
  std::ostringstream out;
  if (what == "atoms") {
    auto atoms = ext.monoid().atoms();
    for (const Chart& a : atoms) out << a.to_string() << "\n";
    out << "count: " << atoms.size() << "\n";
  } else if (what == "spectral-sets") {
    auto sets = ext.monoid().enumerate_spectral_sets();
    for (std::size_t i = 0; i < sets.size(); ++i) {
      out << "A" << i << " (n=" << sets[i].size() << "): {";
      for (std::size_t j = 0; j < sets[i].size(); ++j)
        out << (j ? "," : "") << sets[i][j].to_string();
      out << "}\n";
    }
    out << "count: " << sets.size() << "\n";
  } else if (what == "submonoids") {
    auto subs = ext.monoid().enumerate_cartan_submonoids();
    for (std::size_t i = 0; i < subs.size(); ++i) {
      out << "T" << i << " (n=" << subs[i].size() << "): {";
      for (std::size_t j = 0; j < subs[i].elements().size(); ++j)
        out << (j ? "," : "") << subs[i].elements()[j].to_string();
      out << "}\n";
    }
    out << "count: " << subs.size() << "\n";
  } else if (what == "intermediate-algebras") {
    GaloisResult galois = galois_correspondence(ext);
    for (std::size_t i = 0; i < galois.pairs.size(); ++i) {
      out << "L" << i << " dim=" << galois.pairs[i].algebra.dim()
          << " submonoid-size=" << galois.pairs[i].submonoid.size() << "\n";
    }
    out << "count: " << galois.pairs.size() << "\n";
  } else {
    std::cerr << "unknown enumeration kind: " << what << "\n";
    return kExitUsage;
  }
  std::cout << out.str();
  return kExitOk;
}

int cmd_export(const std::string& spec_path, const std::string& format,
               const std::string& suite, std::optional<std::uint64_t> seed,
               std::optional<double> tol, const std::string& out_path) {
  BuiltInstance built = load_and_build(spec_path, seed, tol);
  if (format == "report-json" || format == "report-csv") {
    std::vector<Report> reports = run_suites(built, suite);
    if (format == "report-csv")
      write_out(out_path, reports_to_csv(reports));
    else
      write_out(out_path, reports_to_json(reports).dump(2) + "\n");
    return kExitOk;
  }
  if (format == "lattice-dot") {
    if (!built.usable()) {
      std::cerr << "instance does not build a Cartan triple\n";
      return kExitUsage;
    }
    auto sets = built.extension->monoid().enumerate_spectral_sets();
    std::ostringstream dot;
    dot << "digraph spectral_sets {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < sets.size(); ++i) {
      dot << "  A" << i << " [label=\"{";
      for (std::size_t j = 0; j < sets[i].size(); ++j)
        dot << (j ? "," : "") << sets[i][j].to_string();
      dot << "}\"];\n";
    }
    auto leq = [&](std::size_t a, std::size_t b) {
      return std::includes(sets[b].begin(), sets[b].end(), sets[a].begin(),
                           sets[a].end());
    };
    for (std::size_t a = 0; a < sets.size(); ++a)
      for (std::size_t b = 0; b < sets.size(); ++b) {
        if (a == b || !leq(a, b)) continue;
        bool covering = true;  // nothing strictly between a and b
        for (std::size_t c = 0; c < sets.size(); ++c)
          if (c != a && c != b && leq(a, c) && leq(c, b)) covering = false;
        if (covering) dot << "  A" << a << " -> A" << b << ";\n";
      }
    dot << "}\n";
    write_out(out_path, dot.str());
    return kExitOk;
  }
  std::cerr << "unknown export format: " << format << "\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional Cartan triples: verification and "
               "enumeration toolkit"};
  app.require_subcommand(1);

  std::string spec_path, suite = "all", what, format = "json", out_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("spec", spec_path, "instance file")->required();
  verify->add_option("--suite", suite,
                     "triple-axioms|extension|spectral|galois|representation|"
                     "crossed|fulman|all");
  verify->add_option("--seed", seed, "override the instance seed");
  verify->add_option("--tol", tol, "override the numeric tolerance");
  verify->add_option("--out", out_path, "write the report to this path");
  verify->add_option("--format", format, "json|csv");

  CLI::App* enumerate = app.add_subcommand("enumerate", "list derived objects");
  enumerate->add_option("spec", spec_path, "instance file")->required();
  std::string kind;
  enumerate->add_option("--what", kind,
                        "spectral-sets|submonoids|intermediate-algebras|atoms")
      ->required();
  enumerate->add_option("--seed", seed, "override the instance seed");
  enumerate->add_option("--tol", tol, "override the numeric tolerance");

  CLI::App* exporter = app.add_subcommand("export", "emit lattice/report files");
  exporter->add_option("spec", spec_path, "instance file")->required();
  std::string export_format;
  exporter->add_option("--format", export_format, "lattice-dot|report-json|report-csv")
      ->required();
  exporter->add_option("--suite", suite, "suite for report exports");
  exporter->add_option("--seed", seed, "override the instance seed");
  exporter->add_option("--tol", tol, "override the numeric tolerance");
  exporter->add_option("--out", out_path, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      if (!cartankit::is_suite_name(suite)) {
        std::cerr << "unknown suite: " << suite << "\n";
        return kExitUsage;
      }
      return cmd_verify(spec_path, suite, seed, tol, out_path, format);
    }
    if (enumerate->parsed()) return cmd_enumerate(spec_path, kind, seed, tol);
    if (exporter->parsed())
      return cmd_export(spec_path, export_format, suite, seed, tol, out_path);
  } catch (const cartankit::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cartankit::CapExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitUsage;
}
