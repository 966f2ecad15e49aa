#ifndef CARTANKIT_REPORT_HPP
#define CARTANKIT_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace cartankit {

struct CheckRecord {
  std::string id;       // stable identifier, e.g. "extension.section-order"
  std::string law;      // the fact being checked, in words
  bool pass = false;
  bool skipped = false; // refused (cap) or not applicable
  std::string witness;  // failure payload / skip reason
};

struct Report {
  std::string instance;
  std::string suite;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<CheckRecord> checks;
  double elapsed_ms = 0.0;  // console only, never serialized

  void add(std::string id, std::string law, bool pass, std::string witness = {});
  void skip(std::string id, std::string law, std::string reason);
  std::size_t failures() const;
  bool all_passed() const { return failures() == 0; }

  /// Canonical serializations: deterministic for a fixed
  /// (instance, seed, tol, version); timing is excluded.
  nlohmann::json to_json() const;
  std::string to_csv() const;
  std::string to_console(bool color = false) const;
};

/// Serializes several suite reports as one document.
nlohmann::json reports_to_json(const std::vector<Report>& reports);
std::string reports_to_csv(const std::vector<Report>& reports);

}  // namespace cartankit

#endif
