#include "cartankit/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace cartankit {

void Report::add(std::string id, std::string law, bool pass, std::string witness) {
  checks.push_back({std::move(id), std::move(law), pass, false,
                    pass ? std::string{} : std::move(witness)});
}

void Report::skip(std::string id, std::string law, std::string reason) {
  checks.push_back({std::move(id), std::move(law), false, true, std::move(reason)});
}

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const CheckRecord& c : checks) n += !c.skipped && !c.pass;
  return n;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["format_version"] = 1;
  j["instance"] = instance;
  j["suite"] = suite;
  j["seed"] = seed;
  j["tol"] = tol;
  nlohmann::json arr = nlohmann::json::array();
  std::size_t passed = 0, failed = 0, skips = 0;
  for (const CheckRecord& c : checks) {
    nlohmann::json cj;
    cj["id"] = c.id;
    cj["law"] = c.law;
    cj["pass"] = c.pass && !c.skipped;
    cj["skipped"] = c.skipped;
    cj["witness"] = c.witness;
    arr.push_back(std::move(cj));
    if (c.skipped) ++skips;
    else if (c.pass) ++passed;
    else ++failed;
  }
  j["checks"] = std::move(arr);
  j["summary"] = {{"passed", passed}, {"failed", failed}, {"skipped", skips}};
  return j;
}

namespace {
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}
}  // namespace

std::string Report::to_csv() const {
  std::ostringstream out;
  out << "instance,suite,check,law,status,witness\n";
  for (const CheckRecord& c : checks)
    out << instance << ',' << suite << ',' << c.id << ',' << csv_escape(c.law)
        << ',' << (c.skipped ? "skipped" : c.pass ? "pass" : "FAIL") << ','
        << csv_escape(c.witness) << '\n';
  return out.str();
}

std::string Report::to_console(bool) const {
  std::ostringstream out;
  out << "== " << instance << " / " << suite << " (seed " << seed << ", tol "
      << tol << ")\n";
  for (const CheckRecord& c : checks) {
    out << "  [" << (c.skipped ? "skip" : c.pass ? " ok " : "FAIL") << "] "
        << c.id << " - " << c.law << '\n';
    if (!c.witness.empty()) out << "         " << c.witness << '\n';
  }
  return out.str();
}

nlohmann::json reports_to_json(const std::vector<Report>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Report& r : reports) arr.push_back(r.to_json());
  nlohmann::json j;
  j["format_version"] = 1;
  j["reports"] = std::move(arr);
  return j;
}

std::string reports_to_csv(const std::vector<Report>& reports) {
  std::string out = "instance,suite,check,law,status,witness\n";
  for (const Report& r : reports) {
    std::string one = r.to_csv();
    out += one.substr(one.find('\n') + 1);  // drop the per-report header
  }
  return out;
}

}  // namespace cartankit
