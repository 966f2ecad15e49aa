#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

const std::string kCli = CARTANKIT_CLI_PATH;
const std::string kInstances = CARTANKIT_INSTANCE_DIR;

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

RunResult run(const std::string& args) {
  const std::string out_path = "/tmp/cartankit_test_stdout.txt";
  std::string cmd = kCli + " " + args + " > " + out_path + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  r.output = buffer.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string instance(const std::string& name) {
  return kInstances + "/" + name + ".json";
}

}  // namespace

TEST_CASE("verify exit codes") {
  CHECK(run("verify " + instance("m4_two_atoms") + " --suite triple-axioms")
            .exit_code == 0);
  // expected-negative instances still verify cleanly
  CHECK(run("verify " + instance("m2_inner_action") + " --suite crossed")
            .exit_code == 0);
  CHECK(run("verify " + instance("m3_rank_mismatch") + " --suite all")
            .exit_code == 0);
  // parse problems are usage errors
  CHECK(run("verify /nonexistent/spec.json --suite all").exit_code == 2);
  CHECK(run("verify " + instance("m4_two_atoms") + " --suite bogus").exit_code ==
        2);
  // an explicitly requested enumeration past the cap is refused
  CHECK(run("verify " + instance("m6_three_cycle") + " --suite spectral")
            .exit_code == 2);
}

TEST_CASE("a verification failure is an exit-code-1 outcome") {
  // declare the wrong S size: the extension suite must fail
  const std::string path = "/tmp/cartankit_bad_expect.json";
  std::ofstream out(path);
  out << R"({"name":"bad","blocks":[4],"atoms":[[0,1],[2,3]],)"
      << R"("expect":{"s_size":6},"seed":1})";
  out.close();
  CHECK(run("verify " + path + " --suite extension").exit_code == 1);
}

TEST_CASE("enumerate listings") {
  RunResult atoms = run("enumerate " + instance("m2m3_center") + " --what atoms");
  CHECK(atoms.exit_code == 0);
  CHECK(atoms.output.find("id{1}") != std::string::npos);
  CHECK(atoms.output.find("id{2}") != std::string::npos);
  CHECK(atoms.output.find("count: 2") != std::string::npos);

  RunResult sets =
      run("enumerate " + instance("m4_two_atoms") + " --what spectral-sets");
  CHECK(sets.exit_code == 0);
  CHECK(sets.output.find("count: 16") != std::string::npos);

  RunResult subs =
      run("enumerate " + instance("m4_two_atoms") + " --what submonoids");
  CHECK(subs.exit_code == 0);
  CHECK(subs.output.find("count: 2") != std::string::npos);

  RunResult algs = run("enumerate " + instance("m4_two_atoms") +
                       " --what intermediate-algebras");
  CHECK(algs.exit_code == 0);
  CHECK(algs.output.find("count: 2") != std::string::npos);

  // cap refusal
  CHECK(run("enumerate " + instance("m6_three_cycle") + " --what spectral-sets")
            .exit_code == 2);
  CHECK(run("enumerate " + instance("m4_two_atoms") + " --what bogus").exit_code ==
        2);
}

TEST_CASE("byte-identical reports for identical inputs") {
  const std::string a = "/tmp/cartankit_report_a.json";
  const std::string b = "/tmp/cartankit_report_b.json";
  CHECK(run("verify " + instance("m4_two_atoms") + " --suite extension --out " +
            a).exit_code == 0);
  CHECK(run("verify " + instance("m4_two_atoms") + " --suite extension --out " +
            b).exit_code == 0);
  std::string sa = slurp(a), sb = slurp(b);
  CHECK_FALSE(sa.empty());
  CHECK(sa == sb);

  // a different seed changes the metadata but stays schema-valid
  const std::string c = "/tmp/cartankit_report_c.json";
  CHECK(run("verify " + instance("m4_two_atoms") +
            " --suite extension --seed 99 --out " + c).exit_code == 0);
  auto jc = nlohmann::json::parse(slurp(c));
  CHECK(jc["reports"][0]["seed"] == 99);
}

TEST_CASE("verify can emit csv directly") {
  const std::string path = "/tmp/cartankit_verify.csv";
  REQUIRE(run("verify " + instance("m2_diag") +
              " --suite triple-axioms --format csv --out " + path)
              .exit_code == 0);
  std::string csv = slurp(path);
  CHECK(csv.rfind("instance,suite,check,law,status,witness\n", 0) == 0);
  CHECK(csv.find("m2_diag") != std::string::npos);
}

TEST_CASE("report schema") {
  const std::string path = "/tmp/cartankit_schema.json";
  REQUIRE(run("export " + instance("m2_diag") +
              " --format report-json --suite triple-axioms --out " + path)
              .exit_code == 0);
  auto j = nlohmann::json::parse(slurp(path));
  REQUIRE(j.contains("reports"));
  const auto& r = j["reports"][0];
  CHECK(r["instance"] == "m2_diag");
  CHECK(r["suite"] == "triple-axioms");
  CHECK(r.contains("seed"));
  CHECK(r.contains("tol"));
  CHECK(r["summary"]["failed"] == 0);
  for (const auto& check : r["checks"]) {
    CHECK(check.contains("id"));
    CHECK(check.contains("law"));
    CHECK(check.contains("pass"));
  }
  // no timing key: reports must be byte-stable
  CHECK_FALSE(r.contains("timing"));
  CHECK_FALSE(r.contains("elapsed_ms"));
}

TEST_CASE("csv export") {
  const std::string path = "/tmp/cartankit_report.csv";
  REQUIRE(run("export " + instance("m2_diag") +
              " --format report-csv --suite triple-axioms --out " + path)
              .exit_code == 0);
  std::string csv = slurp(path);
  CHECK(csv.rfind("instance,suite,check,law,status,witness\n", 0) == 0);
  CHECK(csv.find("m2_diag,triple-axioms,validator.accept") != std::string::npos);
  CHECK(csv.find("FAIL") == std::string::npos);
}

TEST_CASE("lattice export is a covering-relation digraph") {
  const std::string path = "/tmp/cartankit_lattice.dot";
  REQUIRE(run("export " + instance("m2_diag") + " --format lattice-dot --out " +
              path).exit_code == 0);
  std::string dot = slurp(path);
  CHECK(dot.rfind("digraph spectral_sets", 0) == 0);
  CHECK(dot.find("A0") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
  // 16 nodes for the I2 spectral lattice; covering edges = 32 (Boolean cube
  // on 4 atoms)
  int nodes = 0, edges = 0;
  for (std::size_t pos = 0; (pos = dot.find("[label=", pos)) != std::string::npos;
       ++pos)
    ++nodes;
  for (std::size_t pos = 0; (pos = dot.find("->", pos)) != std::string::npos;
       ++pos)
    ++edges;
  CHECK(nodes == 16);
  CHECK(edges == 32);

  // exporting on an unbuilt (fresh) instance recomputes and succeeds
  RunResult stdout_run =
      run("export " + instance("m2_diag") + " --format lattice-dot");
  CHECK(stdout_run.exit_code == 0);
  CHECK(stdout_run.output == dot);
}

TEST_CASE("environment cap override") {
  std::string cmd = "CARTANKIT_CAP=40 " + kCli + " enumerate " +
                    instance("m6_three_cycle") +
                    " --what spectral-sets > /tmp/cartankit_cap.txt 2>/dev/null";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);
  std::string out = slurp("/tmp/cartankit_cap.txt");
  CHECK(out.find("count: 512") != std::string::npos);  // 2^9 atom subsets
}
