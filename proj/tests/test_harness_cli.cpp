#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "json.hpp"

#include "fm/corpus.hpp"
#include "fm/harness.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the installed CLI binary (path injected by the build through
// FMCLI_PATH) and captures stdout; stderr is dropped.
RunResult run_cli(const std::string& args) {
  const char* exe = std::getenv("FMCLI_PATH");
  REQUIRE_MESSAGE(exe != nullptr, "FMCLI_PATH not set");
  const std::string cmd = '"' + std::string(exe) + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse(const std::string& text) {
  return nlohmann::json::parse(text);
}

}  // namespace

TEST_CASE("norms verb emits a schema-wrapped report for a built-in family") {
  auto r = run_cli("norms --family gaussian");
  CHECK(r.exit_code == 0);
  auto doc = parse(r.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["command"] == "norms");
  auto rep = doc["report"];
  CHECK(rep["name"] == "gaussian");
  CHECK(rep["h_certificate"] == "member");
  CHECK(rep["flags"].is_object());
  CHECK(rep["aq_values"].size() == 2);  // default p list 1, 2
  CHECK(rep["h_norm"].get<double>() > 0.0);
}

TEST_CASE("seq-norms verb on a built-in sequence") {
  auto r = run_cli("seq-norms --seq-name hat8 --p 1 --p 2 --p 4");
  CHECK(r.exit_code == 0);
  auto rep = parse(r.out)["report"];
  CHECK(rep["h_certificate"] == "member");
  CHECK(rep["limit_is_zero"] == true);
  CHECK(rep["bv_norm"].get<double>() == doctest::Approx(2.875));  // sup 1 + diff mass 15/8
  CHECK(rep["aq_values"].size() == 3);
}

TEST_CASE("series verification verb reports an exact pointwise identity") {
  auto r = run_cli("verify-thmb --seq-name delta");
  CHECK(r.exit_code == 0);
  auto rep = parse(r.out)["report"];
  CHECK(rep["symbol"] == "delta");
  CHECK(rep["remainder"]["flag"] == "finite");
  CHECK(rep["samples"].size() == 5);
  for (const auto& s : rep["samples"]) {
    CHECK(s["residual"].get<double>() == 0.0);
    CHECK(s["converged"] == true);
  }
}

TEST_CASE("apply-periodic verb round-trips a built-in circle function") {
  auto r = run_cli("apply-periodic --seq-name hat8 --periodic sawtooth --n 1024");
  CHECK(r.exit_code == 0);
  auto rep = parse(r.out)["report"];
  CHECK(rep["symbol"] == "hat8");
  CHECK(rep["input"] == "sawtooth");
  CHECK(rep["identity_ok"] == true);
  CHECK(rep["identity_error"].get<double>() < 1e-10);
  CHECK(rep["n"] == 1024);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("norms --family gaussian --bogus 3").exit_code == 2);
  CHECK(run_cli("norms").exit_code == 2);
  CHECK(run_cli("norms --family nosuchfamily").exit_code == 2);
  CHECK(run_cli("seq-norms --seq-name nope").exit_code == 2);
  CHECK(run_cli("seq-norms --sequence /nonexistent/path.csv").exit_code == 2);
}

TEST_CASE("a window wider than the circle grid is a usage error") {
  auto r = run_cli("apply-periodic --seq-name inverse_linear --periodic sawtooth --n 64");
  CHECK(r.exit_code == 2);
}

TEST_CASE("help exits clean") {
  auto r = run_cli("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("norms") != std::string::npos);
}

TEST_CASE("reports are byte-deterministic across runs") {
  auto a = run_cli("verify-thmb --seq-name hat8");
  auto b = run_cli("verify-thmb --seq-name hat8");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("--out writes the document to a file instead of stdout") {
  const std::string path = "/tmp/fmcli_out_test.json";
  auto r = run_cli("seq-norms --seq-name delta --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::string text;
  char buf[4096];
  size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
  std::fclose(f);
  std::remove(path.c_str());
  auto doc = parse(text);
  CHECK(doc["command"] == "seq-norms");
  CHECK(doc["report"]["name"] == "delta");
}

TEST_CASE("sequence CSV round-trips through the CLI") {
  const std::string path = "/tmp/fmcli_seq_test.csv";
  for (auto& e : fm::sequence_corpus())
    if (e.name == "hat8") e.seq.to_csv(path);
  auto r = run_cli("seq-norms --sequence " + path + " --seq-tail zero");
  std::remove(path.c_str());
  CHECK(r.exit_code == 0);
  auto rep = parse(r.out)["report"];
  CHECK(rep["delta_l1"]["value"].get<double>() == doctest::Approx(1.875));
  CHECK(rep["h_certificate"] == "member");
}

TEST_CASE("embedding runner refuses degenerate requests") {
  CHECK_THROWS_AS((void)fm::run_embedding_report({}, {}, {1.0, 2.0}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)fm::run_embedding_report(fm::continuous_corpus(), {}, {0.5}, {}),
                  std::invalid_argument);
}
