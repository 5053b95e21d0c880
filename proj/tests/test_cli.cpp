#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "milnor_lab/datum.hpp"
#include "milnor_lab/report.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

const std::filesystem::path kScratch =
    std::filesystem::temp_directory_path() / ("milnor_lab_cli_" + std::to_string(::getpid()));

Run run(const std::string& args, const std::string& env = "") {
  std::filesystem::create_directories(kScratch);
  const auto err_path = kScratch / "stderr.txt";
  const std::string cmd =
      env + " " + MILNOR_LAB_CLI + " " + args + " 2>" + err_path.string();
  Run result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_path);
  result.err.assign(std::istreambuf_iterator<char>(err), std::istreambuf_iterator<char>());
  return result;
}

std::string data(const std::string& name) { return std::string(MILNOR_LAB_TEST_DATA) + "/" + name; }

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("analyze") {
  const auto mono = run("analyze --family monomial --p 2 --q 2");
  REQUIRE(mono.code == 0);
  const auto report = nlohmann::json::parse(mono.out);
  CHECK(report["fibre"]["d"] == 2);
  CHECK(report["fibre"]["b1"] == 2);
  CHECK(report["beta"]["value"] == 4);

  const auto x3 = run("analyze " + data("x3.json"));
  REQUIRE(x3.code == 0);
  const auto x3_report = nlohmann::json::parse(x3.out);
  CHECK(x3_report["beta"]["verdict_bobadilla"] == true);
  CHECK(x3_report["beta"]["value"] == 0);

  const auto line = run("analyze --dump-snf " + data("cusp_squared_line.json"));
  REQUIRE(line.code == 0);
  const auto line_report = nlohmann::json::parse(line.out);
  CHECK(line_report["fibre"]["chi"] == -10);
  CHECK(line_report["fibre"]["b1"] == 11);
  CHECK(line_report["vertical"][0]["k"] == 1);
  CHECK(line_report["snf"][0]["diagonal"] == nlohmann::json::array({1, 0}));

  const auto power = run("analyze --family power --base " + data("x3.json") + " --exponent 2");
  REQUIRE(power.code == 0);
  CHECK(nlohmann::json::parse(power.out)["fibre"]["d"] == 6);

  const auto qh = run("analyze --family quasihomogeneous --qh 2,3,2 --qh 1,1,1");
  REQUIRE(qh.code == 0);
  CHECK(nlohmann::json::parse(qh.out)["datum"]["intersections"][0][1] == 2);

  const auto inline_spec = run("analyze '{\"family\":\"monomial\",\"p\":4,\"q\":6}'");
  REQUIRE(inline_spec.code == 0);
  CHECK(nlohmann::json::parse(inline_spec.out)["fibre"]["b1"] == 2);

  const auto out_file = kScratch / "report.json";
  const auto to_file = run("analyze " + data("x3.json") + " --out " + out_file.string());
  REQUIRE(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream written(out_file);
  CHECK(nlohmann::json::parse(written) == x3_report);
}

TEST_CASE("input errors exit 1") {
  const auto malformed = run("analyze " + data("malformed.json"));
  CHECK(malformed.code == 1);
  CHECK(malformed.err.find("byte") != std::string::npos);

  const auto invalid =
      run("analyze '{\"branches\":[{\"multiplicity\":1,\"delta\":0},{\"multiplicity\":1,"
          "\"delta\":0}],\"intersections\":[[0,0],[0,0]]}'");
  CHECK(invalid.code == 1);
  CHECK(invalid.err.find("≥ 1 required") != std::string::npos);

  CHECK(run("analyze does/not/exist.json").code == 1);
  CHECK(run("analyze --family quasihomogeneous --qh 2,4,1").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("verify --max-branches 1").code == 1);
  CHECK(run("verify --max-branches 0 --max-mult 1 --max-delta 1 --max-int 1").code == 1);
  CHECK(run("verify --max-branches 1 --max-mult 1 --max-delta 1 --max-int 1 --properties nope")
            .code == 1);
  CHECK(run("verify --max-branches 1 --max-mult 1 --max-delta 1 --max-int 1", "MILNOR_LAB_JOBS=x")
            .code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("verify") {
  const auto tiny = run("verify --max-branches 1 --max-mult 1 --max-delta 1 --max-int 1");
  REQUIRE(tiny.code == 0);
  CHECK(nlohmann::json::parse(tiny.out)["datums_checked"] == 2);

  const auto chi = run(
      "verify --max-branches 1 --max-mult 3 --max-delta 1 --max-int 1 --properties prop2-chi-form");
  CHECK(chi.code == 2);
  const auto chi_report = nlohmann::json::parse(chi.out);
  REQUIRE(chi_report["violations"].size() == 2);
  for (const auto& v : chi_report["violations"]) CHECK(v["label"] == "documented");

  const std::string bounds = "verify --max-branches 2 --max-mult 3 --max-delta 2 --max-int 2";
  const auto serial = run(bounds + " --jobs 1");
  const auto parallel = run(bounds + " --jobs 4");
  const auto from_env = run(bounds, "MILNOR_LAB_JOBS=3");
  CHECK(serial.code == 0);
  CHECK(serial.out == parallel.out);
  CHECK(serial.out == from_env.out);
}

TEST_CASE("enumerate") {
  const auto four = run("enumerate --max-branches 1 --max-mult 2 --max-delta 1 --max-int 1");
  REQUIRE(four.code == 0);
  CHECK(line_count(four.out) == 4);

  const auto five = run("enumerate --max-branches 2 --max-mult 2 --max-delta 0 --max-int 1");
  REQUIRE(five.code == 0);
  CHECK(line_count(five.out) == 5);

  CHECK(run("enumerate --max-branches 1 --max-mult 0 --max-delta 1 --max-int 1").code == 1);

  SUBCASE("piping into analyze reproduces per-datum results") {
    const auto corpus = kScratch / "corpus.jsonl";
    const auto listed =
        run("enumerate --max-branches 2 --max-mult 3 --max-delta 1 --max-int 2 > " +
            corpus.string());
    REQUIRE(listed.code == 0);
    const auto analyzed = run("analyze --jsonl - < " + corpus.string());
    REQUIRE(analyzed.code == 0);

    const auto expected = milnor::enumerate_corpus({2, 3, 1, 2});
    std::istringstream lines(analyzed.out);
    std::string line;
    std::size_t k = 0;
    while (std::getline(lines, line)) {
      REQUIRE(k < expected.size());
      CHECK(nlohmann::ordered_json::parse(line) == milnor::analyze(expected[k]));
      ++k;
    }
    CHECK(k == expected.size());
  }
}
