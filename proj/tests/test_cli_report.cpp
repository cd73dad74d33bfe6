#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

const std::string kCli = CODERIV_CLI_PATH;
const std::string kScratch = CODERIV_SCRATCH_DIR;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = "\"" + kCli + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args, int expect = 0) {
  const Run r = run(args);
  REQUIRE(r.code == expect);
  return json::parse(r.out);
}

std::string write_file(const std::string& name, const std::string& text) {
  const std::string path = kScratch + "/" + name;
  std::ofstream(path) << text;
  return path;
}

std::string infeasible_problem() {
  json doc = run_json("example example_4_1");
  doc["constraints"]["rows"].push_back(
      json{{"ap", {"0", "0", "0"}}, {"ax", {"1"}}, {"b", "-1"}, {"rel", "<="}});
  return write_file("infeasible.json", doc.dump());
}

}  // namespace

TEST_CASE("frontier report") {
  const json r = run_json("frontier example_4_1 --p 1,0,0");
  CHECK(r["tool"] == "coderiv");
  CHECK(r["command"] == "frontier");
  CHECK(r["problem"] == "example_4_1");
  CHECK(r["cloud"] == json::parse(R"([["1","2"]])"));
  CHECK(r["exact"] == true);
  CHECK(r.contains("timing_ms"));
  CHECK(r.contains("digest"));
}

TEST_CASE("coderivative report with the oracle") {
  const json r = run_json("coderivative example_4_1 --ystar 1,1 --ystar=-1,0 --method both");
  REQUIRE(r["queries"].size() == 2);
  const json& first = r["queries"][0];
  CHECK(first["justification"] == "qualification and domination certified");
  CHECK(first["set"]["empty"] == false);
  CHECK(first["set"]["generators"]["points"] == json::parse(R"([["3","6","3"]])"));
  CHECK(first["oracle"]["pass"] == true);
  for (const auto& verdict : first["oracle"]["verdicts"]) CHECK(verdict["pass"] == true);
  CHECK(r["queries"][1]["set"]["empty"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run("frontier example_4_1").code == 0);
  CHECK(run("frontier no_such_problem").code == 2);
  CHECK(run("frontier example_4_1 --p 1,2").code == 2);
  CHECK(run("--seed zz frontier example_4_1").code == 2);
  CHECK(run("frontier example_4_1 --format yaml").code == 2);
  CHECK(run("bogus").code == 2);
  CHECK(run("coderivative example_5_1 --ystar 1,1 --variant weak").code == 2);
  CHECK(run("frontier " + infeasible_problem() + " --p 5,0,0").code == 3);
  CHECK(run("frontier ray_counterexample --p 0").code == 4);
  CHECK(run("coderivative example_4_1 --x 2 --ystar 1,1").code == 5);
  CHECK(run("domination ray_counterexample --p 0 --samples 4").code == 6);
  CHECK(run("domination example_4_1 --samples 4").code == 0);
  CHECK(run("validate example_5_1").code == 0);
  CHECK(run("--help").code == 0);
}

TEST_CASE("reports are deterministic apart from timing") {
  for (const char* args : {"domination example_5_1 --samples 6", "coderivative smooth_disk --ystar 1,1 --method both",
                           "oracle example_4_1 --ystar 1,1 --vstar 3,6,3,-1,-1"}) {
    json a = run_json(args), b = run_json(args);
    a.erase("timing_ms");
    b.erase("timing_ms");
    CAPTURE(args);
    CHECK(a == b);
  }
  json s1 = run_json("--seed 1 domination example_5_1 --samples 4");
  json s2 = run_json("--seed 2 domination example_5_1 --samples 4");
  CHECK(s1["certificate"]["seed"] != s2["certificate"]["seed"]);
}

TEST_CASE("examples round-trip through files") {
  for (const char* name : {"example_2_1", "example_2_2", "example_4_1", "example_5_1", "smooth_disk"}) {
    const std::string path = kScratch + "/" + name + ".json";
    REQUIRE(run(std::string("--out ") + path + " example " + name).code == 0);
    const json from_file = run_json("frontier " + path);
    const json builtin = run_json(std::string("frontier ") + name);
    CAPTURE(name);
    CHECK(from_file["cloud"] == builtin["cloud"]);
    CHECK(from_file["digest"] == builtin["digest"]);
  }
}

TEST_CASE("text format") {
  const Run r = run("--format text frontier example_4_1 --p 1,0,0");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("command") != std::string::npos);
  CHECK(r.out.find("frontier") != std::string::npos);
  CHECK(r.out.find('{') == std::string::npos);
}

TEST_CASE("global options after the subcommand") {
  const Run r = run("frontier example_4_1 --format text");
  CHECK(r.code == 0);
  CHECK(r.out.find('{') == std::string::npos);
}
