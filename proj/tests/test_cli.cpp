#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gw/cli.hpp"

using gw::cli::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gw::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("gw_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("count examples") {
  for (const auto& [d, expect] : std::vector<std::pair<std::string, int>>{{"1,2", 1}, {"2,3", 2}, {"0,1", 1}}) {
    const Result r = run({"count", "--d", d});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["N"] == expect);
    CHECK(j.contains("n"));
    CHECK(j.contains("l"));
  }
  const json j = json::parse(run({"count", "--d", "2,3"}).out);
  CHECK(j["n"] == 4);
  CHECK(j["l"] == json::array({2}));
  CHECK(j["d"] == json::array({2, 3}));
}

TEST_CASE("verify examples pass") {
  const Result a = run({"verify", "--d", "1,2", "--z", "0,1"});
  CHECK(a.code == 0);
  const json ja = json::parse(a.out);
  CHECK(ja["pass"] == true);
  CHECK(ja["orbits"].size() == 1);
  CHECK(ja["failed"].empty());
  for (const char* c : {"count", "reality", "conjugation", "wronskian", "bethe", "basis", "gaudin"}) CHECK(ja["checks"][c]["pass"] == true);

  const Result b = run({"verify", "--d", "2,3", "--z", "-3,-1,1,3"});
  CHECK(b.code == 0);
  const json jb = json::parse(b.out);
  CHECK(jb["orbits"].size() == 2);
  CHECK(jb["checks"]["basis"]["rank"] == 2);
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run({"verify", "--d", "2,1"}).code == 2);
  CHECK(run({"verify", "--d", "1,x"}).code == 2);
  CHECK(run({"verify", "--d", "1,2", "--z", "0,1,2"}).code == 2);
  CHECK(run({"verify", "--d", "1,2", "--z", "0,0"}).code == 2);
  CHECK(run({"verify", "--d", "1,2", "--z", "0,1:1"}).code == 2);
  CHECK(run({"verify", "--d", "1,2", "--tol", "eigen=-1"}).code == 2);
  CHECK(run({"verify", "--d", "1,2", "--tol", "eigen=0"}).code == 2);
  CHECK(run({"verify", "--d", "1,2", "--tol", "nonsense=1"}).code == 2);
  CHECK(run({"verify", "--d", "1,2", "--checks", "nonsense"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"verify", "--config", "/nonexistent/gw.json"}).code == 2);
  CHECK(run({"verify", "--config", temp_file("bad.json", "{not json")}).code == 2);
  CHECK(run({"verify", "--config", temp_file("unknown.json", R"({"d": [1, 2], "bogus": 1})")}).code == 2);
  CHECK(run({"verify", "--config", temp_file("badtol.json", R"({"d": [1, 2], "tolerances": {"eigen": -1}})")}).code == 2);
  CHECK(run({"verify", "--config", temp_file("type.json", R"({"d": "1,2"})")}).code == 2);
  const Result r = run({"verify", "--config", temp_file("unknown2.json", R"({"d": [1, 2], "bogus": 1})")});
  CHECK(r.err.find("bogus") != std::string::npos);
}

TEST_CASE("a failed check exits with 1 and is named") {
  const Result r = run({"verify", "--d", "1,2", "--z", "0,1", "--tol", "eigen=1e-300"});
  CHECK(r.code == 1);
  const json j = json::parse(r.out);
  CHECK(j["pass"] == false);
  CHECK(j["failed"] == json::array({"gaudin"}));
}

TEST_CASE("check selection") {
  const json j = json::parse(run({"verify", "--d", "2,3", "--z", "-3,-1,1,3", "--checks", "count,reality"}).out);
  CHECK(j["checks"].size() == 2);
  CHECK(j["checks"].contains("count"));
  CHECK(j["checks"].contains("reality"));
  CHECK_FALSE(j.contains("gaudin"));
}

TEST_CASE("config file drives the run and is echoed in the report") {
  const std::string cfg = temp_file("cfg.json", R"({"d": [2, 3], "z": [-3, -1, [1, 0], 3], "seeds": 500,
      "rng_seed": 7, "samples": 3, "tolerances": {"eigen": 1e-8}})");
  const Result r = run({"verify", "--config", cfg});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["config"]["seeds"] == 500);
  CHECK(j["config"]["rng_seed"] == 7);
  CHECK(j["config"]["tolerances"]["eigen"] == 1e-8);
  CHECK(j["gaudin"]["x_samples"].size() == 3);
  // Command-line flags override the file.
  const json k = json::parse(run({"solve", "--config", cfg, "--seeds", "300"}).out);
  CHECK(k["config"]["seeds"] == 300);
}

TEST_CASE("reports are byte-identical across reruns and job counts") {
  const std::vector<std::string> args{"verify", "--d", "2,3", "--z", "-3,-1,1,3", "--jobs", "1"};
  const Result a = run(args);
  const Result b = run(args);
  CHECK(a.out == b.out);
  std::vector<std::string> four = args;
  four.back() = "4";
  json ja = json::parse(a.out), jc = json::parse(run(four).out);
  ja["config"].erase("jobs");
  jc["config"].erase("jobs");
  CHECK(ja.dump() == jc.dump());
}

TEST_CASE("GW_JOBS overrides --jobs") {
  setenv("GW_JOBS", "3", 1);
  const json j = json::parse(run({"solve", "--d", "1,2", "--jobs", "1"}).out);
  CHECK(j["config"]["jobs"] == 3);
  setenv("GW_JOBS", "two", 1);
  CHECK(run({"solve", "--d", "1,2"}).code == 2);
  unsetenv("GW_JOBS");
}

TEST_CASE("solve, bethe and gaudin subcommands") {
  const json s = json::parse(run({"solve", "--d", "1,2"}).out);
  CHECK(s["spec"]["z"] == json::parse("[[0.0, 0.0], [1.0, 0.0]]"));
  REQUIRE(s["orbits"].size() == 1);
  CHECK(std::abs(s["orbits"][0]["t"][0][0][0].get<double>() - 0.5) < 1e-12);

  // Explicit r = 1 spec with a Sym^2 factor.
  const std::string cfg = temp_file("sym.json", R"({"r": 1, "gram": [[2]], "weights": [[2], [1]], "l": [1], "z": [0, 2]})");
  const Result b = run({"bethe", "--config", cfg});
  REQUIRE(b.code == 0);
  const json jb = json::parse(b.out);
  CHECK(jb["bethe"]["dim"] == 6);
  CHECK(jb["bethe"]["basis"]["pass"] == true);
  for (const auto& v : jb["bethe"]["vectors"]) CHECK(v["singular"] == true);

  const json g = json::parse(run({"gaudin", "--d", "2,3", "--z", "-3,-1,1,3"}).out);
  CHECK(g["gaudin"]["pass"] == true);
  CHECK(g["gaudin"]["eigenvalues"].size() == 2);

  const std::string out = (std::filesystem::temp_directory_path() / "gw_test_out.json").string();
  CHECK(run({"count", "--d", "1,2", "--out", out}).code == 0);
  std::ifstream in(out);
  CHECK(json::parse(in)["N"] == 1);
}

TEST_CASE("explicit non-type-A spec: conjugation harness only") {
  const std::string cfg =
      temp_file("b2.json", R"({"r": 2, "gram": [[2, -2], [-2, 4]], "weights": [[1, 0], [1, 0]], "l": [1, 0], "z": [-1, 1]})");
  const Result r = run({"verify", "--config", cfg});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["checks"]["count"].contains("skipped"));
  CHECK(j["checks"]["reality"].contains("skipped"));
  CHECK(j["checks"]["conjugation"]["pass"] == true);
  CHECK(j["checks"]["gaudin"].contains("skipped"));
  CHECK(run({"bethe", "--config", cfg}).code == 2);
  CHECK(run({"count", "--config", cfg}).code == 2);
}

TEST_CASE("report formatting") {
  SUBCASE("empty report") { CHECK(gw::cli::format_report(json::object()) == "empty report\n"); }
  SUBCASE("single orbit") {
    const std::string path = temp_file("single.json", run({"verify", "--d", "1,2", "--z", "0,1"}).out);
    const Result r = run({"report", "--in", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("orbits: 1 (expected 1)") != std::string::npos);
    CHECK(r.out.find("0.5") != std::string::npos);
    CHECK(r.out.find("overall: PASS") != std::string::npos);
    CHECK(r.out.find("eigenvalues on Bethe vector 0") != std::string::npos);
  }
  SUBCASE("multi orbit") {
    const Result r = run({"report", "--d", "2,3", "--z", "-3,-1,1,3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("orbits: 2 (expected 2)") != std::string::npos);
    CHECK(r.out.find("\n   1  ") != std::string::npos);
    CHECK(r.out.find("rank 2 of singular space dimension 2") != std::string::npos);
  }
  SUBCASE("solve report without checks and without orbits") {
    json j = json::parse(run({"solve", "--d", "1,2"}).out);
    j["orbits"] = json::array();
    const std::string text = gw::cli::format_report(j);
    CHECK(text.find("orbits: 0 (expected 1)") != std::string::npos);
    CHECK(text.find("(none)") != std::string::npos);
    CHECK(text.find("checks:") == std::string::npos);
  }
  SUBCASE("count report") {
    const std::string text = gw::cli::format_report(json::parse(run({"count", "--d", "2,3"}).out));
    CHECK(text == "d = (2,3)  n = 4  l = (2)  N(d) = 2\n");
  }
}
