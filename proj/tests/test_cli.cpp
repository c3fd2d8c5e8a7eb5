#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mebkit/cli.hpp"
#include "mebkit/io.hpp"

using namespace mebkit;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "mebkit_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = scratch() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("meb exact on the square") {
  const std::string sq = write_file("square.csv", "-1,-1\n1,-1\n1,1\n-1,1\n");
  const Run r = run({"meb", "--algo", "exact", "--input", sq});
  REQUIRE(r.code == 0);
  const json doc = r.doc();
  CHECK(doc["command"] == "meb");
  CHECK(doc["result"]["radius"].get<double>() == doctest::Approx(std::sqrt(2.0)));
  CHECK(doc["result"]["center"].size() == 2);
  CHECK(doc["result"]["support_indices"].size() >= 2);
  CHECK(doc["result"]["multipliers"].size() == doc["result"]["support_indices"].size());
  CHECK(doc["tool_version"] == kToolVersion);
  CHECK(doc.contains("timing_ms"));
  CHECK(doc["seed"] == 0);
}

TEST_CASE("bc against exact through two invocations") {
  const std::string pts = scratch() / "bc.json";
  REQUIRE(run({"gen", "--kind", "gaussian", "--n", "200", "--d", "3", "--seed", "4",
               "--points-out", pts}).code == 0);
  const Run bc = run({"meb", "--algo", "bc", "--k", "100", "--input", pts});
  const Run ex = run({"meb", "--algo", "exact", "--input", pts});
  REQUIRE(bc.code == 0);
  REQUIRE(ex.code == 0);
  const double rb = bc.doc()["result"]["radius"], re = ex.doc()["result"]["radius"];
  CHECK(std::abs(rb - re) <= re / 10.0 + 1e-9);
}

TEST_CASE("every algorithm reports a ball") {
  const std::string pts = scratch() / "algos.csv";
  REQUIRE(run({"gen", "--kind", "uniform-ball", "--n", "60", "--d", "2", "--points-out", pts}).code == 0);
  for (const char* algo : {"exact", "bc", "eh", "hr"}) {
    const Run r = run({"meb", "--algo", algo, "--input", pts});
    REQUIRE(r.code == 0);
    CHECK(r.doc()["result"]["encloses"] == true);
  }
  const Run eh = run({"meb", "--algo", "eh", "--input", pts});
  CHECK(eh.doc()["result"].contains("kt_residuals"));
}

TEST_CASE("outlier test is byte-identical across runs and thread counts") {
  const std::string pts = scratch() / "outliers.csv";
  REQUIRE(run({"gen", "--kind", "clustered", "--n", "300", "--d", "2", "--points-out", pts}).code == 0);
  const std::vector<std::string> args{"test-cluster", "--mode", "outliers", "--eps", "0.1",
                                      "--delta", "0.1", "--seed", "7", "--input", pts};
  const Run a = run(args);
  setenv("MEB_KIT_THREADS", "3", 1);
  const Run b = run(args);
  unsetenv("MEB_KIT_THREADS");
  REQUIRE(a.code == 0);
  CHECK(a.doc()["result"].dump() == b.doc()["result"].dump());
  CHECK(a.doc()["result"]["verdicts"][0]["outcome"] == "accept");
}

TEST_CASE("tester verdicts carry outcome, witness and rounds") {
  const std::string pts = scratch() / "two.csv";
  REQUIRE(run({"gen", "--kind", "clustered", "--n", "100", "--d", "2", "--k", "2",
               "--radius", "0.5", "--points-out", pts}).code == 0);
  const Run r = run({"test-cluster", "--mode", "1s", "--body", "ball", "--radius", "1",
                     "--eps", "0.4", "--delta", "0.1", "--trials", "5", "--input", pts});
  REQUIRE(r.code == 0);
  const json res = r.doc()["result"];
  CHECK(res["trials"] == 5);
  CHECK(res["verdicts"].size() == 5);
  for (const auto& v : res["verdicts"]) {
    CHECK(v.contains("outcome"));
    CHECK(v.contains("witness"));
    CHECK(v.contains("rounds"));
  }
  const Run box = run({"test-cluster", "--mode", "kg", "--body", "box", "--half-extents", "1,1",
                       "--k", "2", "--c", "0.1", "--input", pts});
  REQUIRE(box.code == 0);
  CHECK(box.doc()["result"]["verdicts"][0]["outcome"] == "accept");
}

TEST_CASE("other subcommands") {
  const std::string tri = write_file("tri.csv", "0,0\n1,0\n0.5,0.1\n");
  const Run variant = run({"bounds", "variant", "--input", tri});
  REQUIRE(variant.code == 0);
  CHECK(variant.doc()["result"]["holds"] == true);
  CHECK(run({"bounds", "jung", "--input", tri}).code == 0);
  const Run fh = run({"bounds", "fractional-helly", "--alpha", "0.75", "--dim", "1"});
  REQUIRE(fh.code == 0);
  CHECK(fh.doc()["result"]["beta"].get<double>() == doctest::Approx(0.5));

  const std::string sq = write_file("sq4.csv", "-1,-1\n1,-1\n1,1\n-1,1\n");
  const Run radon = run({"convexity", "radon", "--input", sq});
  REQUIRE(radon.code == 0);
  CHECK(radon.doc()["result"]["positive"].size() == 2);
  const Run car = run({"convexity", "caratheodory", "--input", sq});
  REQUIRE(car.code == 0);
  CHECK(car.doc()["result"]["indices"].size() <= 3);
  const Run nodim = run({"convexity", "nodim", "--r", "2", "--input", sq});
  REQUIRE(nodim.code == 0);
  CHECK(nodim.doc()["result"]["achieved"].get<double>() <= 1e-12);

  const std::string boxes = write_file("boxes.json",
      R"({"boxes": [{"lower": [0, 0], "upper": [2, 2]}, {"lower": [1, 1], "upper": [3, 3]},
                    {"lower": [1.5, 0], "upper": [4, 1.8]}]})");
  const Run helly = run({"convexity", "helly-boxes", "--input", boxes});
  REQUIRE(helly.code == 0);
  CHECK(helly.doc()["result"]["family_intersects"] == true);

  for (const char* algo : {"brute", "calipers", "sweep", "stream2", "streameps"}) {
    CHECK(run({"diameter", "--algo", algo, "--input", sq}).code == 0);
  }
  const Run mk = run({"mkeb", "--z", "1", "--input", tri});
  REQUIRE(mk.code == 0);
  CHECK(mk.doc()["result"]["k"] == 2);
  CHECK(run({"mkeb", "--sample", "--eps", "0.5", "--delta", "0.5", "--input", tri}).code == 0);
  const Run pr = run({"promise", "--k1", "1", "--eps", "1", "--k2", "2", "--delta", "5", "--input", tri});
  REQUIRE(pr.code == 0);
  CHECK(pr.doc()["result"]["label"] == "YES");
}

TEST_CASE("report to an output file") {
  const std::string sq = write_file("sq5.csv", "0,0\n2,0\n");
  const std::string out = (scratch() / "report.json").string();
  const Run r = run({"meb", "--input", sq, "--output", out});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  CHECK(json::parse(in)["result"]["radius"] == 1.0);
}

TEST_CASE("error paths give structured payloads and exit codes") {
  const Run unknown = run({"meb", "--bogus"});
  CHECK(unknown.code == kExitUsage);
  CHECK(unknown.doc()["error"]["kind"] == "usage");

  CHECK(run({}).code == kExitUsage);

  const std::string ragged = write_file("ragged.csv", "1,2\n3\n");
  const Run parse = run({"meb", "--input", ragged});
  CHECK(parse.code == kExitInput);
  CHECK(parse.doc()["error"]["kind"] == "parse");
  CHECK(parse.doc()["error"]["line"] == 2);
  CHECK_FALSE(parse.doc().contains("result"));

  CHECK(run({"meb", "--input", (scratch() / "missing.csv").string()}).code == kExitInput);

  const std::string three = write_file("three3.csv", "0,0\n1,0\n0,1\n");
  CHECK(run({"convexity", "radon", "--input", three}).code == kExitInput);
  CHECK(run({"mkeb", "--input", three}).code == kExitInput);

  const std::string big = scratch() / "big.csv";
  REQUIRE(run({"gen", "--n", "500", "--d", "3", "--points-out", big}).code == 0);
  const Run guard = run({"mkeb", "--k", "10", "--input", big});
  CHECK(guard.code == kExitCompute);
  CHECK(guard.doc()["error"]["kind"] == "guard_exceeded");

  const Run conv = run({"meb", "--algo", "eh", "--max-iter", "1", "--tol", "1e-15", "--input", big});
  CHECK(conv.code == kExitCompute);

  CHECK(run({"gen", "--kind", "spiral"}).code == kExitUsage);
  CHECK(run({"meb", "--help"}).code == 0);
}
