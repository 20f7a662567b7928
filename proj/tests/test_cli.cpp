#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mrv/cli.hpp"

using namespace mrv;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

ordered_json parse(const RunResult& r) { return ordered_json::parse(r.out); }

}  // namespace

TEST_CASE("dimension queries") {
  RunResult r = run({"dims", "--n", "3", "--ell", "1"});
  REQUIRE(r.code == 0);
  ordered_json doc = parse(r);
  CHECK(doc["command"] == "dims");
  CHECK(doc["result"]["o"] == 4);
  CHECK(doc["result"]["t"] == 36);
  CHECK(doc["result"]["q"] == 12);
  CHECK(doc["result"]["r"] == 0);
  CHECK(doc["verdict"] == "ok");

  RunResult om = run({"dims", "--n", "3", "--omega", "1", "5"});
  REQUIRE(om.code == 0);
  CHECK(parse(om)["result"]["omega"]["value"] == 84);

  RunResult both = run({"dims", "--n", "2", "--ell", "-4", "--omega", "1", "3", "--q", "1"});
  REQUIRE(both.code == 0);
  ordered_json b = parse(both);
  CHECK(b["result"]["o"] == 0);
  CHECK_FALSE(b["result"].contains("q"));  // no fiber split below -1
  CHECK(b["result"]["omega"]["value"] == 0);
}

TEST_CASE("top-level report keys are fixed") {
  RunResult r = run({"dims", "--n", "2", "--ell", "0"});
  REQUIRE(r.code == 0);
  ordered_json doc = parse(r);
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"command", "params", "result", "warnings", "verdict"});
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"dims", "--n", "0", "--ell", "1"}).code == 2);
  CHECK(run({"dims", "--n", "3"}).code == 2);
  CHECK(run({"maxrank", "tangent", "--n", "2", "--ell", "0", "--points", "100", "--trials",
             "0"}).code == 2);
  CHECK(run({"maxrank", "tangent", "--n", "2", "--ell", "0"}).code == 2);  // missing --points
  CHECK(run({"betti", "--n", "2", "--points", "0"}).code == 2);
  CHECK(run({"betti", "--n", "2", "--points", "5", "--prime", "6"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"betti", "--n", "2", "--points", "5", "--format", "xml"}).code == 2);
  RunResult bad_out = run({"dims", "--n", "2", "--ell", "1", "--out", "/nonexistent/x.json"});
  CHECK(bad_out.code == 2);
  CHECK(bad_out.err.find("cannot open") != std::string::npos);
}

TEST_CASE("sampled rank commands set the verdict and exit code") {
  RunResult r = run({"maxrank", "tangent", "--n", "2", "--ell", "1", "--points", "5"});
  REQUIRE(r.code == 0);
  ordered_json doc = parse(r);
  CHECK(doc["command"] == "maxrank tangent");
  CHECK(doc["verdict"] == "certified");
  CHECK(doc["result"]["expected"] == 10);
  CHECK(doc["result"]["achieved"].size() == 5);
  CHECK(doc["params"]["prime"] == 2147483647);
  CHECK(doc["params"]["seed"] == 0);

  RunResult tau = run({"maxrank", "tau", "--n", "2", "--ell", "1"});
  REQUIRE(tau.code == 0);
  CHECK(parse(tau)["result"]["expected"] == 15);

  RunResult om = run({"maxrank", "omega", "--n", "3", "--p", "1", "--k", "5", "--points", "28",
                      "--trials", "1"});
  REQUIRE(om.code == 0);
  CHECK(parse(om)["result"]["achieved"][0] == 84);
}

TEST_CASE("resolution tables and the exit contract") {
  RunResult r = run({"betti", "--n", "2", "--points", "5", "--trials", "2"});
  REQUIRE(r.code == 0);
  ordered_json doc = parse(r);
  CHECK(doc["verdict"] == "match");
  CHECK(doc["result"]["all_match"] == true);
  CHECK(doc["result"]["theorem1"]["match"] == true);
  CHECK(doc["result"]["computed"]["entries"][0]["b"] == 1);
  CHECK(doc["warnings"].empty());
}

TEST_CASE("table output in csv keeps the pinned header") {
  RunResult r = run({"betti", "--n", "2", "--points", "5", "--trials", "2", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "p,a_p,b_p,pred_a_p,pred_b_p,match");
  std::string row;
  int rows = 0;
  while (std::getline(lines, row))
    if (!row.empty()) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("reduction certificates") {
  RunResult r = run({"horace", "--n", "2", "--ell", "1"});
  REQUIRE(r.code == 0);
  ordered_json doc = parse(r);
  CHECK(doc["verdict"] == "certified");
  CHECK(doc["result"]["node_count"] == 7);
  CHECK(doc["result"]["remark_z_bound"] == true);
  CHECK(doc["result"]["nodes"][0]["statement"]["label"] ==
        "RB(T_{P^2}(1), O_{P^1}(2), 7, 0; 0, 1)");

  RunResult neg = run({"horace", "--n", "2", "--ell", "-5"});
  REQUIRE(neg.code == 0);
  CHECK(parse(neg)["result"]["node_count"] == 1);

  RunResult line = run({"horace", "--n", "1", "--ell", "3"});
  REQUIRE(line.code == 0);
  CHECK(parse(line)["result"]["nodes"][0]["rule"] == "trivial");
}

TEST_CASE("same seed, same bytes") {
  std::vector<std::string> betti_args = {"betti", "--n", "2", "--points", "6", "--seed", "42"};
  CHECK(run(betti_args).out == run(betti_args).out);
  std::vector<std::string> mr_args = {"maxrank", "tangent", "--n", "3", "--ell", "2",
                                      "--points", "9", "--seed", "7", "--trials", "3"};
  CHECK(run(mr_args).out == run(mr_args).out);
  CHECK(run({"horace", "--n", "3", "--ell", "2"}).out ==
        run({"horace", "--n", "3", "--ell", "2"}).out);
}

TEST_CASE("alternate formats render without affecting the exit code") {
  for (const char* fmt : {"text", "csv"}) {
    RunResult r = run({"maxrank", "tau", "--n", "2", "--ell", "1", "--format", fmt});
    CHECK(r.code == 0);
    CHECK_FALSE(r.out.empty());
  }
  RunResult t = run({"dims", "--n", "3", "--ell", "1", "--format", "text"});
  CHECK(t.out.find("36") != std::string::npos);
}

TEST_CASE("reports can be written to a file") {
  std::string path = "cli_out_test.json";
  RunResult r = run({"dims", "--n", "3", "--ell", "1", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  ordered_json doc = ordered_json::parse(in);
  CHECK(doc["result"]["t"] == 36);
  in.close();
  std::remove(path.c_str());
}

TEST_CASE("help is not an error") {
  CHECK(run({"--help"}).code == 0);
}
