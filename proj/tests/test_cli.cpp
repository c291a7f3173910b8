#include <sstream>

#include "doctest.h"
#include "freeprod/cli.hpp"
#include "freeprod/spec_io.hpp"
#include "json.hpp"
#include "oracles.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "freeprod");
  std::ostringstream out, err;
  const int code = freeprod::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(FREEPROD_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("reduce") {
  auto r = run({"reduce", "--spec", data("z2_z3.json"), "--word", "b a b^-1"});
  REQUIRE(r.code == 0);
  const auto rep = r.report();
  CHECK(rep["schema"] == "freeprod.report/1");
  CHECK(rep["command"] == "reduce");
  CHECK(rep["outputs"]["normal_form"]["text"] == "b a b^2");
  CHECK(rep["outputs"]["cyclically_reduced"]["text"] == "a");
  CHECK(rep["outputs"]["conjugator"]["text"] == "b^2");
  CHECK(rep["outputs"]["word_length"] == 3);

  r = run({"reduce", "--spec", data("z2_z3.json"), "--word", "a a"});
  REQUIRE(r.code == 0);
  CHECK(r.report()["outputs"]["normal_form"]["text"] == "1");
  CHECK(r.report()["outputs"]["normal_form"]["length"] == 0);

  r = run({"reduce", "--spec", data("z2_z3.json"), "--word", "a q"});
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown generator 'q'") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("conjugate-test") {
  auto r = run({"conjugate-test", "--spec", data("z2_z3.json"), "--word1", "a b", "--word2", "b a"});
  REQUIRE(r.code == 0);
  CHECK(r.report()["outputs"]["conjugate"] == true);
  r = run({"conjugate-test", "--spec", data("z2_z3.json"), "--word1", "a b", "--word2", "a b^2"});
  CHECK(r.report()["outputs"]["conjugate"] == false);
  r = run({"conjugate-test", "--spec", data("z2_s3.json"), "--word1", "r", "--word2", "r^2"});
  REQUIRE(r.code == 0);
  CHECK(r.report()["outputs"]["conjugate"] == true);
}

TEST_CASE("growth output") {
  auto r = run({"growth", "--spec", data("z2_z3.json"), "--max-k", "0"});
  REQUIRE(r.code == 0);
  const auto rows = r.report()["outputs"]["rows"];
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["G"] == 1);
  CHECK(rows[0]["F"] == 1);

  r = run({"growth", "--spec", data("z2_z3.json"), "--max-k", "3", "--emit", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "k,G,F,family_bound\n0,1,1,\n1,4,4,\n2,8,6,\n3,14,6,2\n");

  const std::vector<std::string> args{"growth", "--spec", data("z2_z3.json"), "--max-k", "9", "--threads", "3"};
  const auto first = run(args);
  const auto second = run(args);
  const auto single =
      run({"growth", "--spec", data("z2_z3.json"), "--max-k", "9", "--threads", "1"});
  CHECK(first.out == second.out);
  CHECK(first.report()["outputs"] == single.report()["outputs"]);

  r = run({"growth", "--spec", data("z2_s3.json"), "--max-k", "4"});
  REQUIRE(r.code == 0);
  const auto s3 = freeprod::load_group_spec(data("z2_s3.json"));
  const auto s3_report = r.report();
  REQUIRE(s3_report["outputs"]["rows"].size() == 5);
  for (const auto& row : s3_report["outputs"]["rows"]) {
    CHECK(row["G"].get<std::size_t>() == freeprod::oracle::ball(s3, row["k"].get<int>()).size());
  }
}

TEST_CASE("budget exhaustion exits with 3") {
  auto r = run({"growth", "--spec", data("z_z.json"), "--max-k", "12", "--memory-mb", "1"});
  CHECK(r.code == 3);
  CHECK(r.err.find("memory budget") != std::string::npos);
  r = run({"growth", "--spec", data("z2_z3.json"), "--max-k", "13"});
  CHECK(r.code == 3);
}

TEST_CASE("necklaces, gm-family, free-subgroup-check, dihedral-check") {
  auto r = run({"necklaces", "--r", "4"});
  CHECK(r.report()["outputs"]["count"] == 6);
  r = run({"gm-family", "--spec", data("z2_z3.json"), "--r", "3"});
  CHECK(r.report()["outputs"]["count"] == 4);
  CHECK(r.report()["outputs"]["pairwise_nonconjugate"] == true);
  r = run({"gm-family", "--spec", data("z2_z2.json"), "--r", "3"});
  CHECK(r.code == 2);
  r = run({"free-subgroup-check", "--spec", data("z2_z3.json"), "--depth", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.report()["outputs"]["free"] == false);
  CHECK(r.report()["outputs"]["relation"] == "x^-1 y x^-1 = x y^-1 x");
  r = run({"free-subgroup-check", "--spec", data("z_z.json"), "--depth", "4"});
  CHECK(r.report()["outputs"]["free"] == true);
  r = run({"dihedral-check"});
  CHECK(r.code == 0);
  CHECK(r.report()["outputs"]["holds"] == true);
}

TEST_CASE("laurent-check") {
  auto r = run({"laurent-check", "--terms", "-2:1,1:5"});
  REQUIRE(r.code == 0);
  const auto cert = r.report()["outputs"]["certificate"];
  CHECK(cert["low_term"]["coefficient"] == "-1");
  CHECK(cert["low_term"]["exponent"] == -2);
  CHECK(cert["high_term"]["coefficient"] == "5");
  CHECK(cert["high_term"]["exponent"] == 2);
  r = run({"laurent-check", "--terms", "0:3", "--modulus", "6"});
  CHECK(r.report()["outputs"]["certificate"]["low_term"]["coefficient"] == "3");
  r = run({"laurent-check", "--random", "200", "--modulus", "7", "--seed", "1"});
  CHECK(r.report()["outputs"]["failures"] == 0);
  CHECK(run({"laurent-check", "--terms", "0:0"}).code == 2);
}

TEST_CASE("classify and bound") {
  auto r = run({"classify", "--descriptor", data("rp3_rp3.json")});
  REQUIRE(r.code == 0);
  CHECK(r.report()["outputs"]["growth_class"] == "PrimeLike");
  CHECK(r.report()["rules"][0] == "rp3_sum_rp3.index_two_cyclic");
  r = run({"classify", "--descriptor", data("remaining_case.json")});
  CHECK(r.report()["outputs"]["growth_class"] == "Unknown");
  r = run({"classify", "--descriptor", data("rp3_lens3.json")});
  CHECK(r.report()["outputs"]["growth_class"] == "Exponential");
  r = run({"classify", "--descriptor", data("hyperbolic.json")});
  CHECK(r.report()["outputs"]["growth_class"] == "AllPolynomial");

  r = run({"bound", "--L", "1", "--L1", "1", "--t", "30"});
  REQUIRE(r.code == 0);
  CHECK(r.report()["outputs"]["bound"] == "256/75");
  CHECK(r.report()["outputs"]["r"] == 10);
  r = run({"bound", "--k", "2", "--r", "4", "--lambda", "1/2", "--t", "10"});
  CHECK(r.report()["outputs"]["bound"] == "25/2");
  CHECK(run({"bound", "--L", "1", "--L1", "2", "--t", "30"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"reduce", "--spec", data("missing.json"), "--word", "a"}).code == 2);
  CHECK(run({"nosuch"}).code == 2);
  auto r = run({"--timing", "necklaces", "--r", "3"});
  CHECK(r.report().contains("timing_ms"));
  CHECK_FALSE(run({"necklaces", "--r", "3"}).report().contains("timing_ms"));
}

TEST_CASE("round12") {
  CHECK(freeprod::cli::round12(1.0 / 3.0) == 0.333333333333);
  CHECK(freeprod::cli::round12(0.0) == 0.0);
}
