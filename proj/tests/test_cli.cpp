#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bqmod/invariant.hpp"
#include "cli.hpp"
#include "support.hpp"

using bqmod::test::data_path;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = bqmod::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string swap2 = data_path("swap2.bq");
const std::string x3 = data_path("x3.bq");
const std::string ex42 = data_path("z5_ex42.bqm");
const std::string m1 = data_path("z3_m1.bqm");

}  // namespace

TEST_CASE("invariant of the worked example") {
  const auto r = run({"invariant", "--diagram", "catalog:6_1^{0,1}", "--biquandle", swap2, "--module", ex42});
  CHECK(r.code == 0);
  CHECK(r.out == "2u^5 + 2u^25\n");
}

TEST_CASE("json invariant matches the documented schema and the text form") {
  const auto text = run({"invariant", "--diagram", "catalog:6_1^{0,1}", "--biquandle", swap2, "--module", ex42});
  const auto json = run({"--format", "json", "invariant", "--diagram", "catalog:6_1^{0,1}", "--biquandle", swap2,
                         "--module", ex42});
  REQUIRE(json.code == 0);
  const auto j = nlohmann::json::parse(json.out);
  CHECK(j.at("diagram") == "6_1^{0,1}");
  CHECK(j.at("counting") == 4);
  bqmod::InvariantPolynomial p;
  for (const auto& t : j.at("polynomial")) p.add(t[0].get<bqmod::Count>(), t[1].get<bqmod::Count>());
  CHECK(to_string(p) + "\n" == text.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"biquandle", "counting", "diagram", "module", "polynomial"});
}

TEST_CASE("colorings") {
  const auto r = run({"colorings", "--diagram", "catalog:unknot_S2", "--biquandle", swap2, "--count"});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");
  const auto all = run({"colorings", "--diagram", "catalog:6_1^{0,1}", "--biquandle", swap2});
  CHECK(all.code == 0);
  CHECK(all.out.rfind("# 4 coloring(s)", 0) == 0);
  const auto js = run({"--format", "json", "colorings", "--diagram", "catalog:6_1^{0,1}", "--biquandle", swap2});
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j.at("count") == 4);
  CHECK(j.at("colorings").size() == 4);
  CHECK(j.at("labels").size() == j.at("colorings")[0].size());
}

TEST_CASE("find-modules prints one verified triple") {
  const auto r = run({"find-modules", "--biquandle", swap2, "--ring", "5", "--limit", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "# 1 module(s) over Z_5\nring 5\nt\n1 1\n1 1\ns\n0 0\n0 0\nr\n1 1\n1 1\n");
  const auto parsed = bqmod::parse_module(r.out, bqmod::test::swap2());
  CHECK(parsed.t(0, 0) == 1);
  const auto j = nlohmann::json::parse(
      run({"--format", "json", "find-modules", "--biquandle", swap2, "--ring", "5", "--limit", "1"}).out);
  CHECK(j.at("count") == 1);
  CHECK(j.at("modules")[0].at("r") == nlohmann::json::parse("[[1,1],[1,1]]"));
}

TEST_CASE("check-biquandle and check-module") {
  CHECK(run({"check-biquandle", "--biquandle", swap2}).code == 0);
  const auto r = run({"check-module", "--biquandle", swap2, "--module", ex42, "--instances"});
  CHECK(r.code == 0);
  CHECK(r.out.find("iii.vi (1,2,2): 0 = 0\n") != std::string::npos);
  CHECK(r.out.find("iii.iii (1,2,2): 3 = 3\n") != std::string::npos);
}

TEST_CASE("axiom violations exit 1 with witnesses") {
  const std::string bad = "ring 5\nt\n2 3\n4 1\ns\n3 0\n0 1\nr\n4 4\n3 2\n";
  const std::string path = "cli_test_bad.bqm";
  {
    std::ofstream f(path);
    f << bad;
  }
  const auto r = run({"check-module", "--biquandle", swap2, "--module", path});
  CHECK(r.code == 1);
  CHECK(r.out.find("axiom i.i fails at (1)") != std::string::npos);
  const auto j = nlohmann::json::parse(run({"--format", "json", "check-module", "--biquandle", swap2, "--module", path}).out);
  CHECK(j.at("ok") == false);
  CHECK(j.at("violations")[0].at("witness") == nlohmann::json::parse("[1]"));
  const auto inv = run({"invariant", "--diagram", "catalog:2_1", "--biquandle", swap2, "--module", path});
  CHECK(inv.code == 1);
  std::remove(path.c_str());
}

TEST_CASE("usage and parse errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"invariant", "--diagram", "catalog:2_1"}).code == 2);
  CHECK(run({"--format", "xml", "catalog", "list"}).code == 2);
  CHECK(run({"colorings", "--diagram", "/nonexistent.mgd", "--biquandle", swap2}).code == 2);
  const auto unknown = run({"catalog", "show", "nope"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("did you mean") != std::string::npos);
  const std::string path = "cli_test_bad.mgd";
  {
    std::ofstream f(path);
    f << "mgd v1\nX+ 1 2\n";
  }
  const auto parse = run({"colorings", "--diagram", path, "--biquandle", swap2});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("line 2") != std::string::npos);
  std::remove(path.c_str());
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("catalog commands") {
  const auto list = run({"catalog", "list"});
  CHECK(list.code == 0);
  CHECK(list.out.find("6_1^{0,1}\tcomponents 2\tgenera 1 0\n") != std::string::npos);
  const auto show = run({"catalog", "show", "2_1"});
  CHECK(show.code == 0);
  CHECK(bqmod::parse_mgd(show.out) == bqmod::catalog::get("2_1").diagram);
  const auto j = nlohmann::json::parse(run({"--format", "json", "catalog", "show", "2_1"}).out);
  CHECK(bqmod::parse_mgd(j.at("mgd").get<std::string>()) == bqmod::catalog::get("2_1").diagram);
}

TEST_CASE("smooth") {
  const auto r = run({"smooth", "--diagram", "catalog:6_1^{0,1}", "--bars", "against"});
  CHECK(r.code == 0);
  const auto d = bqmod::parse_mgd(r.out);
  CHECK(d.marked_vertex_count() == 0);
  CHECK(d.crossing_count() == 4);
}

TEST_CASE("verify-moves") {
  const auto r = run({"verify-moves", "--diagram", "catalog:6_1^{0,1}", "--biquandle", swap2, "--module", ex42,
                      "--steps", "12", "--seed", "9"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ok: 12 step(s), invariants unchanged") != std::string::npos);
  const auto again = run({"verify-moves", "--diagram", "catalog:6_1^{0,1}", "--biquandle", swap2, "--module", ex42,
                          "--steps", "12", "--seed", "9"});
  CHECK(again.out == r.out);
  const auto j = nlohmann::json::parse(run({"--format", "json", "verify-moves", "--diagram", "catalog:2_1",
                                            "--biquandle", x3, "--module", m1, "--steps", "5"})
                                           .out);
  CHECK(j.at("ok") == true);
  CHECK(j.at("walk").size() == 5);
}

TEST_CASE("output does not depend on the thread count") {
  const std::vector<std::vector<std::string>> commands{
      {"invariant", "--diagram", "catalog:8_1", "--biquandle", x3, "--module", m1},
      {"colorings", "--diagram", "catalog:6_1^{0,1}", "--biquandle", swap2},
      {"find-modules", "--biquandle", swap2, "--ring", "5"},
  };
  for (const auto& c : commands) {
    std::vector<std::string> one{"--threads", "1"}, two{"--threads", "2"}, eight{"--threads", "8"};
    one.insert(one.end(), c.begin(), c.end());
    two.insert(two.end(), c.begin(), c.end());
    eight.insert(eight.end(), c.begin(), c.end());
    const auto a = run(one);
    CHECK(a.code == 0);
    CHECK(run(two).out == a.out);
    CHECK(run(eight).out == a.out);
  }
}
