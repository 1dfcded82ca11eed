// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = blockset::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("blockset_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Cli, SearchNontrivialPlane) {
  auto r = run({"search", "--space", "pg", "--n", "2", "--q", "3", "--t", "1", "--convention", "nontrivial"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.report();
  EXPECT_EQ(j["version"], blockset::cli::kReportVersion);
  EXPECT_EQ(j["result"]["verdict"], "exists");
  EXPECT_EQ(j["result"]["size"], 6);
  EXPECT_EQ(j["result"]["witness"].size(), 6u);
  EXPECT_EQ(j["field"]["modulus"], "x");
  EXPECT_TRUE(j.contains("meta"));
}

TEST(Cli, BraidLines) {
  auto r = run({"braid", "--lines", "--q", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto lines = r.report()["result"]["lines"];
  EXPECT_EQ(lines["count"], 2);
  EXPECT_TRUE(lines["matches_contained_flats"]);
  EXPECT_EQ(lines["lines"][0]["points"], json::parse("[[0,1,2],[1,2,0],[2,0,1]]"));
}

TEST(Cli, ScanClassicalAffine) {
  auto r = run({"scan", "--t", "1", "--q", "3", "--kind", "affine-classical", "--scope", "touching", "--convention",
                "nontrivial", "--nmax", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = r.report()["result"]["rows"];
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1]["n"], 2);
  EXPECT_EQ(rows[1]["verdict"], "not-exists");
}

TEST(Cli, BraidProcedures) {
  auto r = run({"braid", "--escape", "--q", "3", "--x", "0,1,2", "--y", "1,0,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["result"]["escape"]["t0"], 2);
  EXPECT_EQ(r.report()["result"]["escape"]["point"], json::parse("[2,2,2]"));
  r = run({"braid", "--escape", "--q", "3", "--x", "1,2,0", "--y", "0,1,2"});
  EXPECT_TRUE(r.report()["result"]["escape"].is_null());
  r = run({"braid", "--transversal", "--q", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["result"]["transversal"]["size"], 6);
  EXPECT_TRUE(r.report()["result"]["transversal"]["minimal"]);
  r = run({"braid", "--transversal", "--q", "3", "--choose", "0,1,2", "--choose", "1,2,0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("BadChooser"), std::string::npos);
  r = run({"braid", "--existence", "--q", "3", "--n", "3"});
  EXPECT_EQ(r.report()["result"]["existence"]["outcome"], "empty");
  r = run({"braid", "--existence", "--q", "4", "--n", "2", "--scope", "contained"});
  EXPECT_EQ(r.report()["result"]["existence"]["outcome"], "vacuous");
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  r = run({"braid", "--complement", "--q", "3", "--m", "2"});
  EXPECT_EQ(r.report()["result"]["complement"]["count"], 6);
}

TEST(Cli, VerifyAndInstance) {
  auto r = run({"verify", "--space", "ag", "--n", "3", "--q", "3", "--braid", "--t", "2", "--point", "0,1,2", "--point",
                "(0,2,1)"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto res = r.report()["result"];
  EXPECT_TRUE(res["blocking"]);
  EXPECT_TRUE(res["minimal"]);
  r = run({"verify", "--space", "pg", "--n", "2", "--q", "3", "--point", "1,0,0"});
  EXPECT_FALSE(r.report()["result"]["blocking"]);
  EXPECT_TRUE(r.report()["result"]["minimal"].is_null());
  r = run({"instance", "--space", "pg", "--n", "2", "--q", "3", "--form", "1 0 0", "--scope", "touching"});
  EXPECT_EQ(r.report()["result"]["instance"]["universe"], 9);
  EXPECT_EQ(r.report()["result"]["instance"]["family"], 12);
}

TEST(Cli, SpaceAndComplement) {
  auto r = run({"space", "--space", "pg", "--n", "3", "--q", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["result"]["point_count"], 15);
  EXPECT_EQ(r.report()["result"]["flat_counts"][2]["count"], "15");
  r = run({"complement", "--space", "ag", "--n", "3", "--q", "3", "--braid", "--contained", "1"});
  EXPECT_EQ(r.report()["result"]["size"], 6);
  EXPECT_EQ(r.report()["result"]["max_flat_dimension"], 1);
  EXPECT_EQ(r.report()["result"]["contained_flats"]["count"], 2);
  r = run({"space", "--space", "pg", "--n", "2", "--q", "4"});
  EXPECT_EQ(r.report()["field"]["modulus"], "x^2+x+1");
}

TEST(Cli, ClassifyLine) {
  auto r = run({"classify", "--space", "pg", "--n", "2", "--q", "3", "--form", "1 0 0", "--scope", "touching",
                "--convention", "nontrivial"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["result"]["class"], "blocking-arrangement");
  EXPECT_TRUE(r.report()["result"]["minimal"]);
}

TEST(Cli, EmitRoundTrip) {
  const auto path = temp_file("arr.txt", "# demo\npg 2 5\n2 3 0\n0 4 1\n");
  auto first = run({"arrangement", "--arrangement", path, "--emit"});
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(first.out, "projective 2 5\n1 4 0\n0 1 4\n");
  const auto again = temp_file("arr2.txt", first.out);
  auto second = run({"arrangement", "--arrangement", again, "--emit"});
  EXPECT_EQ(second.out, first.out);
  auto up = run({"arrangement", "--arrangement", path, "--correspond", "3", "--emit"});
  EXPECT_EQ(up.out, "projective 3 5\n1 4 0 0\n0 1 4 0\n");
  auto file_search = run({"search", "--arrangement", path, "--t", "1", "--scope", "touching"});
  EXPECT_EQ(file_search.code, 0) << file_search.err;
}

TEST(Cli, Determinism) {
  for (const auto& q : {"3", "4"}) {
    std::vector<std::string> base = {"search", "--space", "pg", "--n", "2", "--q", q, "--convention", "nontrivial",
                                     "--no-meta"};
    auto one = base, eight = base;
    one.insert(one.end(), {"--workers", "1"});
    eight.insert(eight.end(), {"--workers", "8"});
    auto a = run(one), b = run(eight);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.report().contains("meta"));
    EXPECT_EQ(run(one).out, a.out);
  }
}

TEST(Cli, ExitCodes) {
  const auto bad_file = temp_file("bad.txt", "pg 2 3\n1 2\n");
  const auto dup_file = temp_file("dup.txt", "pg 2 3\n1 1 0\n2 2 0\n");
  const std::vector<std::vector<std::string>> input_errors = {
      {},
      {"frobnicate"},
      {"search", "--q", "6"},
      {"search", "--q", "70000"},
      {"search", "--q", "three"},
      {"search", "--n", "0", "--q", "3"},
      {"search", "--q", "3", "--t", "5"},
      {"search", "--q", "3", "--convention", "strict"},
      {"search", "--q", "3", "--scope", "nearby"},
      {"search", "--q", "3", "--space", "hyperbolic"},
      {"search", "--q", "3", "--workers", "0"},
      {"search", "--q", "3", "--form", "0 0 0"},
      {"search", "--q", "3", "--form", "1 2"},
      {"search", "--q", "3", "--form", "1 5 0"},
      {"search", "--q", "3", "--form", "1 1 0", "--form", "2 2 0"},
      {"search", "--arrangement", "/nonexistent/arr.txt"},
      {"search", "--arrangement", bad_file},
      {"search", "--arrangement", dup_file},
      {"search", "--arrangement", dup_file, "--q", "5"},
      {"verify", "--q", "3", "--point", "0,0,0"},
      {"verify", "--q", "3", "--point", "1,2"},
      {"verify", "--q", "3", "--form", "1 0 0", "--scope", "touching", "--point", "0,1,0"},
      {"braid", "--q", "3"},
      {"braid", "--escape", "--q", "3", "--x", "0,1,2", "--y", "0,1,2"},
      {"arrangement", "--q", "3", "--n", "3", "--form", "0 0 1 1", "--correspond", "2"},
      {"scan", "--kind", "hexagonal"},
      {"space", "--n", "12", "--q", "32"},
  };
  for (const auto& args : input_errors) {
    auto r = run(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_EQ(r.code, 2) << joined << "\n" << r.err;
    EXPECT_FALSE(r.err.empty()) << joined;
  }
  auto timeout = run({"search", "--q", "7", "--convention", "nontrivial", "--node-budget", "1000"});
  EXPECT_EQ(timeout.code, 3);
  EXPECT_EQ(timeout.report()["result"]["verdict"], "timeout");
  auto none = run({"search", "--q", "2", "--convention", "nontrivial"});
  EXPECT_EQ(none.code, 0);
  EXPECT_EQ(none.report()["result"]["verdict"], "not-exists");
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DomainErrorNames) {
  auto r = run({"search", "--q", "6"});
  EXPECT_NE(r.err.find("NotPrimePower"), std::string::npos);
  r = run({"arrangement", "--q", "3", "--n", "3", "--form", "0 0 1 1", "--correspond", "2"});
  EXPECT_NE(r.err.find("CoefficientLoss"), std::string::npos);
}

TEST(Cli, Selftest) {
  auto r = run({"selftest", "--cases", "20"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(r.report()["result"]["passed"]);
}

TEST(Cli, TableFormat) {
  auto r = run({"search", "--q", "3", "--format", "table"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verdict\t\"exists\""), std::string::npos);
}
