// Copyright 2026 The epsmult Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "epsmult/serialize.hpp"

namespace epsmult {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "eps");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

TEST(Cli, H0) {
  const auto r = run({"h0", "--ideal", "x*y^2, x^2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"length\":2,\"method\":\"box-enumeration\"}\n");
  const auto w = run({"h0", "--ideal", "[[1,2],[2,0]]", "--method", "staircase", "--witnesses"});
  EXPECT_EQ(w.code, 0);
  EXPECT_EQ(w.out, "{\"length\":2,\"method\":\"staircase-2d\",\"witnesses\":[[1,0],[1,1]]}\n");
  EXPECT_EQ(run({"h0", "--ideal", "x^2, y^2", "--method", "takayama"}).out,
            "{\"length\":4,\"method\":\"takayama\"}\n");
}

TEST(Cli, Epsilon) {
  const auto r = run({"epsilon", "--ideal", "x^2, y^2", "--method", "both"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"epsilon\":\"4/1\",\"methods_agree\":true}\n");
  const auto v = Json::parse(run({"epsilon", "--ideal", "x*y^2, x^2", "--method", "volume"}).out);
  EXPECT_EQ(v["epsilon"], "2/1");
  const auto f = Json::parse(run({"epsilon", "--ideal", "x*y^2, x^2", "--method", "fit"}).out);
  EXPECT_EQ(f["epsilon"], "2/1");
  EXPECT_EQ(f["report"]["raw_limit"], "1/1");
}

TEST(Cli, Newton) {
  const auto all = Json::parse(run({"newton", "--ideal", "x*y^2, x^2"}).out);
  EXPECT_EQ(all["analytic_spread"], 2);
  EXPECT_EQ(all["out_region"]["epsilon"], "2/1");
  const auto facets = Json::parse(run({"newton", "--ideal", "x*y^2, x^2", "--facets"}).out);
  EXPECT_EQ(facets.size(), 1u);
  EXPECT_EQ(facets["facets"].size(), 3u);
  EXPECT_EQ(run({"newton", "--ideal", "x", "--spread"}).out, "{\"analytic_spread\":1}\n");
  const auto vertices = Json::parse(run({"newton", "--ideal", "x^2, y^2", "--vertices"}).out);
  EXPECT_EQ(vertices["vertices"], Json::parse(R"([["0/1","2/1"],["2/1","0/1"]])"));
}

TEST(Cli, Mixed) {
  const auto r = run({"mixed", "--ideals", "x*y^2, x^2;x*y^2, x^2", "--grid", "1:8", "--degree", "2"});
  EXPECT_EQ(r.code, 0);
  const auto j = Json::parse(r.out);
  const auto report = epsilon_report_from_json(j["epsilons"]);
  EXPECT_EQ(report.mixed, (std::map<Exponents, Rational>{{{2, 0}, 2}, {{1, 1}, 2}, {{0, 2}, 2}}));
}

TEST(Cli, FamilyCommands) {
  const auto spec = write_temp("counter_n2.json", R"({"d":2,"rule":{"type":"counter","a":"n^2"}})");
  const auto check = run({"family", "check", "--spec", spec, "--N", "20", "--mode", "graded"});
  EXPECT_EQ(check.code, 0);
  EXPECT_EQ(check.out, "{\"N\":20,\"mode\":\"graded\",\"pass\":true,\"violation\":null}\n");

  const auto eval = Json::parse(run({"family", "eval", "--spec", spec, "--n", "3"}).out);
  EXPECT_EQ(eval["values"][0]["text"], "x*y^9, x^2");

  const auto growth = Json::parse(run({"family", "growth", "--spec", spec, "--range", "5:6"}).out);
  EXPECT_EQ(growth["values"][1]["minimal_c_linear"], 7);

  const auto table = run({"family", "run", "--spec", spec, "--range", "1:4", "--normalizer", "n^3"});
  EXPECT_EQ(table.code, 0);
  const auto j = Json::parse(table.out);
  EXPECT_EQ(j["table"]["entries"][3]["length"], 16);
  EXPECT_EQ(j["convergence"]["trend"], "decreasing");

  const auto csv = run({"family", "run", "--spec", spec, "--range", "1:3", "--csv"});
  EXPECT_EQ(csv.out, "index,length,normalized_value\n1,1,1\n2,4,1\n3,9,1\n");

  const auto path = ::testing::TempDir() + "table.csv";
  const auto to_file = run({"family", "run", "--spec", spec, "--range", "1:2", "--csv", path});
  EXPECT_EQ(to_file.code, 0);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), "index,length,normalized_value\n1,1,1\n2,4,1\n");
  EXPECT_NO_THROW(Json::parse(to_file.out));
}

TEST(Cli, InlineSpecAndFit) {
  const auto r = run({"family", "run", "--spec", R"({"rule":{"type":"power","ideal":[[1,2],[2,0]]}})", "--range",
                      "1:10", "--degree", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["epsilons"]["epsilon"], "2/1");
  const auto nofit = run({"family", "run", "--spec", R"({"rule":{"type":"counter","a":"2^n"}})", "--range", "1:30",
                          "--degree", "2"});
  EXPECT_EQ(nofit.code, 3);
  EXPECT_TRUE(Json::parse(nofit.out)["fit"].contains("attempts"));
}

TEST(Cli, Delta) {
  const auto r = Json::parse(run({"delta", "--ideal", "x*y^2, x^2", "--a", "0,5"}).out);
  EXPECT_EQ(r["text"], "{{}, {2}}");
  const auto s = Json::parse(run({"delta", "--ideal", "x*y^2, x^2", "--a", "1,1"}).out);
  EXPECT_EQ(s["local_cohomology"][0], 1);
}

TEST(Cli, Repro) {
  for (const char* c : {"example-counter", "mixed-grid", "irrational", "jm-volume"}) {
    const auto r = run({"repro", "--case", c});
    EXPECT_EQ(r.code, 0) << c;
    EXPECT_TRUE(Json::parse(r.out)["pass"].get<bool>()) << c;
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"h0"}).code, 1);
  const auto parse = run({"h0", "--ideal", "x^^2"});
  EXPECT_EQ(parse.code, 1);
  EXPECT_NE(parse.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"h0", "--ideal", "0"}).code, 1);
  EXPECT_EQ(run({"h0", "--ideal", "0", "--method", "box"}).code, 1);
  EXPECT_EQ(run({"h0", "--ideal", "[[1,1,1]]", "--method", "staircase"}).code, 2);
  EXPECT_EQ(run({"newton", "--ideal", "1"}).code, 1);
  EXPECT_EQ(run({"family", "check", "--spec", R"({"rule":{"type":"sqrt","k":4}})"}).code, 2);
  EXPECT_EQ(run({"family", "eval", "--spec", "/nonexistent/spec.json", "--n", "1"}).code, 1);
  EXPECT_EQ(run({"--json", "--csv", "h0", "--ideal", "x"}).code, 1);
  EXPECT_EQ(run({"repro", "--case", "nope"}).code, 1);
}

TEST(Cli, GlobalFlags) {
  const auto csv = run({"--csv", "h0", "--ideal", "x*y^2, x^2"});
  EXPECT_EQ(csv.out, "key,value\nlength,2\nmethod,box-enumeration\n");
  const auto threads = run({"--threads", "3", "h0", "--ideal", "x^3*y^2, x^2*y^4, y^7"});
  EXPECT_EQ(threads.out, run({"h0", "--ideal", "x^3*y^2, x^2*y^4, y^7"}).out);
  const auto timed = run({"--timeout", "60", "h0", "--ideal", "x*y^2, x^2"});
  EXPECT_EQ(timed.code, 0);
  EXPECT_EQ(timed.out, "{\"length\":2,\"method\":\"box-enumeration\"}\n");
  EXPECT_EQ(run({"--seed", "5", "repro", "--case", "example-counter"}).code, 0);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args = {"family", "run", "--spec", R"({"rule":{"type":"limit_recursive"}})",
                                         "--range", "1:12", "--normalizer", "n^2*ln(n)"};
  auto with_threads = args;
  with_threads.insert(with_threads.begin(), {"--threads", "4"});
  EXPECT_EQ(run(args).out, run(args).out);
  EXPECT_EQ(run(args).out, run(with_threads).out);
}

}  // namespace
}  // namespace epsmult
