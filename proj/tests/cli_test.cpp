#include "k3lat/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <sstream>

using namespace k3lat;
using report::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string shell(const std::string& args, int* code) {
  std::string cmd = std::string(K3LAT_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  *code = WEXITSTATUS(status);
  return out;
}

}  // namespace

TEST(Cli, AnalyzeFamilyLattice) {
  const auto r = run({"analyze", "--gram", "4,16,16,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], "k3lat/1");
  EXPECT_EQ(j["results"]["r"], "248");
  EXPECT_EQ(j["results"]["aut"], "infinite-dihedral");
  EXPECT_EQ(j["results"]["gizatullin"], "no-nontrivial-automorphism-induced");
  EXPECT_EQ(j["results"]["aut_group"]["involutions"][0]["matrix"],
            Json::parse(R"([["127","1008"],["-16","-127"]])"));
}

TEST(Cli, PellCertificate) {
  const auto r = run({"pell", "--r", "248", "--rhs", "-8"});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["results"]["solvable"], false);
  EXPECT_TRUE(j["results"]["bound"].is_string());
  EXPECT_FALSE(j["results"]["prefilters"].empty());
  EXPECT_FALSE(j["certificates"].empty());
}

TEST(Cli, FamilyThreshold) {
  const auto seven = run({"family", "--n", "7"});
  EXPECT_EQ(seven.code, 2);
  const Json j = Json::parse(seven.out);
  EXPECT_EQ(j["results"]["gizatullin"], "inconclusive: r=188 ≤ 225");
  EXPECT_EQ(run({"family", "--n", "8"}).code, 0);
}

TEST(Cli, GoldenExitCodes) {
  const std::vector<std::pair<std::vector<std::string>, int>> golden{
      {{"analyze", "--gram", "4,16,16,2"}, 0},
      {{"analyze", "--gram", "4,16,16,2", "--mode", "paper-criterion", "--format", "text"}, 0},
      {{"analyze", "--gram", "4,14,14,2"}, 2},
      {{"analyze", "--gram", "4,4,4,2"}, 1},
      {{"analyze", "--gram", "3,1,1,2"}, 1},
      {{"analyze", "--gram", "4,16,15,2"}, 1},
      {{"analyze", "--gram", "4,x,16,2"}, 1},
      {{"family", "--n", "8"}, 0},
      {{"family", "--n", "7"}, 2},
      {{"family", "--n", "1"}, 1},
      {{"pell", "--r", "248", "--rhs", "-8"}, 0},
      {{"scan", "--from", "2", "--to", "9", "--jobs", "3"}, 0},
      {{"analyze", "--bogus"}, 1},
      {{"scan", "--from", "9", "--to", "8"}, 1},
  };
  for (const auto& [args, code] : golden) {
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_EQ(run(args).code, code) << joined;
  }
}

TEST(Cli, JsonRoundTrip) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"analyze", "--gram", "4,16,16,2"},
           {"analyze", "--gram", "4,2,2,-56"},
           {"family", "--n", "14"},
           {"pell", "--r", "92", "--rhs", "4"},
           {"scan", "--from", "2", "--to", "10"}}) {
    const auto r = run(args);
    EXPECT_EQ(Json::parse(r.out).dump(2) + "\n", r.out);
  }
}

TEST(Cli, BigIntegersAreStrings) {
  const auto r = run({"family", "--n", "40"});
  const Json j = Json::parse(r.out);
  const auto& tau = j["results"]["matrices"]["tau"];
  EXPECT_TRUE(tau[0][1].is_string());
  EXPECT_EQ(tau[0][1].get<std::string>(), to_string(8 * pow(Integer(40), 7) - 24 * pow(Integer(40), 5) +
                                                     20 * pow(Integer(40), 3) - 160));
}

TEST(Cli, ScanRowsAndDeterminism) {
  const auto a = run({"scan", "--from", "2", "--to", "9", "--jobs", "1"});
  const auto b = run({"scan", "--from", "2", "--to", "9", "--jobs", "4"});
  const Json ja = Json::parse(a.out), jb = Json::parse(b.out);
  EXPECT_EQ(ja["results"], jb["results"]);
  const auto& rows = ja["results"]["rows"];
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(rows[i]["verdict"], "inconclusive");
  EXPECT_EQ(rows[0]["pell_hypothesis"], "fails");
  EXPECT_EQ(rows[6]["n"], "8");
  EXPECT_EQ(rows[6]["pell_hypothesis"], "holds");
  EXPECT_EQ(rows[6]["aut"], "infinite-dihedral");
  EXPECT_EQ(rows[6]["verdict"], "excluded");
}

TEST(Cli, ExecutableMatchesInProcess) {
  int code = -1;
  const std::string out = shell("family --n 8", &code);
  EXPECT_EQ(code, 0);
  EXPECT_EQ(out, run({"family", "--n", "8"}).out);
  shell("family --n 7", &code);
  EXPECT_EQ(code, 2);
}
