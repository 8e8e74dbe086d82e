#include <gtest/gtest.h>

#include <sstream>

#include "crsurg/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(std::vector<std::string> args) {
  std::ostringstream os;
  const int code = crsurg::cli::dispatch(std::move(args), os);
  return {code, os.str()};
}

std::string fixture(const std::string& name) { return std::string(CRSURG_FIXTURES) + "/" + name; }

crsurg::Json json_of(const Run& r) { return crsurg::Json::parse(r.out); }

}  // namespace

TEST(Cli, Homology) {
  auto r = run({"homology", fixture("unknot_round2.crs")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, R"({"components":[{"free_rank":1,"torsion":[]},{"free_rank":0,"torsion":[]}]})"
                   "\n");
  r = run({"homology", fixture("hopf_pm1.crs")});
  EXPECT_EQ(json_of(r)["components"][0]["torsion"], crsurg::Json::array({3}));
  r = run({"homology", fixture("hopf_round1.crs")});
  EXPECT_EQ(json_of(r)["components"][0]["free_rank"], 2);
  r = run({"homology", "--diagram", "lens", fixture("layers.crs")});
  EXPECT_EQ(json_of(r)["components"][0]["torsion"], crsurg::Json::array({3}));
  EXPECT_EQ(json_of(r)["components"][1]["torsion"], crsurg::Json::array({2}));
}

TEST(Cli, ContinuedFraction) {
  auto r = run({"cf", "-5/2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"cf\":[-3,-2]}\n");
  r = run({"cf", "-1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json_of(r)["error"], "DomainError");
  EXPECT_EQ(run({"cf", "abc"}).code, 2);
}

TEST(Cli, CountTight) {
  auto j = json_of(run({"count-tight", "--slope0", "-1", "--slope1", "-5/2"}));
  EXPECT_EQ(j["count"]["kind"], "finite");
  EXPECT_EQ(j["count"]["value"], 4);
  j = json_of(run({"count-tight", "--slope0", "-1", "--slope1", "-1", "--twisting", "2"}));
  EXPECT_EQ(j["count"]["kind"], "two_per_twisting");
  j = json_of(run({"count-tight", "--slope0", "-1", "--slope1", "-1"}));
  EXPECT_EQ(j["count"]["kind"], "infinite_z_indexed");
  j = json_of(run({"count-tight", "--slope0", "inf", "--slope1", "0"}));
  EXPECT_EQ(j["slope0"], "-1");
  j = json_of(run({"count-tight", "--slope0", "-1", "--slope1", "-1", "--ndiv", "4"}));
  EXPECT_EQ(j["count"]["kind"], "unsupported");
  EXPECT_EQ(run({"count-tight", "--slope0", "-1", "--slope1", "-1", "--ndiv", "3"}).code, 1);
}

TEST(Cli, EnumAndGlue) {
  auto j = json_of(run({"enum-configs", "--n0", "1", "--n1", "1", "--max-winding", "2"}));
  EXPECT_EQ(j["count"], 5);
  auto r = run({"glue-annuli", "--a", "arcs(1,1)[t0-b0 t1-b1 w=0]", "--b", "arcs(1,1)[t0~t1 b0~b1]"});
  EXPECT_EQ(r.code, 0);
  j = json_of(r);
  EXPECT_EQ(j["overtwisted"], true);
  r = run({"glue-annuli", "--a", "arcs(1,1)[t0-b0 t1-b1 w=0]", "--b", "arcs(2,2)[t0-b0 t1-b1 t2-b2 t3-b3 w=0]"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json_of(r)["error"], "MarkMismatch");
}

TEST(Cli, Gadget) {
  auto r = run({"gadget", "--m", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["self_test"]["h1"]["free_rank"], 0);
  r = run({"gadget", "--m", "2", "--linking", "star"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(json_of(r)["error"], "GadgetSelfTestFailed");
  EXPECT_EQ(run({"gadget", "--m", "0"}).code, 1);
}

TEST(Cli, BridgeCommands) {
  auto r = run({"to-round", fixture("case1.crs")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["plan"]["case"], 1);
  EXPECT_EQ(json_of(r)["plan"]["pairs"].size(), 2u);
  r = run({"to-round", "--diagram", "plus_and_minus", fixture("parity_cases.crs")});
  EXPECT_EQ(json_of(r)["plan"]["case"], 4);

  auto j = json_of(run({"check-nice", "--diagram", "fillable_pairs", fixture("nice_pairs.crs")}));
  for (const auto& p : j["pairs"]) EXPECT_EQ(p["nice"], true);
  j = json_of(run({"fillable", "--diagram", "fillable_pairs", fixture("nice_pairs.crs")}));
  EXPECT_EQ(j["fillable"], true);
  j = json_of(run({"fillable", "--diagram", "mixed_signs", fixture("nice_pairs.crs")}));
  EXPECT_EQ(j["fillable"], false);
  r = run({"to-pm1", "--diagram", "rotative", fixture("layers.crs")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json_of(r)["error"], "NotNice");
}

TEST(Cli, Invariants) {
  auto j = json_of(run({"invariants", "--word", "U1 U1 X2 X2 C1 C1"}));
  EXPECT_EQ(j["components"][0]["tb"], -1);
  EXPECT_EQ(j["lk"][0][1], 1);
  j = json_of(run({"invariants", "--word", "U1 U1 X2 X2 C1 C1", "--orient", "forward,reverse"}));
  EXPECT_EQ(j["lk"][0][1], -1);
  auto r = run({"invariants", "--word", "U1 C3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json_of(r)["error"], "PositionError");
}

TEST(Cli, UsageAndSyntaxErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"no-such-command"}).code, 2);
  EXPECT_EQ(run({"homology"}).code, 2);
  auto r = run({"parse", fixture("does_not_exist.crs")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json_of(r)["error"], "InvalidParameter");
}

TEST(Cli, Deterministic) {
  for (const char* f : {"case1.crs", "layers.crs", "nice_pairs.crs"})
    EXPECT_EQ(run({"parse", fixture(f)}).out, run({"parse", fixture(f)}).out);
}
