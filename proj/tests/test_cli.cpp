#include "shadowlab/cli.hpp"

#include <gtest/gtest.h>

using namespace shadowlab;
using namespace shadowlab::cli;

namespace {

RunConfig config(std::string command) {
  RunConfig c;
  c.command = std::move(command);
  return c;
}

}  // namespace

TEST(CliParse, Metrics) {
  EXPECT_EQ(make_metric("prod").name(), "rate:dyadic");
  EXPECT_EQ(make_metric("rate:harmonic").name(), "rate:harmonic");
  EXPECT_EQ(make_metric("rate:dyadic*3/2").name(), "rate:dyadic*3/2");
  EXPECT_EQ(make_metric("otw:block").name(), "otw:block");
  EXPECT_EQ(make_metric("otw:bad").name(), "otw:bad");
  EXPECT_THROW(make_metric("otw:other"), UsageError);
  EXPECT_THROW(make_metric("rate:cubic"), UsageError);
  EXPECT_THROW(make_metric("hamming"), UsageError);
}

TEST(CliParse, Grids) {
  const std::vector<Rational> range = parse_grid("2^-2..2^-4");
  EXPECT_EQ(range, (std::vector<Rational>{pow2_neg(2), pow2_neg(3), pow2_neg(4)}));
  EXPECT_EQ(parse_grid("1/3,2^-5"), (std::vector<Rational>{Rational(1, 3), pow2_neg(5)}));
  EXPECT_THROW(parse_grid("2^-4..2^-2"), UsageError);
  EXPECT_THROW(parse_grid("1/3..2^-2"), UsageError);
}

TEST(CliRun, DistanceReport) {
  RunConfig c = config("distance");
  c.x = "(1)";
  c.y = "(2)";
  const Outcome out = run(c);
  EXPECT_EQ(out.exit_code, kOk);
  EXPECT_EQ(out.report["result"]["model"], "otw:block");
  EXPECT_EQ(out.report["result"]["rank"], "2");
  EXPECT_EQ(out.report["tool"], "shadowlab");
  EXPECT_TRUE(out.report["pass"].get<bool>());

  c.metric = "prod";
  c.x = "1.2(9)";
  c.y = "1.3(9)";
  const Outcome prod = run(c);
  EXPECT_EQ(prod.report["result"]["rank"], "1");
  EXPECT_EQ(prod.report["result"]["value"], "1/2");
  EXPECT_EQ(prod.csv, "model,rank,value\nrate:dyadic,1,1/2\n");

  c.y = "1.2(9)";
  EXPECT_EQ(run(c).report["result"]["rank"], "inf");
}

TEST(CliRun, UsageErrors) {
  EXPECT_THROW(run(config("distance")), UsageError);
  EXPECT_THROW(run(config("shadow")), UsageError);
  RunConfig c = config("validate");
  c.format = "xml";
  EXPECT_THROW(run(c), UsageError);
  RunConfig d = config("distance");
  d.x = "1.0";
  d.y = "1";
  EXPECT_THROW(run(d), ParseError);
}

TEST(CliRun, CounterexampleReport) {
  RunConfig c = config("counterexample");
  c.L = "4";
  const Outcome out = run(c);
  EXPECT_EQ(out.exit_code, kOk);
  const Json& r = out.report["result"];
  EXPECT_EQ(r["instance"]["n"], 3);
  EXPECT_EQ(r["instance"]["i_n"], 11);
  EXPECT_EQ(r["instance"]["w"], "7.8.9");
  EXPECT_TRUE(r["verdict"]["accepted"].get<bool>());
  EXPECT_NE(out.csv.find("w,7.8.9\n"), std::string::npos);
}

TEST(CliRun, ValidateReports) {
  RunConfig c = config("validate");
  c.entries = 500;
  const Outcome block = run(c);
  EXPECT_EQ(block.exit_code, kOk);
  EXPECT_EQ(block.csv.rfind("index,word\n1,e\n2,1\n3,2\n", 0), 0U);

  c.enumeration = "bad";
  c.stages = 4;
  c.entries = 100;
  const Outcome bad = run(c);
  EXPECT_EQ(bad.exit_code, kOk);
  EXPECT_EQ(bad.csv.rfind("index,word\n1,e\n2,1\n3,1.2.3\n", 0), 0U);
}

TEST(CliRun, ProbeExitCodes) {
  RunConfig good = config("probe");
  good.trials = 10;
  good.grid = "2^-2..2^-6";
  EXPECT_EQ(run(good).exit_code, kOk);

  RunConfig prod = good;
  prod.metric = "prod";
  prod.order = 2;
  prod.forbid = "1.1,2.3";
  const Outcome p = run(prod);
  EXPECT_EQ(p.exit_code, kOk);
  EXPECT_EQ(p.report["result"]["delta0"], "2^-1");

  RunConfig bad = config("probe");
  bad.metric = "otw:bad";
  bad.stages = 3;
  const Outcome b = run(bad);
  EXPECT_EQ(b.exit_code, kCheckFailed);
  EXPECT_EQ(b.report["failures"].size(), 2U);
}

TEST(CliRun, SameSeedSameResult) {
  RunConfig c = config("probe");
  c.trials = 15;
  c.grid = "2^-2..2^-7";
  c.seed = 99;
  EXPECT_EQ(run(c).report["result"], run(c).report["result"]);
  RunConfig m = config("modulus");
  m.trials = 50;
  EXPECT_EQ(run(m).report["result"], run(m).report["result"]);
}

TEST(CliRun, ModulusReport) {
  RunConfig c = config("modulus");
  c.trials = 100;
  const Outcome out = run(c);
  EXPECT_EQ(out.exit_code, kOk);
  EXPECT_EQ(out.report["result"]["samples"], 100);
  EXPECT_EQ(out.csv.rfind("source,target,rank,pairs,min_target_rank,max_deficit\n", 0), 0U);
}
