#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "igape/cli.hpp"
#include "igape/persistence.hpp"

using namespace igape;
using igape::testing::data_path;
using igape::testing::TempDir;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string model() { return data_path("payment.igape.json").string(); }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Cli, ConcordPrintsGoodAgreement) {
  const auto r = cli({"concord", data_path("panel-ranks.csv").string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(lines(r.out), (std::vector<std::string>{"W = 0.771 (good agreement)", "R = (9, 18, 15, 28)", "s = 189",
                                                     "consensus: A1 > A3 > A2 > A4"}));
}

TEST(Cli, ConcordThresholdAndFormats) {
  auto r = cli({"concord", data_path("panel-ranks.csv").string(), "--threshold", "0.8"});
  EXPECT_TRUE(contains(r.out, "W = 0.771 (weak agreement)"));
  r = cli({"concord", data_path("panel-ranks.csv").string(), "--format", "csv"});
  EXPECT_TRUE(contains(r.out, "Sum of Ranks,9,18,15,28"));
  r = cli({"concord", data_path("panel-ranks.csv").string(), "--format", "json"});
  EXPECT_TRUE(contains(r.out, "\"w\": 0.7714285714285715"));
  EXPECT_EQ(cli({"concord", data_path("panel-ranks.csv").string(), "--threshold", "2"}).code, kExitUsage);
}

TEST(Cli, DecideGatewayNamesChosenAndRejected) {
  const auto r = cli({"decide", model(), "--scenario", "gateway"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto out = lines(r.out);
  ASSERT_GE(out.size(), 8u);
  EXPECT_EQ(out[0], "chosen: Option D");
  EXPECT_EQ(out[1], "rejected: Option A");
  EXPECT_TRUE(contains(r.out, "0.7726"));
  EXPECT_TRUE(contains(r.out, "closeness"));
  const auto d = r.out.find("Option D", r.out.find("rank"));
  const auto b = r.out.find("Option B", d);
  const auto c = r.out.find("Option C", b);
  const auto a = r.out.find("Option A", c);
  EXPECT_NE(a, std::string::npos);
}

TEST(Cli, DecideSupportShowsSelections) {
  const auto r = cli({"decide", model(), "--scenario", "support"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "goal"));
  EXPECT_TRUE(contains(r.out, "Purchase Support"));
}

TEST(Cli, ValidateBrokenFixtureReportsOneViolation) {
  const auto r = cli({"validate", data_path("broken.igape.json").string()});
  EXPECT_EQ(r.code, kExitDomain);
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(contains(out[0], "[classification.leaf-only] usability")) << out[0];
  EXPECT_TRUE(contains(r.err, "1 error(s)"));
}

TEST(Cli, ValidateCleanFixture) {
  const auto r = cli({"validate", model()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty()) << r.out;
  EXPECT_TRUE(contains(r.err, "0 error(s)"));
}

TEST(Cli, WeightsPrintsTwelveRowsAtFourDecimals) {
  const auto r = cli({"weights", model(), "--hierarchy", "gateway-qr"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), 13u);
  EXPECT_TRUE(contains(out[0], "criterion"));
  const std::vector<std::string> expected{"0.0519", "0.1060", "0.0771", "0.1250", "0.0495", "0.2312",
                                          "0.1132", "0.0482", "0.0574", "0.0301", "0.0663", "0.0442"};
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_EQ(out[i + 1].substr(out[i + 1].size() - 6), expected[i]) << out[i + 1];
  }
}

TEST(Cli, RankPrintsOrder) {
  const auto r = cli({"rank", model(), "--scenario", "gateway"});
  EXPECT_EQ(r.code, kExitOk);
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), 5u);
  EXPECT_TRUE(contains(out[1], "Option D"));
  EXPECT_TRUE(contains(out[2], "Option B"));
  EXPECT_TRUE(contains(out[3], "Option C"));
  EXPECT_TRUE(contains(out[4], "Option A"));
}

TEST(Cli, CompareAgainstExperts) {
  const auto r = cli({"compare", model(), "--scenario", "gateway", "--experts",
                      data_path("gateway-experts.csv").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "4 of 6 experts chose the same alternative"));
  EXPECT_TRUE(contains(r.out, "6 of 6 experts rejected the same alternative"));
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"decide", model(), "--scenario", "gateway", "--json"},
           {"weights", model(), "--hierarchy", "gateway-qr"},
           {"concord", data_path("panel-ranks.csv").string(), "--format", "csv"}}) {
    EXPECT_EQ(cli(args).out, cli(args).out);
  }
}

TEST(Cli, ReportFiles) {
  TempDir dir;
  auto r = cli({"report", model(), "--kind", "concordance", "--ranks", data_path("panel-ranks.csv").string(), "--out",
                (dir / "t13.csv").string(), "--format", "tabular"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(contains(read_file(dir / "t13.csv"), "Sum of Ranks,9,18,15,28"));

  r = cli({"report", model(), "--scenario", "gateway", "--out", (dir / "d.md").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_file(dir / "d.md").rfind("# Decision: gateway", 0), 0u);

  r = cli({"report", model(), "--kind", "weights", "--hierarchy", "gateway-qr", "--out", (dir / "w.md").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto first = read_file(dir / "w.md");
  cli({"report", model(), "--kind", "weights", "--hierarchy", "gateway-qr", "--out", (dir / "w.md").string()});
  EXPECT_EQ(read_file(dir / "w.md"), first);

  r = cli({"report", model(), "--kind", "comparison", "--scenario", "gateway", "--out", (dir / "c.md").string()});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"decide", model()}).code, kExitUsage);
  EXPECT_EQ(cli({"decide", "/nonexistent.igape.json", "--scenario", "gateway"}).code, kExitUsage);
  const auto unknown = cli({"decide", model(), "--scenario", "nope"});
  EXPECT_EQ(unknown.code, kExitDomain);
  EXPECT_TRUE(contains(unknown.err, "scenario.unknown"));
  EXPECT_TRUE(unknown.out.empty());
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST(Cli, PolicyErrorIsDomainFailure) {
  TempDir dir;
  auto doc = load_model(model());
  auto& s = doc.scenarios.at("support");
  s.policy = TopK{5, {}};
  save_model(doc, dir / "m.igape.json");
  const auto r = cli({"decide", (dir / "m.igape.json").string(), "--scenario", "support"});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_TRUE(contains(r.err, "policy.infeasible")) << r.err;
}

TEST(Cli, ConsistencyWarningsGoToStderr) {
  TempDir dir;
  auto doc = load_model(model());
  doc.hierarchies.at("gateway-qr").find("1")->local =
      Judgments{ComparisonMatrix::from_rows({{1, 3, 1.0 / 2}, {1.0 / 3, 1, 4}, {2, 1.0 / 4, 1}})};
  save_model(doc, dir / "m.igape.json");
  const auto r = cli({"decide", (dir / "m.igape.json").string(), "--scenario", "gateway"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.err, "warning: criterion '1': consistency ratio")) << r.err;
  EXPECT_FALSE(contains(r.out, "warning"));
}
