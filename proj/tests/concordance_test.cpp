#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "igape/concordance.hpp"
#include "igape/error.hpp"
#include "igape/persistence.hpp"

using namespace igape;
using igape::testing::data_path;
using igape::testing::payment_document;

namespace {

RankMatrix matrix(std::vector<std::vector<int>> rows, std::vector<std::string> alts) {
  RankMatrix m;
  m.alternatives = std::move(alts);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    m.judges.push_back("J" + std::to_string(j + 1));
    m.ranks.insert(m.ranks.end(), rows[j].begin(), rows[j].end());
  }
  return m;
}

template <typename F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  return Error(ErrorKind::Reference, "<no error>", "");
}

MethodRanking printed_method_row() {
  MethodRanking m;
  m.order = {"opt-d", "opt-c", "opt-b", "opt-a"};
  m.chosen = "opt-d";
  m.rejected = "opt-a";
  return m;
}

}  // namespace

TEST(KendallW, SevenJudgeMatrix) {
  const auto r = kendall_w(import_rank_matrix(data_path("panel-ranks.csv")));
  EXPECT_EQ(r.rank_sums, (std::vector<long long>{9, 18, 15, 28}));
  EXPECT_DOUBLE_EQ(r.mean_rank_sum, 17.5);
  EXPECT_DOUBLE_EQ(r.s, 189.0);
  EXPECT_NEAR(r.w, 189.0 / 245.0, 1e-15);
  EXPECT_NEAR(r.w, 0.771, 0.0005);
  EXPECT_TRUE(r.good_agreement);
  EXPECT_EQ(r.consensus_order, (std::vector<std::size_t>{0, 2, 1, 3}));
  EXPECT_FALSE(r.consensus_ties);
}

TEST(KendallW, PerfectAgreementIsOne) {
  const auto r = kendall_w(matrix({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}}, {"a", "b", "c"}));
  EXPECT_EQ(r.s, 18.0);
  EXPECT_EQ(r.w, 1.0);
}

TEST(KendallW, OppositePairIsZero) {
  const auto r = kendall_w(matrix({{1, 2}, {2, 1}}, {"a", "b"}));
  EXPECT_EQ(r.rank_sums, (std::vector<long long>{3, 3}));
  EXPECT_EQ(r.s, 0.0);
  EXPECT_EQ(r.w, 0.0);
  EXPECT_FALSE(r.good_agreement);
  EXPECT_TRUE(r.consensus_ties);
  EXPECT_EQ(r.consensus_order, (std::vector<std::size_t>{0, 1}));
}

TEST(KendallW, ThresholdOverride) {
  const auto m = import_rank_matrix(data_path("panel-ranks.csv"));
  EXPECT_FALSE(kendall_w(m, 0.8).good_agreement);
  EXPECT_TRUE(kendall_w(m, 0.771).good_agreement);
  EXPECT_EQ(kendall_w(m, 0.8).threshold, 0.8);
}

TEST(KendallW, RankValidityNamesJudgeAndRank) {
  auto e = error_of([] { kendall_w(matrix({{1, 2, 3}, {1, 1, 3}}, {"a", "b", "c"})); });
  EXPECT_EQ(e.kind(), ErrorKind::RankValidity);
  EXPECT_EQ(e.rule(), "concordance.rank-duplicate");
  EXPECT_NE(e.message().find("'J2'"), std::string::npos);
  EXPECT_NE(e.message().find("rank 1"), std::string::npos);

  e = error_of([] { kendall_w(matrix({{1, 2, 4}, {1, 2, 3}}, {"a", "b", "c"})); });
  EXPECT_EQ(e.rule(), "concordance.rank-range");
  EXPECT_NE(e.message().find("'J1'"), std::string::npos);
  EXPECT_NE(e.message().find("rank 4"), std::string::npos);
}

TEST(KendallW, TooSmallOrMisshapen) {
  EXPECT_EQ(error_of([] { kendall_w(matrix({{1, 2}}, {"a", "b"})); }).kind(), ErrorKind::Degenerate);
  EXPECT_EQ(error_of([] { kendall_w(matrix({{1}, {1}}, {"a"})); }).kind(), ErrorKind::Degenerate);
  auto m = matrix({{1, 2}, {2, 1}}, {"a", "b"});
  m.ranks.pop_back();
  EXPECT_EQ(error_of([&] { kendall_w(m); }).rule(), "concordance.shape");
}

TEST(ExpertComparison, PrintedMethodRowAgainstPanel) {
  const auto panel = ExpertPanel::from_rank_matrix(import_rank_matrix(data_path("gateway-experts.csv")));
  const auto report = expert_comparison(printed_method_row(), panel);
  EXPECT_EQ(report.experts, 6u);
  EXPECT_EQ(report.chose_same, 4u);
  EXPECT_EQ(report.rejected_same, 6u);
  EXPECT_EQ(report.full_matches, 3u);
  EXPECT_EQ(report.rows.size(), 7u);
  EXPECT_EQ(report.concordance.rank_sums, (std::vector<long long>{9, 18, 15, 28}));
  EXPECT_NEAR(report.concordance.w, 0.771, 0.0005);
}

TEST(ExpertComparison, ComputedOutcomeAgainstPanel) {
  const auto outcome = run_scenario(payment_document(), "gateway").outcomes.at(0);
  const auto panel = ExpertPanel::from_rank_matrix(import_rank_matrix(data_path("gateway-experts.csv")));
  const auto report = expert_comparison(outcome, panel);
  EXPECT_EQ(report.rows[0].ranking, (std::vector<std::string>{"opt-d", "opt-b", "opt-c", "opt-a"}));
  EXPECT_EQ(report.chose_same, 4u);
  EXPECT_EQ(report.rejected_same, 6u);
  EXPECT_EQ(report.full_matches, 1u);
  EXPECT_TRUE(report.rows[1].full_match);
}

TEST(ExpertComparison, ExpertIdenticalToMethodIsFlagged) {
  ExpertPanel panel{{"x", "y", "z"}, {{"E1", {1, 2, 3}, {}, {}}, {"E2", {3, 2, 1}, {}, {}}}};
  MethodRanking method{"M", {"x", "y", "z"}, "x", "z"};
  const auto report = expert_comparison(method, panel);
  EXPECT_TRUE(report.rows[1].full_match);
  EXPECT_TRUE(report.rows[1].chosen_matches);
  EXPECT_FALSE(report.rows[2].full_match);
  EXPECT_FALSE(report.rows[2].rejected_matches);
  EXPECT_EQ(report.rows[2].ranking, (std::vector<std::string>{"z", "y", "x"}));
}

TEST(ExpertComparison, RepeatedMethodRankingHasFullConcordance) {
  ExpertPanel panel{{"x", "y", "z"}, {{"E1", {2, 1, 3}, {}, {}}, {"E2", {2, 1, 3}, {}, {}}}};
  MethodRanking method{"M", {"y", "x", "z"}, "y", "z"};
  EXPECT_EQ(expert_comparison(method, panel).concordance.w, 1.0);
}

TEST(ExpertComparison, ExplicitChosenAndRejectedOverrideRanks) {
  ExpertPanel panel{{"x", "y"}, {{"E1", {2, 1}, std::string("x"), std::string("y")}}};
  MethodRanking method{"M", {"x", "y"}, "x", "y"};
  const auto report = expert_comparison(method, panel);
  EXPECT_EQ(report.chose_same, 1u);
  EXPECT_EQ(report.rejected_same, 1u);
  EXPECT_EQ(report.full_matches, 0u);
}

TEST(ExpertComparison, LabelMismatchIsAlignmentError) {
  ExpertPanel panel{{"x", "y"}, {{"E1", {1, 2}, {}, {}}}};
  MethodRanking method{"M", {"x", "w"}, "x", "w"};
  EXPECT_EQ(error_of([&] { expert_comparison(method, panel); }).kind(), ErrorKind::Alignment);
  panel.experts[0].chosen = "q";
  method.order = {"x", "y"};
  method.rejected = "y";
  EXPECT_EQ(error_of([&] { expert_comparison(method, panel); }).rule(), "concordance.alignment");
  panel.experts[0] = {"E1", {1, 2, 3}, {}, {}};
  EXPECT_EQ(error_of([&] { expert_comparison(method, panel); }).kind(), ErrorKind::Alignment);
}
