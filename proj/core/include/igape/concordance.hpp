#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace igape {

struct DecisionOutcome;

/// k judges x N alternatives; every row is a permutation of 1..N.
struct RankMatrix {
  std::vector<std::string> judges;
  std::vector<std::string> alternatives;
  std::vector<int> ranks;  // row-major, judges x alternatives

  std::size_t k() const noexcept { return judges.size(); }
  std::size_t n() const noexcept { return alternatives.size(); }
  int at(std::size_t judge, std::size_t alternative) const { return ranks.at(judge * n() + alternative); }

  /// Throws Error{Degenerate} when k < 2 or N < 2, Error{RankValidity}
  /// naming the judge and rank when a row is not a permutation.
  void check() const;

  friend bool operator==(const RankMatrix&, const RankMatrix&) = default;
};

inline constexpr double kGoodAgreementThreshold = 0.70;

struct ConcordanceResult {
  std::vector<long long> rank_sums;  // R_j
  double mean_rank_sum = 0.0;        // R' = sum(R_j) / N
  double s = 0.0;                    // sum of squared deviations from R'
  double w = 0.0;                    // s / ((k^2/12)(N^3 - N))
  double threshold = kGoodAgreementThreshold;
  bool good_agreement = false;
  std::vector<std::size_t> consensus_order;  // ascending R_j, ties by declaration order
  bool consensus_ties = false;

  friend bool operator==(const ConcordanceResult&, const ConcordanceResult&) = default;
};

/// Kendall's coefficient of concordance without tie correction.
ConcordanceResult kendall_w(const RankMatrix& matrix, double threshold = kGoodAgreementThreshold);

/// One expert's answer: ranks per alternative in panel order, plus the
/// recommended and rejected alternatives (rank 1 / rank N when absent).
struct ExpertJudgment {
  std::string label;
  std::vector<int> ranks;
  std::optional<std::string> chosen;
  std::optional<std::string> rejected;

  friend bool operator==(const ExpertJudgment&, const ExpertJudgment&) = default;
};

struct ExpertPanel {
  std::vector<std::string> alternatives;
  std::vector<ExpertJudgment> experts;

  static ExpertPanel from_rank_matrix(const RankMatrix& matrix);
};

/// The method's own answer, alternatives best first.
struct MethodRanking {
  std::string label = "Our method";
  std::vector<std::string> order;
  std::string chosen;
  std::string rejected;

  /// Ranking, chosen and rejected alternatives of a scenario outcome.
  static MethodRanking from_outcome(const DecisionOutcome& outcome);
};

struct ComparisonRow {
  std::string judge;
  std::string chosen;
  std::string rejected;
  std::vector<std::string> ranking;  // best first
  bool chosen_matches = false;
  bool rejected_matches = false;
  bool full_match = false;

  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;  // method first, then experts
  std::size_t experts = 0;
  std::size_t chose_same = 0;
  std::size_t rejected_same = 0;
  std::size_t full_matches = 0;
  RankMatrix matrix;  // method + experts, panel alternative order
  ConcordanceResult concordance;
};

/// Compares the method's answer with each expert and computes Kendall's W
/// over all rows including the method. Throws Error{Alignment} when the
/// label sets differ.
ComparisonReport expert_comparison(const MethodRanking& method, const ExpertPanel& panel);
ComparisonReport expert_comparison(const DecisionOutcome& outcome, const ExpertPanel& panel);

}  // namespace igape
