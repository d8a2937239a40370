#include "igape/concordance.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "igape/decision.hpp"
#include "igape/error.hpp"

namespace igape {

void RankMatrix::check() const {
  if (k() < 2 || n() < 2) {
    throw Error(ErrorKind::Degenerate, "concordance.size",
                "concordance needs at least two judges and two alternatives (got k=" + std::to_string(k()) +
                    ", N=" + std::to_string(n()) + ")");
  }
  if (ranks.size() != k() * n()) {
    throw Error(ErrorKind::Structure, "concordance.shape",
                "rank matrix expects " + std::to_string(k() * n()) + " entries, found " + std::to_string(ranks.size()));
  }
  const int top = static_cast<int>(n());
  for (std::size_t j = 0; j < k(); ++j) {
    std::vector<bool> seen(n() + 1, false);
    for (std::size_t a = 0; a < n(); ++a) {
      const int r = at(j, a);
      if (r < 1 || r > top) {
        throw Error(ErrorKind::RankValidity, "concordance.rank-range",
                    "judge '" + judges[j] + "' gives rank " + std::to_string(r) + " outside 1.." + std::to_string(top));
      }
      if (seen[static_cast<std::size_t>(r)]) {
        throw Error(ErrorKind::RankValidity, "concordance.rank-duplicate",
                    "judge '" + judges[j] + "' assigns rank " + std::to_string(r) + " more than once");
      }
      seen[static_cast<std::size_t>(r)] = true;
    }
  }
}

ConcordanceResult kendall_w(const RankMatrix& matrix, double threshold) {
  matrix.check();
  const std::size_t k = matrix.k();
  const std::size_t n = matrix.n();

  ConcordanceResult out;
  out.threshold = threshold;
  out.rank_sums.assign(n, 0);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t a = 0; a < n; ++a) out.rank_sums[a] += matrix.at(j, a);
  }
  const long long total = std::accumulate(out.rank_sums.begin(), out.rank_sums.end(), 0LL);
  out.mean_rank_sum = static_cast<double>(total) / static_cast<double>(n);
  for (long long r : out.rank_sums) {
    const double d = static_cast<double>(r) - out.mean_rank_sum;
    out.s += d * d;
  }
  const double kk = static_cast<double>(k);
  const double nn = static_cast<double>(n);
  out.w = out.s / ((kk * kk / 12.0) * (nn * nn * nn - nn));
  out.good_agreement = out.w >= threshold;

  out.consensus_order.resize(n);
  std::iota(out.consensus_order.begin(), out.consensus_order.end(), std::size_t{0});
  std::stable_sort(out.consensus_order.begin(), out.consensus_order.end(),
                   [&](std::size_t a, std::size_t b) { return out.rank_sums[a] < out.rank_sums[b]; });
  for (std::size_t i = 1; i < n; ++i) {
    if (out.rank_sums[out.consensus_order[i]] == out.rank_sums[out.consensus_order[i - 1]]) out.consensus_ties = true;
  }
  return out;
}

ExpertPanel ExpertPanel::from_rank_matrix(const RankMatrix& matrix) {
  ExpertPanel panel;
  panel.alternatives = matrix.alternatives;
  for (std::size_t j = 0; j < matrix.k(); ++j) {
    ExpertJudgment expert;
    expert.label = matrix.judges[j];
    for (std::size_t a = 0; a < matrix.n(); ++a) expert.ranks.push_back(matrix.at(j, a));
    panel.experts.push_back(std::move(expert));
  }
  return panel;
}

MethodRanking MethodRanking::from_outcome(const DecisionOutcome& outcome) {
  MethodRanking method;
  for (std::size_t idx : outcome.ranking.ranking) method.order.push_back(outcome.alternatives.at(idx).value);
  method.chosen = method.order.front();
  method.rejected = method.order.back();
  if (!outcome.chosen.empty()) method.chosen = outcome.chosen.front().value;
  if (!outcome.rejected.empty()) method.rejected = outcome.rejected.back().value;
  return method;
}

namespace {

void require_label(const std::set<std::string>& labels, const std::string& label, const std::string& who) {
  if (!labels.contains(label)) {
    throw Error(ErrorKind::Alignment, "concordance.alignment", who + " names unknown alternative '" + label + "'");
  }
}

}  // namespace

ComparisonReport expert_comparison(const MethodRanking& method, const ExpertPanel& panel) {
  const std::set<std::string> labels(panel.alternatives.begin(), panel.alternatives.end());
  const std::set<std::string> method_labels(method.order.begin(), method.order.end());
  if (labels != method_labels || labels.size() != panel.alternatives.size() ||
      method_labels.size() != method.order.size()) {
    throw Error(ErrorKind::Alignment, "concordance.alignment",
                "expert alternatives do not match the method's alternatives");
  }
  require_label(labels, method.chosen, method.label);
  require_label(labels, method.rejected, method.label);

  const std::size_t n = panel.alternatives.size();
  ComparisonReport report;
  report.experts = panel.experts.size();
  report.matrix.alternatives = panel.alternatives;

  ComparisonRow method_row{method.label, method.chosen, method.rejected, method.order, true, true, true};
  report.matrix.judges.push_back(method.label);
  for (const auto& alt : panel.alternatives) {
    auto pos = std::find(method.order.begin(), method.order.end(), alt);
    report.matrix.ranks.push_back(static_cast<int>(pos - method.order.begin()) + 1);
  }
  report.rows.push_back(std::move(method_row));

  for (const auto& expert : panel.experts) {
    if (expert.ranks.size() != n) {
      throw Error(ErrorKind::Alignment, "concordance.alignment",
                  "expert '" + expert.label + "' ranks " + std::to_string(expert.ranks.size()) + " of " +
                      std::to_string(n) + " alternatives");
    }
    report.matrix.judges.push_back(expert.label);
    report.matrix.ranks.insert(report.matrix.ranks.end(), expert.ranks.begin(), expert.ranks.end());
  }
  // Validates every expert row before orders are derived from the ranks.
  report.concordance = kendall_w(report.matrix);

  for (std::size_t e = 0; e < panel.experts.size(); ++e) {
    const auto& expert = panel.experts[e];
    ComparisonRow row;
    row.judge = expert.label;
    row.ranking.resize(n);
    for (std::size_t a = 0; a < n; ++a) row.ranking[static_cast<std::size_t>(expert.ranks[a] - 1)] = panel.alternatives[a];
    row.chosen = expert.chosen.value_or(row.ranking.front());
    row.rejected = expert.rejected.value_or(row.ranking.back());
    require_label(labels, row.chosen, expert.label);
    require_label(labels, row.rejected, expert.label);
    row.chosen_matches = row.chosen == method.chosen;
    row.rejected_matches = row.rejected == method.rejected;
    row.full_match = row.ranking == method.order;
    report.chose_same += row.chosen_matches ? 1 : 0;
    report.rejected_same += row.rejected_matches ? 1 : 0;
    report.full_matches += row.full_match ? 1 : 0;
    report.rows.push_back(std::move(row));
  }
  return report;
}

ComparisonReport expert_comparison(const DecisionOutcome& outcome, const ExpertPanel& panel) {
  return expert_comparison(MethodRanking::from_outcome(outcome), panel);
}

}  // namespace igape
