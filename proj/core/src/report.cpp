#include "igape/report.hpp"

#include <cmath>

#include <fmt/format.h>

#include "igape/csv.hpp"
#include "igape/persistence.hpp"

namespace igape {

std::string_view to_string(ReportKind kind) noexcept {
  switch (kind) {
    case ReportKind::Validation: return "validation";
    case ReportKind::Weights: return "weights";
    case ReportKind::Ranking: return "ranking";
    case ReportKind::Decision: return "decision";
    case ReportKind::Concordance: return "concordance";
    case ReportKind::Comparison: return "comparison";
  }
  return "?";
}

std::string goal_label(const GoalModel& model, const std::string& id) {
  const Goal* goal = model.find(GoalId{id});
  return goal && !goal->name.empty() ? goal->name : id;
}

namespace {

std::string fixed(double value, int decimals) {
  auto text = fmt::format("{:.{}f}", value, decimals);
  if (text.front() == '-' && text.find_first_not_of("-0.") == std::string::npos) text.erase(0, 1);
  return text;
}

std::string display(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  const auto& r = std::get<Real>(cell);
  return fixed(r.value, r.decimals);
}

std::string precise(const Cell& cell) {
  if (const auto* r = std::get_if<Real>(&cell)) return fmt::format("{}", r->value);
  return display(cell);
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string labels(const GoalModel& model, const std::vector<GoalId>& ids) {
  std::vector<std::string> names;
  for (const auto& id : ids) names.push_back(goal_label(model, id.value));
  return names.empty() ? "(none)" : join(names, "; ");
}

std::string escape_pipe(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '|') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

template <typename T>
const T* trace_item(const DecisionOutcome& outcome) {
  for (const auto& step : outcome.trace) {
    if (const auto* item = std::get_if<T>(&step.data)) return item;
  }
  return nullptr;
}

ReportTable ranking_table(const GoalModel& model, const DecisionOutcome& outcome) {
  ReportTable t{"Ranking", {"rank", "alternative", "closeness", "distance to ideal", "distance to anti-ideal"}, {}};
  const auto& r = outcome.ranking;
  for (std::size_t pos = 0; pos < r.ranking.size(); ++pos) {
    const std::size_t i = r.ranking[pos];
    t.rows.push_back({static_cast<long long>(pos + 1), goal_label(model, outcome.alternatives.at(i).value),
                      Real{r.closeness[i], 4}, Real{r.s_plus[i], 4}, Real{r.s_minus[i], 4}});
  }
  return t;
}

void matrix_tables(const GoalModel& model, const DecisionOutcome& outcome, ReportDocument& doc) {
  const auto* matrix = trace_item<DecisionMatrix>(outcome);
  if (!matrix) return;
  ReportTable criteria{"Criteria", {"criterion", "name", "direction", "weight"}, {}};
  for (const auto& c : matrix->criteria) {
    criteria.rows.push_back({c.id, goal_label(model, c.id), std::string(to_string(c.direction)), Real{c.weight, 4}});
  }
  doc.tables.push_back(std::move(criteria));

  ReportTable values{"Decision matrix", {"alternative"}, {}};
  for (const auto& c : matrix->criteria) values.columns.push_back(c.id);
  for (std::size_t i = 0; i < matrix->rows(); ++i) {
    std::vector<Cell> row{goal_label(model, matrix->alternatives[i])};
    for (std::size_t k = 0; k < matrix->cols(); ++k) row.push_back(Real{matrix->at(i, k), 4});
    values.rows.push_back(std::move(row));
  }
  doc.tables.push_back(std::move(values));
}

void add_warnings(const std::vector<std::string>& warnings, std::vector<std::string>& summary) {
  for (const auto& w : warnings) summary.push_back("warning: " + w);
}

}  // namespace

ReportDocument validation_report(const GoalModel& model, const ValidationReport& report) {
  ReportDocument doc{ReportKind::Validation, "Validation: " + model.name, {}, {}};
  const auto errors = report.error_count();
  doc.summary.push_back(fmt::format("{} error(s), {} warning(s)", errors, report.violations.size() - errors));
  ReportTable t{"Violations", {"severity", "rule", "goal", "message"}, {}};
  for (const auto& v : report.violations) {
    t.rows.push_back({std::string(to_string(v.severity)), v.rule, v.goal, v.message});
  }
  doc.tables.push_back(std::move(t));
  return doc;
}

ReportDocument weights_report(const GoalModel& model, const std::string& hierarchy, const GlobalWeights& weights) {
  ReportDocument doc{ReportKind::Weights, "Weights: " + hierarchy, {}, {}};
  double sum = 0.0;
  for (const auto& leaf : weights.leaves) sum += leaf.weight;
  doc.summary.push_back(fmt::format("{} criteria, global weights sum to {}", weights.leaves.size(), fixed(sum, 4)));
  add_warnings(weights.warnings, doc.summary);

  ReportTable local{"Local weights", {"node", "child", "local weight", "consistency ratio"}, {}};
  for (const auto& node : weights.nodes) {
    for (std::size_t c = 0; c < node.children.size(); ++c) {
      Cell cr = std::string("given");
      if (node.derived) cr = Real{node.local.consistency.cr, 4};
      local.rows.push_back({goal_label(model, node.id), goal_label(model, node.children[c]),
                            Real{node.local.vector.weights.at(c), 4}, cr});
    }
  }
  doc.tables.push_back(std::move(local));

  ReportTable global{"Global weights", {"criterion", "name", "path", "global weight"}, {}};
  for (const auto& leaf : weights.leaves) {
    std::vector<std::string> factors;
    for (double f : leaf.factors) factors.push_back(fmt::format("{}", f));
    global.rows.push_back({leaf.id, goal_label(model, leaf.id), join(factors, " x "), Real{leaf.weight, 4}});
  }
  doc.tables.push_back(std::move(global));
  return doc;
}

ReportDocument ranking_report(const GoalModel& model, const ScenarioResult& result) {
  ReportDocument doc{ReportKind::Ranking, "Ranking: " + result.name, {}, {}};
  const auto& outcome = result.outcomes.at(0);
  std::vector<std::string> order;
  for (std::size_t i : outcome.ranking.ranking) order.push_back(goal_label(model, outcome.alternatives[i].value));
  doc.summary.push_back(join(order, " > "));
  add_warnings(outcome.ranking.warnings, doc.summary);
  doc.tables.push_back(ranking_table(model, outcome));
  return doc;
}

ReportDocument decision_report(const GoalModel& model, const ScenarioResult& result) {
  ReportDocument doc{ReportKind::Decision, "Decision: " + result.name, {}, {}};
  const auto& first = result.outcomes.at(0);
  if (result.kind == ScenarioKind::ChooseAlternative) {
    doc.summary.push_back("chosen: " + labels(model, first.chosen));
    doc.summary.push_back("rejected: " + labels(model, first.rejected));
  } else {
    for (const auto& outcome : result.outcomes) {
      doc.summary.push_back(goal_label(model, outcome.goal ? outcome.goal->value : std::string()) +
                            ": chosen " + labels(model, outcome.chosen));
    }
  }
  add_warnings(first.warnings, doc.summary);
  doc.tables.push_back(ranking_table(model, first));

  if (result.kind == ScenarioKind::PrioritizeAndChoose) {
    ReportTable sel{"Selections", {"goal", "priority", "chosen", "rejected"}, {}};
    for (const auto& outcome : result.outcomes) {
      std::size_t index = static_cast<std::size_t>(&outcome - result.outcomes.data());
      Cell priority = std::string("-");
      if (outcome.goal_priorities && index < outcome.goal_priorities->weights.size()) {
        priority = Real{outcome.goal_priorities->weights[index], 4};
      }
      sel.rows.push_back({goal_label(model, outcome.goal ? outcome.goal->value : std::string()), priority,
                          labels(model, outcome.chosen), labels(model, outcome.rejected)});
    }
    doc.tables.push_back(std::move(sel));
  }
  matrix_tables(model, first, doc);
  return doc;
}

std::string concordance_summary(const ConcordanceResult& result) {
  return fmt::format("W = {} ({})", fixed(result.w, 3), result.good_agreement ? "good agreement" : "weak agreement");
}

ReportDocument concordance_report(const RankMatrix& matrix, const ConcordanceResult& result) {
  ReportDocument doc{ReportKind::Concordance, "Concordance", {concordance_summary(result)}, {}};
  std::vector<std::string> order;
  for (std::size_t a : result.consensus_order) order.push_back(matrix.alternatives.at(a));
  doc.summary.push_back("consensus: " + join(order, " > ") + (result.consensus_ties ? " (ties present)" : ""));

  ReportTable ranks{"Ranks", {"judge"}, {}};
  ranks.columns.insert(ranks.columns.end(), matrix.alternatives.begin(), matrix.alternatives.end());
  for (std::size_t j = 0; j < matrix.k(); ++j) {
    std::vector<Cell> row{matrix.judges[j]};
    for (std::size_t a = 0; a < matrix.n(); ++a) row.push_back(static_cast<long long>(matrix.at(j, a)));
    ranks.rows.push_back(std::move(row));
  }
  std::vector<Cell> sums{std::string("Sum of Ranks")};
  for (long long r : result.rank_sums) sums.push_back(r);
  ranks.rows.push_back(std::move(sums));
  doc.tables.push_back(std::move(ranks));

  ReportTable dev{"Deviations", {"alternative", "rank sum", "deviation", "squared deviation"}, {}};
  for (std::size_t a = 0; a < matrix.n(); ++a) {
    const double d = static_cast<double>(result.rank_sums[a]) - result.mean_rank_sum;
    dev.rows.push_back({matrix.alternatives[a], result.rank_sums[a], Real{d, 2}, Real{d * d, 2}});
  }
  doc.tables.push_back(std::move(dev));

  ReportTable stats{"Statistics", {"statistic", "value"}, {}};
  stats.rows.push_back({std::string("judges (k)"), static_cast<long long>(matrix.k())});
  stats.rows.push_back({std::string("alternatives (N)"), static_cast<long long>(matrix.n())});
  stats.rows.push_back({std::string("mean rank sum"), Real{result.mean_rank_sum, 2}});
  stats.rows.push_back({std::string("s"), Real{result.s, 2}});
  stats.rows.push_back({std::string("W"), Real{result.w, 4}});
  stats.rows.push_back({std::string("threshold"), Real{result.threshold, 2}});
  stats.rows.push_back({std::string("agreement"), std::string(result.good_agreement ? "good" : "weak")});
  doc.tables.push_back(std::move(stats));
  return doc;
}

ReportDocument comparison_report(const ComparisonReport& report) {
  ReportDocument doc{ReportKind::Comparison, "Expert comparison", {}, {}};
  doc.summary.push_back(fmt::format("{} of {} experts chose the same alternative", report.chose_same, report.experts));
  doc.summary.push_back(fmt::format("{} of {} experts rejected the same alternative", report.rejected_same, report.experts));
  doc.summary.push_back(fmt::format("{} of {} experts gave the same full ranking", report.full_matches, report.experts));
  doc.summary.push_back(concordance_summary(report.concordance));

  ReportTable rows{"Answers", {"judge", "chosen", "rejected", "ranking", "same choice", "same rejection", "same ranking"}, {}};
  auto yes = [](bool b) { return std::string(b ? "yes" : "no"); };
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    const bool method = i == 0;
    rows.rows.push_back({r.judge, r.chosen, r.rejected, join(r.ranking, " > "), method ? "-" : yes(r.chosen_matches),
                         method ? "-" : yes(r.rejected_matches), method ? "-" : yes(r.full_match)});
  }
  doc.tables.push_back(std::move(rows));
  auto concordance = concordance_report(report.matrix, report.concordance);
  for (auto& t : concordance.tables) doc.tables.push_back(std::move(t));
  return doc;
}

std::string render(const ReportDocument& report, ReportFlavor flavor) {
  std::string out;
  if (flavor == ReportFlavor::Human) {
    out += "# " + report.title + "\n\n";
    for (const auto& line : report.summary) out += line + "\n";
    for (const auto& table : report.tables) {
      out += "\n## " + table.title + "\n\n";
      std::vector<std::string> header;
      for (const auto& c : table.columns) header.push_back(escape_pipe(c));
      out += "| " + join(header, " | ") + " |\n|";
      for (std::size_t i = 0; i < table.columns.size(); ++i) out += "---|";
      out += "\n";
      for (const auto& row : table.rows) {
        std::vector<std::string> cells;
        for (const auto& cell : row) cells.push_back(escape_pipe(display(cell)));
        out += "| " + join(cells, " | ") + " |\n";
      }
    }
    return out;
  }
  for (std::size_t t = 0; t < report.tables.size(); ++t) {
    const auto& table = report.tables[t];
    if (t) out += "\n";
    out += csv::escape(table.title) + "\n";
    out += csv::join(table.columns) + "\n";
    for (const auto& row : table.rows) {
      std::vector<std::string> cells;
      for (const auto& cell : row) cells.push_back(precise(cell));
      out += csv::join(cells) + "\n";
    }
  }
  return out;
}

void export_report(const ReportDocument& report, const std::filesystem::path& path, ReportFlavor flavor) {
  write_file(path, render(report, flavor));
}

}  // namespace igape
