#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "igape/ahp.hpp"
#include "igape/concordance.hpp"
#include "igape/decision.hpp"
#include "igape/goal_model.hpp"

namespace igape {

enum class ReportKind { Validation, Weights, Ranking, Decision, Concordance, Comparison };
enum class ReportFlavor { Human, Tabular };

/// A number shown with `decimals` places; tabular output prints `value` in
/// full precision.
struct Real {
  double value = 0.0;
  int decimals = 4;

  friend bool operator==(const Real&, const Real&) = default;
};

using Cell = std::variant<std::string, long long, Real>;

struct ReportTable {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  friend bool operator==(const ReportTable&, const ReportTable&) = default;
};

struct ReportDocument {
  ReportKind kind = ReportKind::Validation;
  std::string title;
  std::vector<std::string> summary;  // plain lines, already rounded for display
  std::vector<ReportTable> tables;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

std::string_view to_string(ReportKind kind) noexcept;

/// Display name of a goal, or the id itself when the model lacks it.
std::string goal_label(const GoalModel& model, const std::string& id);

ReportDocument validation_report(const GoalModel& model, const ValidationReport& report);
ReportDocument weights_report(const GoalModel& model, const std::string& hierarchy, const GlobalWeights& weights);
ReportDocument ranking_report(const GoalModel& model, const ScenarioResult& result);
ReportDocument decision_report(const GoalModel& model, const ScenarioResult& result);
ReportDocument concordance_report(const RankMatrix& matrix, const ConcordanceResult& result);
ReportDocument comparison_report(const ComparisonReport& report);

/// "W = 0.771 (good agreement)".
std::string concordance_summary(const ConcordanceResult& result);

/// Human: markdown with rounded numbers. Tabular: one CSV block per table,
/// blocks separated by a blank line, numbers in shortest round-trip form.
std::string render(const ReportDocument& report, ReportFlavor flavor);

void export_report(const ReportDocument& report, const std::filesystem::path& path, ReportFlavor flavor);

}  // namespace igape
