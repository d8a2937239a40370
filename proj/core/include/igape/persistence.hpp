#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "igape/ahp.hpp"
#include "igape/concordance.hpp"
#include "igape/decision.hpp"
#include "igape/goal_model.hpp"
#include "igape/topsis.hpp"

namespace igape {

inline constexpr std::string_view kFormatVersion = "1.0.0";

struct ModelDocument {
  std::string format_version{kFormatVersion};
  std::vector<std::string> comments;  // free-form provenance notes
  GoalModel model;
  std::map<std::string, CriteriaHierarchy> hierarchies;
  std::map<std::string, ScenarioDefinition> scenarios;

  const ScenarioDefinition& scenario(const std::string& name) const;
  const CriteriaHierarchy& hierarchy(const std::string& name) const;

  friend bool operator==(const ModelDocument&, const ModelDocument&) = default;
};

/// Throws Error{Parse} with line, column and byte position on malformed
/// text, Error{Version} when format_version is not kFormatVersion.
ModelDocument parse_document(std::string_view text);

/// Pretty-printed JSON, two-space indent, trailing newline.
std::string serialize_document(const ModelDocument& doc);

ModelDocument load_model(const std::filesystem::path& path);
void save_model(const ModelDocument& doc, const std::filesystem::path& path);

ScenarioResult run_scenario(const ModelDocument& doc, const std::string& name);

/// `judge,<alt1>,...` then one `label,r1,...` row per judge. Row-level
/// failures name the 1-based data row.
RankMatrix parse_rank_matrix(std::string_view text);
RankMatrix import_rank_matrix(const std::filesystem::path& path);

/// `alternative,<crit1>,...`, then a `direction` row (benefit|cost), a
/// `weight` row, then one row per alternative.
DecisionMatrix parse_decision_matrix(std::string_view text);
DecisionMatrix import_decision_matrix(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary sibling and renames it over `path`.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace igape
