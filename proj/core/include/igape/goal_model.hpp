#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace igape {

/// Identifier of a goal; unique within a model and stable across renames.
struct GoalId {
  std::string value;

  friend bool operator==(const GoalId&, const GoalId&) = default;
  friend std::strong_ordering operator<=>(const GoalId&, const GoalId&) = default;
};

struct ClusterId {
  std::string value;

  friend bool operator==(const ClusterId&, const ClusterId&) = default;
  friend std::strong_ordering operator<=>(const ClusterId&, const ClusterId&) = default;
};

enum class GoalKind { Intermediate, HardGoal, NFRB, NFRN, SoftGoal };

/// NFRB, NFRN and SoftGoal are quality requirements.
constexpr bool is_quality(GoalKind kind) noexcept {
  return kind == GoalKind::NFRB || kind == GoalKind::NFRN || kind == GoalKind::SoftGoal;
}

/// Functional goals are hard goals and the intermediate nodes above them.
constexpr bool is_functional(GoalKind kind) noexcept {
  return kind == GoalKind::Intermediate || kind == GoalKind::HardGoal;
}

enum class Decomposition { None, And, Or };

enum class Stability { Volatile, PresumablyStable, Stable };
enum class NegotiationStatus { Unknown, Conflicting, InAgreement, Agreed };
enum class Priority { High, Medium, Low };

struct GoalAttributes {
  Stability stability = Stability::PresumablyStable;
  NegotiationStatus negotiation_status = NegotiationStatus::Unknown;
  Priority priority = Priority::Medium;

  friend bool operator==(const GoalAttributes&, const GoalAttributes&) = default;
};

struct ObstacleEntry {
  std::string scenario;
  std::string resolution;

  friend bool operator==(const ObstacleEntry&, const ObstacleEntry&) = default;
};

struct ChangeRecord {
  std::string date;
  std::string version;
  std::string author;
  std::string reason;

  friend bool operator==(const ChangeRecord&, const ChangeRecord&) = default;
};

/// One node of the goal graph together with its documentation template.
/// Leaf-only and hard-goal-only fields are optional so that one type covers
/// both the leaf and the non-leaf template.
struct Goal {
  GoalId id;
  std::string name;
  GoalKind kind = GoalKind::Intermediate;
  Decomposition decomposition = Decomposition::None;
  std::optional<GoalId> parent;
  std::vector<GoalId> children;
  std::optional<ClusterId> cluster;

  std::string description;
  std::string source;
  std::string authors;
  std::string stakeholders;
  std::string assignment;

  std::optional<GoalAttributes> attributes;        // leaf goals
  std::optional<std::string> acceptance_criteria;  // hard goals
  std::vector<ObstacleEntry> obstacles;            // hard goals
  std::optional<std::string> use_case_id;          // hard goals

  std::string version;
  std::vector<ChangeRecord> change_history;
  std::vector<std::string> references;

  bool is_leaf() const noexcept { return children.empty(); }

  friend bool operator==(const Goal&, const Goal&) = default;
};

enum class ContributionSymbol { StrongPositive, Positive, Neutral, Negative, StrongNegative };

/// "++", "+", "o", "-", "--".
std::string_view to_string(ContributionSymbol symbol) noexcept;
std::optional<ContributionSymbol> parse_contribution_symbol(std::string_view text) noexcept;

struct MetricValue {
  std::string metric_name;
  double value = 0.0;

  friend bool operator==(const MetricValue&, const MetricValue&) = default;
};

struct Symbolic {
  ContributionSymbol symbol = ContributionSymbol::Neutral;

  friend bool operator==(const Symbolic&, const Symbolic&) = default;
};

using ContributionPayload = std::variant<MetricValue, Symbolic>;

/// Hard goal -> quality requirement. Metric payloads target NFRB/NFRN goals,
/// symbolic payloads target soft goals.
struct ContributionLink {
  GoalId from;
  GoalId to;
  ContributionPayload payload;

  friend bool operator==(const ContributionLink&, const ContributionLink&) = default;
};

enum class DependencyKind { Requires, Conflict };

struct Dependency {
  DependencyKind kind = DependencyKind::Requires;
  GoalId from;
  GoalId to;
  std::string description;

  friend bool operator==(const Dependency&, const Dependency&) = default;
};

struct Cluster {
  ClusterId id;
  GoalId root;
  std::vector<GoalId> members;
  std::vector<GoalId> quality_requirements;

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// The goal graph. Goals and clusters keep declaration order, which drives
/// every ordered output (candidate lists, tables, reports).
struct GoalModel {
  std::string name;
  std::string version;
  std::vector<Goal> goals;
  std::vector<Cluster> clusters;
  std::vector<ContributionLink> contributions;
  std::vector<Dependency> dependencies;

  const Goal* find(const GoalId& id) const noexcept;
  const Cluster* find_cluster(const ClusterId& id) const noexcept;
  const ContributionLink* find_link(const GoalId& from, const GoalId& to) const noexcept;

  friend bool operator==(const GoalModel&, const GoalModel&) = default;
};

enum class Severity { Error, Warning };

struct Violation {
  Severity severity = Severity::Error;
  std::string rule;
  std::string goal;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;  // sorted by (rule, goal)

  bool empty() const noexcept { return violations.empty(); }
  std::size_t error_count() const noexcept;
  bool has_errors() const noexcept { return error_count() > 0; }

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Checks every structural rule of the goal model. Never throws on bad
/// input; each violated rule becomes one report entry.
ValidationReport validate_model(const GoalModel& model);

/// Functional goals one level below the top-level roots, or below the root
/// of `within` when given. Declaration order is preserved.
/// Throws Error{Reference} for an unknown cluster.
std::vector<GoalId> cluster_root_candidates(const GoalModel& model,
                                            const std::optional<ClusterId>& within = std::nullopt);

/// Alternatives x quality requirements of a cluster, row-major.
struct RawTable {
  std::vector<GoalId> alternatives;
  std::vector<GoalId> criteria;
  std::vector<GoalKind> criterion_kinds;
  std::vector<ContributionPayload> cells;

  std::size_t rows() const noexcept { return alternatives.size(); }
  std::size_t cols() const noexcept { return criteria.size(); }
  const ContributionPayload& at(std::size_t row, std::size_t col) const { return cells.at(row * cols() + col); }
  ContributionPayload& at(std::size_t row, std::size_t col) { return cells.at(row * cols() + col); }

  friend bool operator==(const RawTable&, const RawTable&) = default;
};

/// Collects the contribution payload of every (alternative, quality
/// requirement) pair of `cluster`. Rows follow `alternatives`, columns the
/// cluster's declared quality requirements.
RawTable contribution_table(const GoalModel& model, const ClusterId& cluster,
                            std::span<const GoalId> alternatives);

std::string_view to_string(GoalKind kind) noexcept;
std::string_view to_string(Decomposition decomposition) noexcept;
std::string_view to_string(Severity severity) noexcept;

}  // namespace igape
