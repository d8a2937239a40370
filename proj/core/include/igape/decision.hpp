#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "igape/ahp.hpp"
#include "igape/goal_model.hpp"
#include "igape/topsis.hpp"

namespace igape {

enum class ScenarioKind { ChooseAlternative, PrioritizeAndChoose };

std::string_view to_string(ScenarioKind kind) noexcept;

/// Linear scale {++: 2, +: 1, o: 0, -: -1, --: -2}.
int map_symbol(ContributionSymbol symbol) noexcept;

/// NFRB and soft goals are maximized, NFRN minimized. Throws
/// Error{KindMismatch} for a goal kind that is not a quality requirement.
Direction direction_for(GoalKind kind);

/// Each goal takes the top `k` alternatives (per-goal override or default).
struct TopK {
  int k = 1;
  std::map<std::string, int> per_goal;

  friend bool operator==(const TopK&, const TopK&) = default;
};

/// A goal whose priority is at least `min_priority` takes `count` top
/// alternatives (all of them when `count` is empty). The band with the
/// highest qualifying threshold wins.
struct PriorityBand {
  double min_priority = 0.0;
  std::optional<int> count;

  friend bool operator==(const PriorityBand&, const PriorityBand&) = default;
};

struct PriorityBands {
  std::vector<PriorityBand> bands;

  /// p >= 0.5 -> all, 0.25 <= p < 0.5 -> top 1, p < 0.25 -> top 1.
  static PriorityBands defaults();

  friend bool operator==(const PriorityBands&, const PriorityBands&) = default;
};

/// Analyst-chosen sets per goal, echoed verbatim. The rationale is mandatory.
struct Manual {
  std::map<std::string, std::vector<GoalId>> chosen;
  std::string rationale;

  friend bool operator==(const Manual&, const Manual&) = default;
};

using SelectionPolicy = std::variant<TopK, PriorityBands, Manual>;

std::string_view policy_name(const SelectionPolicy& policy) noexcept;

struct SelectionRecord {
  std::string policy;
  std::optional<GoalId> goal;
  std::optional<double> priority;
  std::vector<GoalId> chosen;
  std::string detail;

  friend bool operator==(const SelectionRecord&, const SelectionRecord&) = default;
};

using TraceData = std::variant<GlobalWeights, RawTable, DecisionMatrix, TopsisResult, Priorities, SelectionRecord>;

struct TraceStep {
  std::string step;
  std::string summary;
  TraceData data;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct DecisionOutcome {
  ScenarioKind scenario = ScenarioKind::ChooseAlternative;
  std::optional<GoalId> goal;  // set for prioritize-and-choose outcomes
  std::vector<GoalId> alternatives;
  TopsisResult ranking;
  std::vector<GoalId> chosen;
  std::vector<GoalId> rejected;
  std::optional<PriorityVector> goal_priorities;
  std::vector<TraceStep> trace;
  std::vector<std::string> warnings;

  friend bool operator==(const DecisionOutcome&, const DecisionOutcome&) = default;
};

/// Derives criterion directions from the quality-requirement kinds of `raw`.
std::map<std::string, Direction> directions_for(const RawTable& raw);

/// Metric cells pass through, symbolic cells go through map_symbol.
/// Throws Error{Coverage} for a missing weight/direction and
/// Error{KindMismatch} when a direction contradicts the requirement kind.
DecisionMatrix build_decision_matrix(const RawTable& raw, const std::map<std::string, double>& weights,
                                     const std::map<std::string, Direction>& directions);

/// Same, with weights from a global-weight computation and directions
/// derived from requirement kinds.
DecisionMatrix build_decision_matrix(const RawTable& raw, const GlobalWeights& weights);

/// Choose one alternative to realize the cluster root: global weights,
/// decision matrix, TOPSIS. chosen = rank 1, rejected = rank last.
DecisionOutcome run_choose(const GoalModel& model, const ClusterId& cluster, std::span<const GoalId> alternatives,
                           const CriteriaHierarchy& hierarchy);

/// Rank the shared alternatives once, prioritize the goals, then select a
/// subset per goal with `policy`. One outcome per goal, in `goals` order.
std::vector<DecisionOutcome> run_prioritize_choose(const GoalModel& model, const ClusterId& cluster,
                                                   std::span<const GoalId> alternatives,
                                                   const CriteriaHierarchy& hierarchy, std::span<const GoalId> goals,
                                                   const LocalSource& goal_priorities, const SelectionPolicy& policy);

/// A named decision scenario as stored in a model document.
struct ScenarioDefinition {
  ScenarioKind kind = ScenarioKind::ChooseAlternative;
  ClusterId cluster;
  std::vector<GoalId> alternatives;
  std::string hierarchy;
  // Prioritize-and-choose only.
  std::vector<GoalId> goals;
  std::optional<LocalSource> goal_priorities;
  std::optional<SelectionPolicy> policy;

  friend bool operator==(const ScenarioDefinition&, const ScenarioDefinition&) = default;
};

struct ScenarioResult {
  std::string name;
  ScenarioKind kind = ScenarioKind::ChooseAlternative;
  std::vector<DecisionOutcome> outcomes;

  const TopsisResult& ranking() const { return outcomes.at(0).ranking; }

  friend bool operator==(const ScenarioResult&, const ScenarioResult&) = default;
};

/// Throws Error{Reference} when the scenario names an unknown hierarchy.
ScenarioResult run_scenario(const std::string& name, const ScenarioDefinition& scenario, const GoalModel& model,
                            const std::map<std::string, CriteriaHierarchy>& hierarchies);

struct ContributionEdit {
  GoalId from;
  GoalId to;
  ContributionPayload payload;

  friend bool operator==(const ContributionEdit&, const ContributionEdit&) = default;
};

/// Replaces the given local weights of a hierarchy node; the vector is
/// renormalized to sum to one.
struct WeightsEdit {
  std::string node;
  std::vector<double> weights;

  friend bool operator==(const WeightsEdit&, const WeightsEdit&) = default;
};

/// Sets one judgment (0-based cell); the reciprocal cell follows.
struct JudgmentEdit {
  std::string node;
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 1.0;

  friend bool operator==(const JudgmentEdit&, const JudgmentEdit&) = default;
};

using WhatIfEdit = std::variant<std::monostate, ContributionEdit, WeightsEdit, JudgmentEdit>;

struct RankMove {
  GoalId alternative;
  std::size_t from_rank = 0;
  std::size_t to_rank = 0;

  friend bool operator==(const RankMove&, const RankMove&) = default;
};

struct ClosenessDelta {
  GoalId alternative;
  double before = 0.0;
  double after = 0.0;

  double delta() const noexcept { return after - before; }
  friend bool operator==(const ClosenessDelta&, const ClosenessDelta&) = default;
};

/// Rank moves list only alternatives whose rank changed; closeness entries
/// list only alternatives whose closeness changed.
struct DeltaReport {
  std::vector<RankMove> rank_moves;
  std::vector<ClosenessDelta> closeness;

  bool empty() const noexcept { return rank_moves.empty() && closeness.empty(); }
  friend bool operator==(const DeltaReport&, const DeltaReport&) = default;
};

struct WhatIfResult {
  ScenarioResult baseline;
  ScenarioResult edited;
  DeltaReport delta;
  GoalModel model;              // model with the edit applied
  CriteriaHierarchy hierarchy;  // hierarchy with the edit applied
  std::vector<std::string> recomputed;  // pipeline stages rerun for the edit
};

/// Applies one edit to the scenario inputs and reruns only the stages
/// downstream of it. Throws Error{Edit} (or the violated judgment rule) when
/// the edit is rejected; the inputs are never modified.
WhatIfResult what_if(const std::string& name, const ScenarioDefinition& scenario, const GoalModel& model,
                     const CriteriaHierarchy& hierarchy, const WhatIfEdit& edit);

DeltaReport compare_rankings(const std::vector<GoalId>& alternatives, const TopsisResult& before,
                             const TopsisResult& after);

}  // namespace igape
