#pragma once

// JSON mapping of the domain types. Objects keep a fixed key order so that
// serialized output is byte-stable for a given value.

#include <nlohmann/json.hpp>

#include "igape/ahp.hpp"
#include "igape/concordance.hpp"
#include "igape/decision.hpp"
#include "igape/error.hpp"
#include "igape/goal_model.hpp"
#include "igape/topsis.hpp"

namespace igape {

using Json = nlohmann::ordered_json;

// Goal model.
void to_json(Json& j, const Goal& goal);
void from_json(const Json& j, Goal& goal);
void to_json(Json& j, const ContributionLink& link);
void from_json(const Json& j, ContributionLink& link);
void to_json(Json& j, const Dependency& dep);
void from_json(const Json& j, Dependency& dep);
void to_json(Json& j, const Cluster& cluster);
void from_json(const Json& j, Cluster& cluster);
void to_json(Json& j, const GoalModel& model);
void from_json(const Json& j, GoalModel& model);
void to_json(Json& j, const ValidationReport& report);
void to_json(Json& j, const RawTable& table);

// AHP.
void to_json(Json& j, const ComparisonMatrix& matrix);
void from_json(const Json& j, ComparisonMatrix& matrix);
void to_json(Json& j, const ConsistencyReport& report);
void to_json(Json& j, const Priorities& priorities);
void to_json(Json& j, const CriterionNode& node);
void from_json(const Json& j, CriterionNode& node);
void to_json(Json& j, const CriteriaHierarchy& hierarchy);
void from_json(const Json& j, CriteriaHierarchy& hierarchy);
void to_json(Json& j, const GlobalWeights& weights);

Json local_source_to_json(const LocalSource& source);
LocalSource local_source_from_json(const Json& j);

// TOPSIS.
void to_json(Json& j, const DecisionMatrix& matrix);
void from_json(const Json& j, DecisionMatrix& matrix);
void to_json(Json& j, const TopsisResult& result);

// Decision engine.
Json policy_to_json(const SelectionPolicy& policy);
SelectionPolicy policy_from_json(const Json& j);
Json edit_to_json(const WhatIfEdit& edit);
WhatIfEdit edit_from_json(const Json& j);
void to_json(Json& j, const ScenarioDefinition& scenario);
void from_json(const Json& j, ScenarioDefinition& scenario);
void to_json(Json& j, const SelectionRecord& record);
void to_json(Json& j, const DecisionOutcome& outcome);
void to_json(Json& j, const ScenarioResult& result);
void to_json(Json& j, const DeltaReport& delta);

// Concordance.
void to_json(Json& j, const RankMatrix& matrix);
void from_json(const Json& j, RankMatrix& matrix);
void to_json(Json& j, const ConcordanceResult& result);
void to_json(Json& j, const ComparisonReport& report);

// Errors as API payloads: {"error": {"kind", "rule", "message", "step"?}}.
Json error_to_json(const Error& error);

}  // namespace igape
