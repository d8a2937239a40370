#include "igape/decision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "igape/error.hpp"

namespace igape {

std::string_view to_string(ScenarioKind kind) noexcept {
  return kind == ScenarioKind::ChooseAlternative ? "choose-alternative" : "prioritize-and-choose";
}

int map_symbol(ContributionSymbol symbol) noexcept {
  switch (symbol) {
    case ContributionSymbol::StrongPositive: return 2;
    case ContributionSymbol::Positive: return 1;
    case ContributionSymbol::Neutral: return 0;
    case ContributionSymbol::Negative: return -1;
    case ContributionSymbol::StrongNegative: return -2;
  }
  return 0;
}

Direction direction_for(GoalKind kind) {
  switch (kind) {
    case GoalKind::NFRB:
    case GoalKind::SoftGoal: return Direction::Benefit;
    case GoalKind::NFRN: return Direction::Cost;
    default: break;
  }
  throw Error(ErrorKind::KindMismatch, "decision.criterion-kind",
              "goal kind '" + std::string(to_string(kind)) + "' is not a quality requirement");
}

PriorityBands PriorityBands::defaults() {
  return PriorityBands{{{0.5, std::nullopt}, {0.25, 1}, {0.0, 1}}};
}

std::string_view policy_name(const SelectionPolicy& policy) noexcept {
  switch (policy.index()) {
    case 0: return "top-k";
    case 1: return "priority-bands";
    default: return "manual";
  }
}

std::map<std::string, Direction> directions_for(const RawTable& raw) {
  std::map<std::string, Direction> out;
  for (std::size_t j = 0; j < raw.cols(); ++j) out[raw.criteria[j].value] = direction_for(raw.criterion_kinds.at(j));
  return out;
}

DecisionMatrix build_decision_matrix(const RawTable& raw, const std::map<std::string, double>& weights,
                                     const std::map<std::string, Direction>& directions) {
  if (raw.criterion_kinds.size() != raw.cols() || raw.cells.size() != raw.rows() * raw.cols()) {
    throw Error(ErrorKind::Structure, "decision.table-shape", "contribution table is not rectangular");
  }
  DecisionMatrix matrix;
  for (const auto& alt : raw.alternatives) matrix.alternatives.push_back(alt.value);
  for (std::size_t j = 0; j < raw.cols(); ++j) {
    const auto& id = raw.criteria[j].value;
    auto w = weights.find(id);
    if (w == weights.end()) {
      throw Error(ErrorKind::Coverage, "decision.missing-weight", "no weight for criterion '" + id + "'");
    }
    auto d = directions.find(id);
    if (d == directions.end()) {
      throw Error(ErrorKind::Coverage, "decision.missing-direction", "no direction for criterion '" + id + "'");
    }
    const GoalKind kind = raw.criterion_kinds[j];
    if (d->second != direction_for(kind)) {
      throw Error(ErrorKind::KindMismatch, "decision.direction-kind",
                  "criterion '" + id + "' is " + std::string(to_string(kind)) + " but marked " +
                      std::string(to_string(d->second)));
    }
    matrix.criteria.push_back(CriterionSpec{id, d->second, w->second});
  }
  matrix.values.reserve(raw.cells.size());
  for (const auto& cell : raw.cells) {
    if (const auto* metric = std::get_if<MetricValue>(&cell)) {
      matrix.values.push_back(metric->value);
    } else {
      matrix.values.push_back(static_cast<double>(map_symbol(std::get<Symbolic>(cell).symbol)));
    }
  }
  matrix.check();
  return matrix;
}

DecisionMatrix build_decision_matrix(const RawTable& raw, const GlobalWeights& weights) {
  std::map<std::string, double> by_id;
  for (const auto& leaf : weights.leaves) by_id[leaf.id] = leaf.weight;
  return build_decision_matrix(raw, by_id, directions_for(raw));
}

namespace {

constexpr const char* kStepWeights = "step 1: global weights";
constexpr const char* kStepTable = "step 2: contribution table";
constexpr const char* kStepMatrix = "step 2: decision matrix";
constexpr const char* kStepTopsis = "step 3: TOPSIS ranking";
constexpr const char* kStepGoals = "step 4: goal priorities";
constexpr const char* kStepSelect = "step 5: selection";

template <typename Fn>
auto staged(const char* step, Fn&& fn) {
  try {
    return fn();
  } catch (Error& e) {
    if (e.step().empty()) e.set_step(step);
    else e.set_step(std::string(step) + ", " + e.step());
    throw;
  }
}

std::string join_ids(const std::vector<GoalId>& ids) {
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : ", ") + id.value;
  return out;
}

std::string fixed(double v, int decimals) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(decimals);
  out << v;
  return out.str();
}

// Intermediate artifacts of one scenario run. what_if copies these and
// recomputes only what an edit invalidates.
struct Stages {
  GlobalWeights weights;
  RawTable raw;
  DecisionMatrix matrix;
  TopsisResult ranking;
  std::optional<Priorities> goal_priorities;
};

GlobalWeights compute_weights(const CriteriaHierarchy& hierarchy) {
  return staged(kStepWeights, [&] { return global_weights(hierarchy); });
}

RawTable compute_table(const GoalModel& model, const ClusterId& cluster, std::span<const GoalId> alternatives) {
  return staged(kStepTable, [&] {
    if (alternatives.size() < 2) {
      throw Error(ErrorKind::Degenerate, "scenario.alternatives", "a decision scenario needs at least two alternatives");
    }
    return contribution_table(model, cluster, alternatives);
  });
}

DecisionMatrix compute_matrix(const RawTable& raw, const GlobalWeights& weights) {
  return staged(kStepMatrix, [&] {
    std::set<std::string> leaves;
    for (const auto& leaf : weights.leaves) leaves.insert(leaf.id);
    std::set<std::string> criteria;
    for (const auto& c : raw.criteria) criteria.insert(c.value);
    if (leaves != criteria) {
      throw Error(ErrorKind::Structure, "scenario.hierarchy-leaves",
                  "criteria hierarchy leaves do not match the cluster's quality requirements");
    }
    return build_decision_matrix(raw, weights);
  });
}

TopsisResult compute_ranking(const DecisionMatrix& matrix) {
  return staged(kStepTopsis, [&] { return evaluate(matrix); });
}

Priorities compute_goal_priorities(const LocalSource& source, std::size_t goal_count) {
  return staged(kStepGoals, [&] {
    Priorities p = prioritize_goals(source);
    if (p.vector.size() != goal_count) {
      throw Error(ErrorKind::Structure, "scenario.goal-priorities",
                  std::to_string(goal_count) + " goals but " + std::to_string(p.vector.size()) + " priorities");
    }
    return p;
  });
}

DecisionOutcome base_outcome(ScenarioKind kind, const Stages& stages) {
  DecisionOutcome out;
  out.scenario = kind;
  out.alternatives = stages.raw.alternatives;
  out.ranking = stages.ranking;
  out.warnings = stages.weights.warnings;
  out.warnings.insert(out.warnings.end(), stages.ranking.warnings.begin(), stages.ranking.warnings.end());

  out.trace.push_back({kStepWeights,
                       std::to_string(stages.weights.leaves.size()) + " criterion weights from " +
                           std::to_string(stages.weights.nodes.size()) + " local weight vectors",
                       stages.weights});
  out.trace.push_back({kStepTable,
                       std::to_string(stages.raw.rows()) + " alternatives x " + std::to_string(stages.raw.cols()) +
                           " quality requirements",
                       stages.raw});
  out.trace.push_back({kStepMatrix, "metrics passed through, contribution symbols mapped to {2,1,0,-1,-2}",
                       stages.matrix});
  std::string order;
  for (std::size_t idx : stages.ranking.ranking) {
    order += (order.empty() ? "" : " > ") + stages.raw.alternatives[idx].value + " (" +
             fixed(stages.ranking.closeness[idx], 4) + ")";
  }
  out.trace.push_back({kStepTopsis, order, stages.ranking});
  return out;
}

DecisionOutcome assemble_choose(const Stages& stages) {
  DecisionOutcome out = base_outcome(ScenarioKind::ChooseAlternative, stages);
  const auto& alts = stages.raw.alternatives;
  out.chosen = {alts[stages.ranking.ranking.front()]};
  out.rejected = {alts[stages.ranking.ranking.back()]};
  SelectionRecord record{"rank-extremes", std::nullopt, std::nullopt, out.chosen,
                         "chosen = rank 1, rejected = rank " + std::to_string(alts.size())};
  out.trace.push_back({kStepSelect, "chose " + out.chosen.front().value + ", rejected " + out.rejected.front().value,
                       std::move(record)});
  return out;
}

std::vector<GoalId> ranked_prefix(const Stages& stages, std::size_t count) {
  std::vector<GoalId> out;
  for (std::size_t r = 0; r < count; ++r) out.push_back(stages.raw.alternatives[stages.ranking.ranking[r]]);
  return out;
}

std::size_t checked_count(int count, std::size_t available, const std::string& goal, const char* what) {
  if (count < 1 || static_cast<std::size_t>(count) > available) {
    throw Error(ErrorKind::Policy, "policy.infeasible",
                std::string(what) + " of " + std::to_string(count) + " for goal '" + goal + "' is outside 1.." +
                    std::to_string(available));
  }
  return static_cast<std::size_t>(count);
}

SelectionRecord select_for(const SelectionPolicy& policy, const GoalId& goal, double priority, const Stages& stages) {
  const std::size_t m = stages.raw.rows();
  SelectionRecord record;
  record.policy = std::string(policy_name(policy));
  record.goal = goal;
  record.priority = priority;

  if (const auto* top = std::get_if<TopK>(&policy)) {
    auto it = top->per_goal.find(goal.value);
    const int k = it == top->per_goal.end() ? top->k : it->second;
    record.chosen = ranked_prefix(stages, checked_count(k, m, goal.value, "k"));
    record.detail = "top " + std::to_string(k) + " of the TOPSIS ranking";
  } else if (const auto* bands = std::get_if<PriorityBands>(&policy)) {
    const PriorityBand* match = nullptr;
    for (const auto& band : bands->bands) {
      if (priority >= band.min_priority && (!match || band.min_priority > match->min_priority)) match = &band;
    }
    if (!match) {
      throw Error(ErrorKind::Policy, "policy.no-band",
                  "no priority band covers priority " + fixed(priority, 3) + " of goal '" + goal.value + "'");
    }
    const std::size_t count =
        match->count ? checked_count(*match->count, m, goal.value, "band count") : m;
    record.chosen = ranked_prefix(stages, count);
    record.detail = "priority " + fixed(priority, 3) + " >= " + fixed(match->min_priority, 3) + " -> " +
                    (match->count ? "top " + std::to_string(count) : std::string("all alternatives"));
  } else {
    const auto& manual = std::get<Manual>(policy);
    if (manual.rationale.empty()) {
      throw Error(ErrorKind::Policy, "policy.rationale", "a manual selection needs a rationale");
    }
    auto it = manual.chosen.find(goal.value);
    if (it == manual.chosen.end()) {
      throw Error(ErrorKind::Policy, "policy.manual-missing", "manual policy has no selection for goal '" + goal.value + "'");
    }
    for (const auto& alt : it->second) {
      if (std::find(stages.raw.alternatives.begin(), stages.raw.alternatives.end(), alt) ==
          stages.raw.alternatives.end()) {
        throw Error(ErrorKind::Policy, "policy.manual-subset",
                    "manual selection for goal '" + goal.value + "' names unknown alternative '" + alt.value + "'");
      }
    }
    record.chosen = it->second;
    record.detail = manual.rationale;
  }
  return record;
}

std::vector<DecisionOutcome> assemble_prioritize(const Stages& stages, std::span<const GoalId> goals,
                                                 const SelectionPolicy& policy) {
  const Priorities& priorities = *stages.goal_priorities;
  std::vector<DecisionOutcome> outcomes;
  for (std::size_t g = 0; g < goals.size(); ++g) {
    const double p = priorities.vector.weights[g];
    SelectionRecord record = staged(kStepSelect, [&] { return select_for(policy, goals[g], p, stages); });

    DecisionOutcome out = base_outcome(ScenarioKind::PrioritizeAndChoose, stages);
    out.goal = goals[g];
    out.goal_priorities = priorities.vector;
    out.warnings.insert(out.warnings.end(), priorities.warnings.begin(), priorities.warnings.end());
    out.chosen = record.chosen;
    for (std::size_t idx : stages.ranking.ranking) {
      const auto& alt = stages.raw.alternatives[idx];
      if (std::find(out.chosen.begin(), out.chosen.end(), alt) == out.chosen.end()) out.rejected.push_back(alt);
    }
    out.trace.push_back({kStepGoals, goals[g].value + " priority " + fixed(p, 3), priorities});
    out.trace.push_back({kStepSelect, goals[g].value + " <- {" + join_ids(out.chosen) + "}", std::move(record)});
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

Stages compute_stages(const GoalModel& model, const ClusterId& cluster, std::span<const GoalId> alternatives,
                      const CriteriaHierarchy& hierarchy) {
  Stages s;
  s.weights = compute_weights(hierarchy);
  s.raw = compute_table(model, cluster, alternatives);
  s.matrix = compute_matrix(s.raw, s.weights);
  s.ranking = compute_ranking(s.matrix);
  return s;
}

const SelectionPolicy& require_policy(const ScenarioDefinition& scenario) {
  if (!scenario.policy) {
    throw Error(ErrorKind::Policy, "policy.missing", "prioritize-and-choose scenario has no selection policy");
  }
  return *scenario.policy;
}

const LocalSource& require_goal_priorities(const ScenarioDefinition& scenario) {
  if (!scenario.goal_priorities) {
    throw Error(ErrorKind::Structure, "scenario.goal-priorities", "prioritize-and-choose scenario has no goal priorities");
  }
  return *scenario.goal_priorities;
}

ScenarioResult assemble(const std::string& name, const ScenarioDefinition& scenario, const Stages& stages) {
  ScenarioResult result{name, scenario.kind, {}};
  if (scenario.kind == ScenarioKind::ChooseAlternative) {
    result.outcomes.push_back(assemble_choose(stages));
  } else {
    result.outcomes = assemble_prioritize(stages, scenario.goals, require_policy(scenario));
  }
  return result;
}

Stages scenario_stages(const ScenarioDefinition& scenario, const GoalModel& model, const CriteriaHierarchy& hierarchy) {
  Stages s = compute_stages(model, scenario.cluster, scenario.alternatives, hierarchy);
  if (scenario.kind == ScenarioKind::PrioritizeAndChoose) {
    s.goal_priorities = compute_goal_priorities(require_goal_priorities(scenario), scenario.goals.size());
  }
  return s;
}

}  // namespace

DecisionOutcome run_choose(const GoalModel& model, const ClusterId& cluster, std::span<const GoalId> alternatives,
                           const CriteriaHierarchy& hierarchy) {
  return assemble_choose(compute_stages(model, cluster, alternatives, hierarchy));
}

std::vector<DecisionOutcome> run_prioritize_choose(const GoalModel& model, const ClusterId& cluster,
                                                   std::span<const GoalId> alternatives,
                                                   const CriteriaHierarchy& hierarchy, std::span<const GoalId> goals,
                                                   const LocalSource& goal_priorities,
                                                   const SelectionPolicy& policy) {
  Stages s = compute_stages(model, cluster, alternatives, hierarchy);
  s.goal_priorities = compute_goal_priorities(goal_priorities, goals.size());
  return assemble_prioritize(s, goals, policy);
}

ScenarioResult run_scenario(const std::string& name, const ScenarioDefinition& scenario, const GoalModel& model,
                            const std::map<std::string, CriteriaHierarchy>& hierarchies) {
  auto it = hierarchies.find(scenario.hierarchy);
  if (it == hierarchies.end()) {
    throw Error(ErrorKind::Reference, "scenario.unknown-hierarchy",
                "scenario '" + name + "' names unknown hierarchy '" + scenario.hierarchy + "'");
  }
  return assemble(name, scenario, scenario_stages(scenario, model, it->second));
}

DeltaReport compare_rankings(const std::vector<GoalId>& alternatives, const TopsisResult& before,
                             const TopsisResult& after) {
  DeltaReport delta;
  for (std::size_t i = 0; i < alternatives.size(); ++i) {
    const std::size_t r0 = before.rank_of(i);
    const std::size_t r1 = after.rank_of(i);
    if (r0 != r1) delta.rank_moves.push_back({alternatives[i], r0, r1});
    if (before.closeness[i] != after.closeness[i]) {
      delta.closeness.push_back({alternatives[i], before.closeness[i], after.closeness[i]});
    }
  }
  std::stable_sort(delta.rank_moves.begin(), delta.rank_moves.end(),
                   [](const RankMove& a, const RankMove& b) { return a.to_rank < b.to_rank; });
  return delta;
}

namespace {

void apply_contribution_edit(const ContributionEdit& edit, GoalModel& model, Stages& stages,
                             std::vector<std::string>& recomputed) {
  auto link = std::find_if(model.contributions.begin(), model.contributions.end(),
                           [&](const ContributionLink& l) { return l.from == edit.from && l.to == edit.to; });
  if (link == model.contributions.end()) {
    throw Error(ErrorKind::Edit, "whatif.unknown-link",
                "no contribution link " + edit.from.value + " -> " + edit.to.value + " to edit");
  }
  const Goal* target = model.find(edit.to);
  const bool wants_metric = target && target->kind != GoalKind::SoftGoal;
  if (std::holds_alternative<MetricValue>(edit.payload) != wants_metric) {
    throw Error(ErrorKind::Edit, "contribution.payload-kind",
                "link to '" + edit.to.value + "' must carry " +
                    (wants_metric ? "a metric value" : "a contribution symbol"));
  }
  ContributionPayload payload = edit.payload;
  if (auto* metric = std::get_if<MetricValue>(&payload)) {
    if (!std::isfinite(metric->value)) {
      throw Error(ErrorKind::Edit, "whatif.non-finite", "metric value must be finite");
    }
    if (metric->metric_name.empty()) metric->metric_name = std::get<MetricValue>(link->payload).metric_name;
  }
  link->payload = payload;

  const auto& alts = stages.raw.alternatives;
  const auto& crit = stages.raw.criteria;
  auto row = std::find(alts.begin(), alts.end(), edit.from);
  auto col = std::find(crit.begin(), crit.end(), edit.to);
  if (row == alts.end() || col == crit.end()) return;  // outside this scenario's table
  stages.raw.at(static_cast<std::size_t>(row - alts.begin()), static_cast<std::size_t>(col - crit.begin())) = payload;
  recomputed.push_back("contribution-table");
  stages.matrix = compute_matrix(stages.raw, stages.weights);
  recomputed.push_back("decision-matrix");
  stages.ranking = compute_ranking(stages.matrix);
  recomputed.push_back("topsis");
}

void rerun_from_weights(const CriteriaHierarchy& hierarchy, Stages& stages, std::vector<std::string>& recomputed) {
  stages.weights = compute_weights(hierarchy);
  recomputed.push_back("global-weights");
  stages.matrix = compute_matrix(stages.raw, stages.weights);
  recomputed.push_back("decision-matrix");
  stages.ranking = compute_ranking(stages.matrix);
  recomputed.push_back("topsis");
}

CriterionNode& editable_node(CriteriaHierarchy& hierarchy, const std::string& id) {
  CriterionNode* node = hierarchy.find(id);
  if (!node || node->is_leaf()) {
    throw Error(ErrorKind::Edit, "whatif.unknown-node", "no internal criterion '" + id + "' to edit");
  }
  return *node;
}

}  // namespace

WhatIfResult what_if(const std::string& name, const ScenarioDefinition& scenario, const GoalModel& model,
                     const CriteriaHierarchy& hierarchy, const WhatIfEdit& edit) {
  const Stages baseline = scenario_stages(scenario, model, hierarchy);

  WhatIfResult result;
  result.baseline = assemble(name, scenario, baseline);
  result.model = model;
  result.hierarchy = hierarchy;

  Stages edited = baseline;
  try {
    if (const auto* contribution = std::get_if<ContributionEdit>(&edit)) {
      apply_contribution_edit(*contribution, result.model, edited, result.recomputed);
    } else if (const auto* weights = std::get_if<WeightsEdit>(&edit)) {
      CriterionNode& node = editable_node(result.hierarchy, weights->node);
      if (!node.local || !std::holds_alternative<GivenWeights>(*node.local)) {
        throw Error(ErrorKind::Edit, "whatif.not-given-weights",
                    "criterion '" + weights->node + "' derives its weights from judgments");
      }
      const auto& w = weights->weights;
      if (w.size() != node.children.size()) {
        throw Error(ErrorKind::Edit, "whatif.weights-size",
                    "criterion '" + weights->node + "' needs " + std::to_string(node.children.size()) + " weights");
      }
      if (std::any_of(w.begin(), w.end(), [](double v) { return !(v >= 0.0) || !std::isfinite(v); })) {
        throw Error(ErrorKind::Edit, "whatif.negative-weight", "local weights must be non-negative");
      }
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      if (!(total > 0.0)) {
        throw Error(ErrorKind::Edit, "whatif.zero-weights", "at least one local weight must be positive");
      }
      std::vector<double> normalized = w;
      for (auto& v : normalized) v /= total;
      node.local = GivenWeights{PriorityVector{std::move(normalized)}};
      rerun_from_weights(result.hierarchy, edited, result.recomputed);
    } else if (const auto* judgment = std::get_if<JudgmentEdit>(&edit)) {
      CriterionNode& node = editable_node(result.hierarchy, judgment->node);
      if (!node.local || !std::holds_alternative<Judgments>(*node.local)) {
        throw Error(ErrorKind::Edit, "whatif.not-judgments",
                    "criterion '" + judgment->node + "' uses given weights, not judgments");
      }
      std::get<Judgments>(*node.local).matrix.set_judgment(judgment->row, judgment->col, judgment->value);
      rerun_from_weights(result.hierarchy, edited, result.recomputed);
    }
  } catch (Error& e) {
    if (e.step().empty()) e.set_step("what-if edit");
    throw;
  }

  if (result.recomputed.empty()) {
    result.edited = result.baseline;
  } else {
    result.recomputed.push_back("selection");
    result.edited = assemble(name, scenario, edited);
  }
  result.delta = compare_rankings(baseline.raw.alternatives, baseline.ranking, edited.ranking);
  return result;
}

}  // namespace igape
