#include "igape/goal_model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "igape/error.hpp"

namespace igape {

std::string_view to_string(ContributionSymbol symbol) noexcept {
  switch (symbol) {
    case ContributionSymbol::StrongPositive: return "++";
    case ContributionSymbol::Positive: return "+";
    case ContributionSymbol::Neutral: return "o";
    case ContributionSymbol::Negative: return "-";
    case ContributionSymbol::StrongNegative: return "--";
  }
  return "?";
}

std::optional<ContributionSymbol> parse_contribution_symbol(std::string_view text) noexcept {
  if (text == "++") return ContributionSymbol::StrongPositive;
  if (text == "+") return ContributionSymbol::Positive;
  if (text == "o") return ContributionSymbol::Neutral;
  if (text == "-") return ContributionSymbol::Negative;
  if (text == "--") return ContributionSymbol::StrongNegative;
  return std::nullopt;
}

std::string_view to_string(GoalKind kind) noexcept {
  switch (kind) {
    case GoalKind::Intermediate: return "intermediate";
    case GoalKind::HardGoal: return "hard-goal";
    case GoalKind::NFRB: return "nfrb";
    case GoalKind::NFRN: return "nfrn";
    case GoalKind::SoftGoal: return "soft-goal";
  }
  return "?";
}

std::string_view to_string(Decomposition decomposition) noexcept {
  switch (decomposition) {
    case Decomposition::None: return "none";
    case Decomposition::And: return "and";
    case Decomposition::Or: return "or";
  }
  return "?";
}

std::string_view to_string(Severity severity) noexcept {
  return severity == Severity::Error ? "error" : "warning";
}

const Goal* GoalModel::find(const GoalId& id) const noexcept {
  auto it = std::find_if(goals.begin(), goals.end(), [&](const Goal& g) { return g.id == id; });
  return it == goals.end() ? nullptr : &*it;
}

const Cluster* GoalModel::find_cluster(const ClusterId& id) const noexcept {
  auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) { return c.id == id; });
  return it == clusters.end() ? nullptr : &*it;
}

const ContributionLink* GoalModel::find_link(const GoalId& from, const GoalId& to) const noexcept {
  auto it = std::find_if(contributions.begin(), contributions.end(),
                         [&](const ContributionLink& l) { return l.from == from && l.to == to; });
  return it == contributions.end() ? nullptr : &*it;
}

std::size_t ValidationReport::error_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                [](const Violation& v) { return v.severity == Severity::Error; }));
}

namespace {

class Validator {
 public:
  explicit Validator(const GoalModel& model) : model_(model) {
    for (const auto& goal : model_.goals) {
      index_.emplace(goal.id.value, &goal);
    }
  }

  ValidationReport run() {
    check_goals();
    check_forest();
    check_contributions();
    check_dependencies();
    check_clusters();
    std::stable_sort(report_.violations.begin(), report_.violations.end(), [](const Violation& a, const Violation& b) {
      return std::tie(a.rule, a.goal, a.message) < std::tie(b.rule, b.goal, b.message);
    });
    return std::move(report_);
  }

 private:
  const Goal* lookup(const GoalId& id) const {
    auto it = index_.find(id.value);
    return it == index_.end() ? nullptr : it->second;
  }

  void error(std::string rule, const std::string& goal, std::string message) {
    report_.violations.push_back({Severity::Error, std::move(rule), goal, std::move(message)});
  }

  void warning(std::string rule, const std::string& goal, std::string message) {
    report_.violations.push_back({Severity::Warning, std::move(rule), goal, std::move(message)});
  }

  void check_goals() {
    std::set<std::string> seen;
    for (const auto& goal : model_.goals) {
      const auto& id = goal.id.value;
      if (id.empty()) error("goal.id-empty", id, "goal identifier is empty");
      if (!seen.insert(id).second) error("goal.id-duplicate", id, "goal identifier declared more than once");
      if (goal.name.empty()) error("goal.name-empty", id, "goal name is empty");

      if (!goal.is_leaf() && goal.kind != GoalKind::Intermediate) {
        error("classification.leaf-only", id,
              std::string("kind '") + std::string(to_string(goal.kind)) +
                  "' may only be assigned to a leaf goal, but this goal has sub-goals");
      }
      if (goal.is_leaf() && goal.kind == GoalKind::Intermediate) {
        error("classification.intermediate-leaf", id, "leaf goal must be classified as a hard goal or a quality requirement");
      }
      if (goal.is_leaf() != (goal.decomposition == Decomposition::None)) {
        error("decomposition.mismatch", id,
              goal.is_leaf() ? "leaf goal declares an AND/OR decomposition"
                             : "goal with sub-goals must declare an AND or OR decomposition");
      }
      std::set<std::string> child_ids;
      for (const auto& child : goal.children) {
        if (!child_ids.insert(child.value).second) {
          error("hierarchy.duplicate-child", id, "sub-goal '" + child.value + "' listed twice");
        }
      }

      if (goal.attributes && !goal.is_leaf()) {
        warning("template.leaf-attributes", id, "stability/negotiation/priority attributes apply to leaf goals only");
      }
      if (goal.kind != GoalKind::HardGoal &&
          (goal.acceptance_criteria || !goal.obstacles.empty() || goal.use_case_id)) {
        warning("template.hard-goal-field", id,
                "acceptance criteria, obstacle analysis and use case id apply to hard goals only");
      }
      for (const auto& obstacle : goal.obstacles) {
        if (obstacle.scenario.empty() || obstacle.resolution.empty()) {
          error("template.obstacle-empty", id, "obstacle entries need both a scenario and a resolution");
        }
      }
      if (goal.cluster && !model_.find_cluster(*goal.cluster)) {
        error("cluster.unknown-cluster", id, "goal names unknown cluster '" + goal.cluster->value + "'");
      }
    }
  }

  void check_forest() {
    std::map<std::string, std::vector<std::string>> listed_by;
    for (const auto& goal : model_.goals) {
      for (const auto& child_id : goal.children) {
        listed_by[child_id.value].push_back(goal.id.value);
        const Goal* child = lookup(child_id);
        if (!child) {
          error("hierarchy.unknown-child", goal.id.value, "sub-goal '" + child_id.value + "' does not exist");
        } else if (!child->parent || child->parent->value != goal.id.value) {
          error("hierarchy.parent-mismatch", child_id.value,
                "listed as sub-goal of '" + goal.id.value + "' but its parent field does not name it");
        }
      }
      if (goal.parent) {
        const Goal* parent = lookup(*goal.parent);
        if (!parent) {
          error("hierarchy.unknown-parent", goal.id.value, "parent '" + goal.parent->value + "' does not exist");
        } else if (std::find(parent->children.begin(), parent->children.end(), goal.id) == parent->children.end()) {
          error("hierarchy.parent-mismatch", goal.id.value,
                "names '" + parent->id.value + "' as parent but is not among its sub-goals");
        }
      }
    }
    for (const auto& [child, parents] : listed_by) {
      std::set<std::string> distinct(parents.begin(), parents.end());
      if (distinct.size() > 1) {
        error("forest.multiple-parents", child, "goal is a sub-goal of more than one parent");
      }
    }

    // Parent pointers must not form cycles. Each cycle is reported once,
    // attributed to its smallest goal id.
    enum class Mark { Fresh, Active, Done };
    std::map<std::string, Mark> marks;
    for (const auto& goal : model_.goals) marks[goal.id.value] = Mark::Fresh;
    for (const auto& goal : model_.goals) {
      std::vector<const Goal*> path;
      const Goal* cursor = &goal;
      while (cursor && marks[cursor->id.value] == Mark::Fresh) {
        marks[cursor->id.value] = Mark::Active;
        path.push_back(cursor);
        cursor = cursor->parent ? lookup(*cursor->parent) : nullptr;
      }
      if (cursor && marks[cursor->id.value] == Mark::Active) {
        auto start = std::find(path.begin(), path.end(), cursor);
        std::vector<std::string> members;
        for (auto it = start; it != path.end(); ++it) members.push_back((*it)->id.value);
        std::sort(members.begin(), members.end());
        std::string chain;
        for (const auto& m : members) chain += (chain.empty() ? "" : ", ") + m;
        error("forest.cycle", members.front(), "parent chain forms a cycle through {" + chain + "}");
      }
      for (const Goal* g : path) marks[g->id.value] = Mark::Done;
    }
  }

  void check_contributions() {
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& link : model_.contributions) {
      const auto& from_id = link.from.value;
      const Goal* from = lookup(link.from);
      const Goal* to = lookup(link.to);
      if (!from || !to) {
        error("contribution.unknown-goal", from_id,
              "link " + from_id + " -> " + link.to.value + " references an unknown goal");
        continue;
      }
      if (!pairs.emplace(from_id, link.to.value).second) {
        error("contribution.duplicate", from_id, "more than one link " + from_id + " -> " + link.to.value);
      }
      if (from->kind != GoalKind::HardGoal) {
        error("contribution.source-kind", from_id,
              "contribution links must start at a hard goal, found '" + std::string(to_string(from->kind)) + "'");
      }
      if (!is_quality(to->kind)) {
        error("contribution.target-kind", from_id,
              "link target '" + link.to.value + "' is not a quality requirement");
        continue;
      }
      const bool metric = std::holds_alternative<MetricValue>(link.payload);
      const bool wants_metric = to->kind != GoalKind::SoftGoal;
      if (metric != wants_metric) {
        error("contribution.payload-kind", from_id,
              "link to '" + link.to.value + "' must carry " +
                  (wants_metric ? "a metric value (NFR target)" : "a contribution symbol (soft-goal target)"));
      }
    }
  }

  void check_dependencies() {
    for (const auto& dep : model_.dependencies) {
      if (!lookup(dep.from) || !lookup(dep.to)) {
        error("dependency.unknown-goal", dep.from.value,
              "dependency " + dep.from.value + " -> " + dep.to.value + " references an unknown goal");
      }
      if (dep.from == dep.to) {
        error("dependency.self", dep.from.value, "a goal cannot depend on itself");
      }
    }
  }

  bool reaches(const Goal& member, const GoalId& root) const {
    const Goal* cursor = &member;
    for (std::size_t steps = 0; cursor && steps <= model_.goals.size(); ++steps) {
      if (cursor->id == root) return true;
      cursor = cursor->parent ? lookup(*cursor->parent) : nullptr;
    }
    return false;
  }

  void check_clusters() {
    std::set<std::string> cluster_ids;
    std::map<std::string, std::string> owner;
    for (const auto& cluster : model_.clusters) {
      const auto& cid = cluster.id.value;
      if (!cluster_ids.insert(cid).second) {
        error("cluster.id-duplicate", cluster.root.value, "cluster '" + cid + "' declared more than once");
      }
      if (!lookup(cluster.root)) {
        error("cluster.unknown-goal", cluster.root.value, "root of cluster '" + cid + "' does not exist");
      }
      if (std::find(cluster.members.begin(), cluster.members.end(), cluster.root) == cluster.members.end()) {
        error("cluster.root-not-member", cluster.root.value, "cluster '" + cid + "' does not list its root as a member");
      }
      for (const auto& member_id : cluster.members) {
        const Goal* member = lookup(member_id);
        if (!member) {
          error("cluster.unknown-goal", member_id.value, "member of cluster '" + cid + "' does not exist");
          continue;
        }
        auto [it, inserted] = owner.emplace(member_id.value, cid);
        if (!inserted && it->second != cid) {
          error("cluster.overlap", member_id.value,
                "goal belongs to clusters '" + it->second + "' and '" + cid + "'");
        }
        if (!reaches(*member, cluster.root)) {
          error("cluster.unreachable-member", member_id.value,
                "member of cluster '" + cid + "' is not below its root '" + cluster.root.value + "'");
        }
        if (member->cluster && member->cluster->value != cid) {
          error("cluster.goal-mismatch", member_id.value,
                "goal declares cluster '" + member->cluster->value + "' but is a member of '" + cid + "'");
        }
      }
      for (const auto& qr_id : cluster.quality_requirements) {
        const Goal* qr = lookup(qr_id);
        if (!qr) {
          error("cluster.unknown-goal", qr_id.value, "quality requirement of cluster '" + cid + "' does not exist");
          continue;
        }
        if (!is_quality(qr->kind)) {
          error("cluster.quality-kind", qr_id.value, "listed as quality requirement but classified '" +
                                                         std::string(to_string(qr->kind)) + "'");
        }
        if (std::find(cluster.members.begin(), cluster.members.end(), qr_id) == cluster.members.end()) {
          error("cluster.quality-not-member", qr_id.value, "quality requirement is not a member of cluster '" + cid + "'");
        }
      }
    }
    for (const auto& goal : model_.goals) {
      if (goal.cluster && model_.find_cluster(*goal.cluster) && !owner.contains(goal.id.value)) {
        error("cluster.goal-mismatch", goal.id.value,
              "goal declares cluster '" + goal.cluster->value + "' but the cluster does not list it");
      }
    }
  }

  const GoalModel& model_;
  std::map<std::string, const Goal*> index_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_model(const GoalModel& model) { return Validator(model).run(); }

std::vector<GoalId> cluster_root_candidates(const GoalModel& model, const std::optional<ClusterId>& within) {
  std::vector<const Goal*> roots;
  if (within) {
    const Cluster* cluster = model.find_cluster(*within);
    if (!cluster) {
      throw Error(ErrorKind::Reference, "cluster.unknown", "unknown cluster '" + within->value + "'");
    }
    const Goal* root = model.find(cluster->root);
    if (!root) {
      throw Error(ErrorKind::Reference, "cluster.unknown-goal", "root of cluster '" + within->value + "' does not exist");
    }
    roots.push_back(root);
  } else {
    for (const auto& goal : model.goals) {
      if (!goal.parent) roots.push_back(&goal);
    }
  }

  std::vector<GoalId> out;
  for (const Goal* root : roots) {
    for (const auto& child_id : root->children) {
      const Goal* child = model.find(child_id);
      if (child && is_functional(child->kind)) out.push_back(child_id);
    }
  }
  return out;
}

RawTable contribution_table(const GoalModel& model, const ClusterId& cluster_id, std::span<const GoalId> alternatives) {
  const Cluster* cluster = model.find_cluster(cluster_id);
  if (!cluster) {
    throw Error(ErrorKind::Reference, "cluster.unknown", "unknown cluster '" + cluster_id.value + "'");
  }

  RawTable table;
  table.alternatives.assign(alternatives.begin(), alternatives.end());
  for (const auto& alt : alternatives) {
    const Goal* goal = model.find(alt);
    const bool member = std::find(cluster->members.begin(), cluster->members.end(), alt) != cluster->members.end();
    if (!goal || !member || goal->kind != GoalKind::HardGoal) {
      throw Error(ErrorKind::Reference, "table.alternative",
                  "alternative '" + alt.value + "' is not a hard-goal member of cluster '" + cluster_id.value + "'");
    }
  }
  for (const auto& qr_id : cluster->quality_requirements) {
    const Goal* qr = model.find(qr_id);
    if (!qr || !is_quality(qr->kind)) {
      throw Error(ErrorKind::Reference, "table.criterion",
                  "quality requirement '" + qr_id.value + "' of cluster '" + cluster_id.value + "' is invalid");
    }
    table.criteria.push_back(qr_id);
    table.criterion_kinds.push_back(qr->kind);
  }

  table.cells.reserve(table.rows() * table.cols());
  for (const auto& alt : table.alternatives) {
    for (const auto& qr_id : table.criteria) {
      const ContributionLink* link = model.find_link(alt, qr_id);
      if (!link) {
        throw Error(ErrorKind::Completeness, "table.missing-link",
                    "no contribution link from '" + alt.value + "' to '" + qr_id.value + "'");
      }
      table.cells.push_back(link->payload);
    }
  }
  return table;
}

}  // namespace igape
