#include "igape/serialization.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace igape {

namespace {

[[noreturn]] void schema_error(const std::string& message) {
  throw Error(ErrorKind::Parse, "document.schema", message);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema_error(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) schema_error(std::string("missing field '") + key + "'");
  return *it;
}

bool has(const Json& j, const char* key) { return j.is_object() && j.contains(key); }

std::string as_string(const Json& v, const char* what) {
  if (!v.is_string()) schema_error(std::string("'") + what + "' must be a string");
  return v.get<std::string>();
}

std::string str(const Json& j, const char* key) { return as_string(field(j, key), key); }

std::string opt_str(const Json& j, const char* key) { return has(j, key) ? str(j, key) : std::string(); }

std::optional<std::string> maybe_str(const Json& j, const char* key) {
  if (!has(j, key) || j.at(key).is_null()) return std::nullopt;
  return str(j, key);
}

double as_number(const Json& v, const char* what) {
  if (!v.is_number()) schema_error(std::string("'") + what + "' must be a number");
  return v.get<double>();
}

double num(const Json& j, const char* key) { return as_number(field(j, key), key); }

// Judgments may be written as numbers or as "a/b" fractions.
double judgment_value(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto text = v.get<std::string>();
    const auto slash = text.find('/');
    auto parse = [&](std::string_view part) {
      double out = 0.0;
      auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
      if (ec != std::errc() || ptr != part.data() + part.size()) schema_error("bad judgment '" + text + "'");
      return out;
    };
    if (slash == std::string::npos) return parse(text);
    return parse(std::string_view(text).substr(0, slash)) / parse(std::string_view(text).substr(slash + 1));
  }
  schema_error("judgments must be numbers or \"a/b\" fractions");
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) schema_error(std::string("'") + key + "' must be an array");
  return v;
}

template <typename T>
std::vector<T> list(const Json& j, const char* key) {
  std::vector<T> out;
  if (!has(j, key)) return out;
  const Json& arr = array_field(j, key);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    try {
      out.push_back(arr[i].template get<T>());
    } catch (const Error& e) {
      throw Error(e.kind(), e.rule(), std::string(key) + "[" + std::to_string(i) + "]: " + e.message());
    }
  }
  return out;
}

std::vector<std::string> strings(const Json& j, const char* key) {
  std::vector<std::string> out;
  if (!has(j, key)) return out;
  for (const auto& v : array_field(j, key)) out.push_back(as_string(v, key));
  return out;
}

std::vector<GoalId> goal_ids(const Json& j, const char* key) {
  std::vector<GoalId> out;
  for (auto& s : strings(j, key)) out.push_back(GoalId{std::move(s)});
  return out;
}

Json ids_to_json(const std::vector<GoalId>& ids) {
  Json arr = Json::array();
  for (const auto& id : ids) arr.push_back(id.value);
  return arr;
}

std::vector<double> numbers(const Json& v, const char* what) {
  if (!v.is_array()) schema_error(std::string("'") + what + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(as_number(x, what));
  return out;
}

Json rows_to_json(const std::vector<double>& values, std::size_t rows, std::size_t cols) {
  Json out = Json::array();
  for (std::size_t i = 0; i < rows; ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < cols; ++k) row.push_back(values[i * cols + k]);
    out.push_back(std::move(row));
  }
  return out;
}

void put_if(Json& j, const char* key, const std::string& value) {
  if (!value.empty()) j[key] = value;
}

template <typename Enum, std::size_t N>
Enum parse_enum(const Json& j, const char* key, const std::pair<const char*, Enum> (&table)[N]) {
  const auto text = str(j, key);
  for (const auto& [name, value] : table) {
    if (text == name) return value;
  }
  schema_error("unknown " + std::string(key) + " '" + text + "'");
}

template <typename Enum, std::size_t N>
const char* enum_name(Enum value, const std::pair<const char*, Enum> (&table)[N]) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return "?";
}

constexpr std::pair<const char*, GoalKind> kKinds[] = {{"intermediate", GoalKind::Intermediate},
                                                       {"hard-goal", GoalKind::HardGoal},
                                                       {"nfrb", GoalKind::NFRB},
                                                       {"nfrn", GoalKind::NFRN},
                                                       {"soft-goal", GoalKind::SoftGoal}};
constexpr std::pair<const char*, Decomposition> kDecompositions[] = {
    {"none", Decomposition::None}, {"and", Decomposition::And}, {"or", Decomposition::Or}};
constexpr std::pair<const char*, Stability> kStability[] = {{"volatile", Stability::Volatile},
                                                            {"presumably-stable", Stability::PresumablyStable},
                                                            {"stable", Stability::Stable}};
constexpr std::pair<const char*, NegotiationStatus> kNegotiation[] = {
    {"unknown", NegotiationStatus::Unknown},
    {"conflicting", NegotiationStatus::Conflicting},
    {"in-agreement", NegotiationStatus::InAgreement},
    {"agreed", NegotiationStatus::Agreed}};
constexpr std::pair<const char*, Priority> kPriority[] = {
    {"high", Priority::High}, {"medium", Priority::Medium}, {"low", Priority::Low}};
constexpr std::pair<const char*, DependencyKind> kDependency[] = {{"requires", DependencyKind::Requires},
                                                                  {"conflict", DependencyKind::Conflict}};
constexpr std::pair<const char*, Direction> kDirections[] = {{"benefit", Direction::Benefit},
                                                             {"cost", Direction::Cost}};
constexpr std::pair<const char*, ScenarioKind> kScenarioKinds[] = {
    {"choose-alternative", ScenarioKind::ChooseAlternative},
    {"prioritize-and-choose", ScenarioKind::PrioritizeAndChoose}};

Json payload_fields(Json j, const ContributionPayload& payload) {
  if (const auto* metric = std::get_if<MetricValue>(&payload)) {
    j["metric"] = metric->metric_name;
    j["value"] = metric->value;
  } else {
    j["symbol"] = std::string(to_string(std::get<Symbolic>(payload).symbol));
  }
  return j;
}

ContributionPayload payload_from(const Json& j) {
  if (has(j, "symbol")) {
    const auto text = str(j, "symbol");
    auto symbol = parse_contribution_symbol(text);
    if (!symbol) schema_error("unknown contribution symbol '" + text + "'");
    return Symbolic{*symbol};
  }
  if (has(j, "value")) return MetricValue{opt_str(j, "metric"), num(j, "value")};
  schema_error("contribution needs either 'symbol' or 'value'");
}

}  // namespace

// ---------------------------------------------------------------- goal model

void to_json(Json& j, const Goal& g) {
  j = Json::object();
  j["id"] = g.id.value;
  j["name"] = g.name;
  j["kind"] = enum_name(g.kind, kKinds);
  if (g.decomposition != Decomposition::None) j["decomposition"] = enum_name(g.decomposition, kDecompositions);
  if (g.parent) j["parent"] = g.parent->value;
  if (!g.children.empty()) j["children"] = ids_to_json(g.children);
  if (g.cluster) j["cluster"] = g.cluster->value;
  put_if(j, "description", g.description);
  put_if(j, "source", g.source);
  put_if(j, "authors", g.authors);
  put_if(j, "stakeholders", g.stakeholders);
  put_if(j, "assignment", g.assignment);
  if (g.attributes) {
    j["attributes"] = {{"stability", enum_name(g.attributes->stability, kStability)},
                       {"negotiation_status", enum_name(g.attributes->negotiation_status, kNegotiation)},
                       {"priority", enum_name(g.attributes->priority, kPriority)}};
  }
  if (g.acceptance_criteria) j["acceptance_criteria"] = *g.acceptance_criteria;
  if (!g.obstacles.empty()) {
    Json arr = Json::array();
    for (const auto& o : g.obstacles) arr.push_back({{"scenario", o.scenario}, {"resolution", o.resolution}});
    j["obstacles"] = std::move(arr);
  }
  if (g.use_case_id) j["use_case_id"] = *g.use_case_id;
  put_if(j, "version", g.version);
  if (!g.change_history.empty()) {
    Json arr = Json::array();
    for (const auto& c : g.change_history) {
      arr.push_back({{"date", c.date}, {"version", c.version}, {"author", c.author}, {"reason", c.reason}});
    }
    j["change_history"] = std::move(arr);
  }
  if (!g.references.empty()) j["references"] = g.references;
}

void from_json(const Json& j, Goal& g) {
  g = Goal{};
  g.id = GoalId{str(j, "id")};
  try {
    g.name = str(j, "name");
    g.kind = parse_enum(j, "kind", kKinds);
    if (has(j, "decomposition")) g.decomposition = parse_enum(j, "decomposition", kDecompositions);
    if (auto p = maybe_str(j, "parent")) g.parent = GoalId{*p};
    g.children = goal_ids(j, "children");
    if (auto c = maybe_str(j, "cluster")) g.cluster = ClusterId{*c};
    g.description = opt_str(j, "description");
    g.source = opt_str(j, "source");
    g.authors = opt_str(j, "authors");
    g.stakeholders = opt_str(j, "stakeholders");
    g.assignment = opt_str(j, "assignment");
    if (has(j, "attributes")) {
      const Json& a = j.at("attributes");
      g.attributes = GoalAttributes{parse_enum(a, "stability", kStability),
                                    parse_enum(a, "negotiation_status", kNegotiation),
                                    parse_enum(a, "priority", kPriority)};
    }
    g.acceptance_criteria = maybe_str(j, "acceptance_criteria");
    if (has(j, "obstacles")) {
      for (const auto& o : array_field(j, "obstacles")) {
        g.obstacles.push_back({opt_str(o, "scenario"), opt_str(o, "resolution")});
      }
    }
    g.use_case_id = maybe_str(j, "use_case_id");
    g.version = opt_str(j, "version");
    if (has(j, "change_history")) {
      for (const auto& c : array_field(j, "change_history")) {
        g.change_history.push_back({opt_str(c, "date"), opt_str(c, "version"), opt_str(c, "author"), opt_str(c, "reason")});
      }
    }
    g.references = strings(j, "references");
  } catch (const Error& e) {
    throw Error(e.kind(), e.rule(), "goal '" + g.id.value + "': " + e.message());
  }
}

void to_json(Json& j, const ContributionLink& link) {
  j = payload_fields(Json{{"from", link.from.value}, {"to", link.to.value}}, link.payload);
}

void from_json(const Json& j, ContributionLink& link) {
  link.from = GoalId{str(j, "from")};
  link.to = GoalId{str(j, "to")};
  link.payload = payload_from(j);
}

void to_json(Json& j, const Dependency& dep) {
  j = Json{{"kind", enum_name(dep.kind, kDependency)}, {"from", dep.from.value}, {"to", dep.to.value}};
  put_if(j, "description", dep.description);
}

void from_json(const Json& j, Dependency& dep) {
  dep.kind = parse_enum(j, "kind", kDependency);
  dep.from = GoalId{str(j, "from")};
  dep.to = GoalId{str(j, "to")};
  dep.description = opt_str(j, "description");
}

void to_json(Json& j, const Cluster& c) {
  j = Json{{"id", c.id.value}, {"root", c.root.value}, {"members", ids_to_json(c.members)},
           {"quality_requirements", ids_to_json(c.quality_requirements)}};
}

void from_json(const Json& j, Cluster& c) {
  c.id = ClusterId{str(j, "id")};
  c.root = GoalId{str(j, "root")};
  c.members = goal_ids(j, "members");
  c.quality_requirements = goal_ids(j, "quality_requirements");
}

void to_json(Json& j, const GoalModel& m) {
  j = Json::object();
  j["name"] = m.name;
  put_if(j, "version", m.version);
  j["goals"] = m.goals;
  j["clusters"] = m.clusters;
  j["contributions"] = m.contributions;
  j["dependencies"] = m.dependencies;
}

void from_json(const Json& j, GoalModel& m) {
  m = GoalModel{};
  m.name = opt_str(j, "name");
  m.version = opt_str(j, "version");
  m.goals = list<Goal>(j, "goals");
  m.clusters = list<Cluster>(j, "clusters");
  m.contributions = list<ContributionLink>(j, "contributions");
  m.dependencies = list<Dependency>(j, "dependencies");
}

void to_json(Json& j, const ValidationReport& report) {
  Json arr = Json::array();
  for (const auto& v : report.violations) {
    arr.push_back({{"severity", std::string(to_string(v.severity))},
                   {"rule", v.rule},
                   {"goal", v.goal},
                   {"message", v.message}});
  }
  j = Json{{"errors", report.error_count()}, {"violations", std::move(arr)}};
}

void to_json(Json& j, const RawTable& t) {
  Json cells = Json::array();
  for (std::size_t i = 0; i < t.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < t.cols(); ++k) row.push_back(payload_fields(Json::object(), t.at(i, k)));
    cells.push_back(std::move(row));
  }
  Json kinds = Json::array();
  for (auto kind : t.criterion_kinds) kinds.push_back(enum_name(kind, kKinds));
  j = Json{{"alternatives", ids_to_json(t.alternatives)},
           {"criteria", ids_to_json(t.criteria)},
           {"criterion_kinds", std::move(kinds)},
           {"cells", std::move(cells)}};
}

// ----------------------------------------------------------------------- AHP

void to_json(Json& j, const ComparisonMatrix& m) { j = m.to_rows(); }

void from_json(const Json& j, ComparisonMatrix& m) {
  const Json& rows = j.is_object() ? field(j, "matrix") : j;
  if (!rows.is_array()) schema_error("comparison matrix must be an array of rows");
  std::vector<std::vector<double>> out;
  for (const auto& row : rows) {
    if (!row.is_array()) schema_error("comparison matrix rows must be arrays");
    std::vector<double> values;
    for (const auto& v : row) values.push_back(judgment_value(v));
    out.push_back(std::move(values));
  }
  m = ComparisonMatrix::from_rows(out);
}

void to_json(Json& j, const ConsistencyReport& r) {
  j = Json{{"lambda_max", r.lambda_max}, {"ci", r.ci}, {"cr", r.cr}, {"acceptable", r.acceptable}};
}

void to_json(Json& j, const Priorities& p) {
  j = Json{{"weights", p.vector.weights}, {"consistency", p.consistency}, {"warnings", p.warnings}};
}

Json local_source_to_json(const LocalSource& source) {
  if (const auto* given = std::get_if<GivenWeights>(&source)) return Json{{"weights", given->vector.weights}};
  return Json{{"judgments", std::get<Judgments>(source).matrix}};
}

LocalSource local_source_from_json(const Json& j) {
  if (has(j, "weights")) return GivenWeights{PriorityVector{numbers(j.at("weights"), "weights")}};
  if (has(j, "judgments")) return Judgments{j.at("judgments").get<ComparisonMatrix>()};
  schema_error("expected 'weights' or 'judgments'");
}

void to_json(Json& j, const CriterionNode& node) {
  j = Json{{"id", node.id}};
  if (node.local) {
    const auto local = local_source_to_json(*node.local);
    for (const auto& [key, value] : local.items()) j[key] = value;
  }
  if (!node.children.empty()) j["children"] = node.children;
}

void from_json(const Json& j, CriterionNode& node) {
  node = CriterionNode{};
  node.id = str(j, "id");
  if (has(j, "weights") || has(j, "judgments")) node.local = local_source_from_json(j);
  node.children = list<CriterionNode>(j, "children");
}

void to_json(Json& j, const CriteriaHierarchy& h) { to_json(j, h.root); }
void from_json(const Json& j, CriteriaHierarchy& h) { from_json(j, h.root); }

void to_json(Json& j, const GlobalWeights& w) {
  Json leaves = Json::array();
  for (const auto& leaf : w.leaves) leaves.push_back({{"id", leaf.id}, {"weight", leaf.weight}, {"factors", leaf.factors}});
  Json nodes = Json::array();
  for (const auto& node : w.nodes) {
    nodes.push_back({{"id", node.id}, {"children", node.children}, {"derived", node.derived}, {"local", node.local}});
  }
  j = Json{{"leaves", std::move(leaves)}, {"nodes", std::move(nodes)}, {"warnings", w.warnings}};
}

// -------------------------------------------------------------------- TOPSIS

void to_json(Json& j, const DecisionMatrix& m) {
  Json criteria = Json::array();
  for (const auto& c : m.criteria) {
    criteria.push_back({{"id", c.id}, {"direction", enum_name(c.direction, kDirections)}, {"weight", c.weight}});
  }
  j = Json{{"alternatives", m.alternatives},
           {"criteria", std::move(criteria)},
           {"values", rows_to_json(m.values, m.rows(), m.cols())}};
}

void from_json(const Json& j, DecisionMatrix& m) {
  m = DecisionMatrix{};
  m.alternatives = strings(j, "alternatives");
  for (const auto& c : array_field(j, "criteria")) {
    m.criteria.push_back({str(c, "id"), parse_enum(c, "direction", kDirections), num(c, "weight")});
  }
  const Json& rows = array_field(j, "values");
  if (rows.size() != m.alternatives.size()) schema_error("'values' needs one row per alternative");
  for (const auto& row : rows) {
    auto values = numbers(row, "values");
    if (values.size() != m.criteria.size()) schema_error("every 'values' row needs one cell per criterion");
    m.values.insert(m.values.end(), values.begin(), values.end());
  }
}

void to_json(Json& j, const TopsisResult& r) {
  j = Json{{"normalized", rows_to_json(r.normalized, r.rows, r.cols)},
           {"weighted", rows_to_json(r.weighted, r.rows, r.cols)},
           {"ideal", r.ideal},
           {"anti_ideal", r.anti_ideal},
           {"s_plus", r.s_plus},
           {"s_minus", r.s_minus},
           {"closeness", r.closeness},
           {"ranking", r.ranking},
           {"tie_break", "declaration order"},
           {"warnings", r.warnings}};
}

// ---------------------------------------------------------- decision engine

Json policy_to_json(const SelectionPolicy& policy) {
  if (const auto* top = std::get_if<TopK>(&policy)) {
    Json j{{"type", "top-k"}, {"k", top->k}};
    if (!top->per_goal.empty()) j["per_goal"] = top->per_goal;
    return j;
  }
  if (const auto* bands = std::get_if<PriorityBands>(&policy)) {
    Json arr = Json::array();
    for (const auto& b : bands->bands) {
      Json band{{"min_priority", b.min_priority}};
      if (b.count) band["count"] = *b.count;
      arr.push_back(std::move(band));
    }
    return Json{{"type", "priority-bands"}, {"bands", std::move(arr)}};
  }
  const auto& manual = std::get<Manual>(policy);
  Json chosen = Json::object();
  for (const auto& [goal, alts] : manual.chosen) chosen[goal] = ids_to_json(alts);
  return Json{{"type", "manual"}, {"chosen", std::move(chosen)}, {"rationale", manual.rationale}};
}

SelectionPolicy policy_from_json(const Json& j) {
  const auto type = str(j, "type");
  if (type == "top-k") {
    TopK top;
    top.k = field(j, "k").get<int>();
    if (has(j, "per_goal")) {
      for (const auto& [goal, k] : j.at("per_goal").items()) top.per_goal[goal] = k.get<int>();
    }
    return top;
  }
  if (type == "priority-bands") {
    if (!has(j, "bands")) return PriorityBands::defaults();
    PriorityBands bands;
    for (const auto& b : array_field(j, "bands")) {
      PriorityBand band{num(b, "min_priority"), std::nullopt};
      if (has(b, "count") && !b.at("count").is_null()) band.count = b.at("count").get<int>();
      bands.bands.push_back(band);
    }
    return bands;
  }
  if (type == "manual") {
    Manual manual;
    const Json& chosen = field(j, "chosen");
    if (!chosen.is_object()) schema_error("'chosen' must map goals to alternative lists");
    for (const auto& [goal, alts] : chosen.items()) {
      std::vector<GoalId> ids;
      for (const auto& a : alts) ids.push_back(GoalId{as_string(a, "chosen")});
      manual.chosen[goal] = std::move(ids);
    }
    manual.rationale = opt_str(j, "rationale");
    return manual;
  }
  schema_error("unknown policy type '" + type + "'");
}

Json edit_to_json(const WhatIfEdit& edit) {
  if (const auto* c = std::get_if<ContributionEdit>(&edit)) {
    return payload_fields(Json{{"type", "contribution"}, {"from", c->from.value}, {"to", c->to.value}}, c->payload);
  }
  if (const auto* w = std::get_if<WeightsEdit>(&edit)) {
    return Json{{"type", "weights"}, {"node", w->node}, {"weights", w->weights}};
  }
  if (const auto* m = std::get_if<JudgmentEdit>(&edit)) {
    return Json{{"type", "judgment"}, {"node", m->node}, {"row", m->row}, {"col", m->col}, {"value", m->value}};
  }
  return Json{{"type", "none"}};
}

WhatIfEdit edit_from_json(const Json& j) {
  const auto type = str(j, "type");
  if (type == "none") return std::monostate{};
  if (type == "contribution") return ContributionEdit{GoalId{str(j, "from")}, GoalId{str(j, "to")}, payload_from(j)};
  if (type == "weights") return WeightsEdit{str(j, "node"), numbers(field(j, "weights"), "weights")};
  if (type == "judgment") {
    const Json& row = field(j, "row");
    const Json& col = field(j, "col");
    if (!row.is_number_unsigned() || !col.is_number_unsigned()) schema_error("'row' and 'col' must be non-negative integers");
    return JudgmentEdit{str(j, "node"), row.get<std::size_t>(), col.get<std::size_t>(), judgment_value(field(j, "value"))};
  }
  schema_error("unknown edit type '" + type + "'");
}

void to_json(Json& j, const ScenarioDefinition& s) {
  j = Json{{"kind", enum_name(s.kind, kScenarioKinds)},
           {"cluster", s.cluster.value},
           {"alternatives", ids_to_json(s.alternatives)},
           {"hierarchy", s.hierarchy}};
  if (!s.goals.empty()) j["goals"] = ids_to_json(s.goals);
  if (s.goal_priorities) j["goal_priorities"] = local_source_to_json(*s.goal_priorities);
  if (s.policy) j["policy"] = policy_to_json(*s.policy);
}

void from_json(const Json& j, ScenarioDefinition& s) {
  s = ScenarioDefinition{};
  s.kind = parse_enum(j, "kind", kScenarioKinds);
  s.cluster = ClusterId{str(j, "cluster")};
  s.alternatives = goal_ids(j, "alternatives");
  s.hierarchy = str(j, "hierarchy");
  s.goals = goal_ids(j, "goals");
  if (has(j, "goal_priorities")) s.goal_priorities = local_source_from_json(j.at("goal_priorities"));
  if (has(j, "policy")) s.policy = policy_from_json(j.at("policy"));
}

void to_json(Json& j, const SelectionRecord& r) {
  j = Json{{"policy", r.policy}};
  if (r.goal) j["goal"] = r.goal->value;
  if (r.priority) j["priority"] = *r.priority;
  j["chosen"] = ids_to_json(r.chosen);
  j["detail"] = r.detail;
}

namespace {

Json trace_data_to_json(const TraceData& data) {
  return std::visit(
      [](const auto& value) -> Json {
        using T = std::decay_t<decltype(value)>;
        Json body = value;
        const char* type = std::is_same_v<T, GlobalWeights>    ? "global-weights"
                           : std::is_same_v<T, RawTable>       ? "contribution-table"
                           : std::is_same_v<T, DecisionMatrix> ? "decision-matrix"
                           : std::is_same_v<T, TopsisResult>   ? "topsis"
                           : std::is_same_v<T, Priorities>     ? "priorities"
                                                               : "selection";
        return Json{{"type", type}, {"value", std::move(body)}};
      },
      data);
}

}  // namespace

void to_json(Json& j, const DecisionOutcome& o) {
  j = Json{{"scenario", enum_name(o.scenario, kScenarioKinds)}};
  if (o.goal) j["goal"] = o.goal->value;
  j["alternatives"] = ids_to_json(o.alternatives);
  j["chosen"] = ids_to_json(o.chosen);
  j["rejected"] = ids_to_json(o.rejected);
  if (o.goal_priorities) j["goal_priorities"] = o.goal_priorities->weights;
  j["ranking"] = o.ranking;
  Json trace = Json::array();
  for (const auto& step : o.trace) {
    trace.push_back({{"step", step.step}, {"summary", step.summary}, {"data", trace_data_to_json(step.data)}});
  }
  j["trace"] = std::move(trace);
  j["warnings"] = o.warnings;
}

void to_json(Json& j, const ScenarioResult& r) {
  j = Json{{"scenario", r.name}, {"kind", enum_name(r.kind, kScenarioKinds)}, {"outcomes", r.outcomes}};
}

void to_json(Json& j, const DeltaReport& d) {
  Json moves = Json::array();
  for (const auto& m : d.rank_moves) {
    moves.push_back({{"alternative", m.alternative.value}, {"from_rank", m.from_rank}, {"to_rank", m.to_rank}});
  }
  Json closeness = Json::array();
  for (const auto& c : d.closeness) {
    closeness.push_back(
        {{"alternative", c.alternative.value}, {"before", c.before}, {"after", c.after}, {"delta", c.delta()}});
  }
  j = Json{{"rank_moves", std::move(moves)}, {"closeness", std::move(closeness)}};
}

// --------------------------------------------------------------- concordance

void to_json(Json& j, const RankMatrix& m) {
  Json ranks = Json::array();
  for (std::size_t r = 0; r < m.k(); ++r) {
    Json row = Json::array();
    for (std::size_t a = 0; a < m.n(); ++a) row.push_back(m.at(r, a));
    ranks.push_back(std::move(row));
  }
  j = Json{{"judges", m.judges}, {"alternatives", m.alternatives}, {"ranks", std::move(ranks)}};
}

void from_json(const Json& j, RankMatrix& m) {
  m = RankMatrix{};
  m.judges = strings(j, "judges");
  m.alternatives = strings(j, "alternatives");
  const Json& rows = array_field(j, "ranks");
  if (rows.size() != m.judges.size()) schema_error("'ranks' needs one row per judge");
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != m.alternatives.size()) {
      schema_error("every 'ranks' row needs one rank per alternative");
    }
    for (const auto& v : row) {
      if (!v.is_number_integer()) schema_error("ranks must be integers");
      m.ranks.push_back(v.get<int>());
    }
  }
}

void to_json(Json& j, const ConcordanceResult& r) {
  j = Json{{"rank_sums", r.rank_sums},
           {"mean_rank_sum", r.mean_rank_sum},
           {"s", r.s},
           {"w", r.w},
           {"threshold", r.threshold},
           {"good_agreement", r.good_agreement},
           {"consensus_order", r.consensus_order},
           {"consensus_ties", r.consensus_ties}};
}

void to_json(Json& j, const ComparisonReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"judge", row.judge},
                    {"chosen", row.chosen},
                    {"rejected", row.rejected},
                    {"ranking", row.ranking},
                    {"chosen_matches", row.chosen_matches},
                    {"rejected_matches", row.rejected_matches},
                    {"full_match", row.full_match}});
  }
  j = Json{{"rows", std::move(rows)},
           {"experts", r.experts},
           {"chose_same", r.chose_same},
           {"rejected_same", r.rejected_same},
           {"full_matches", r.full_matches},
           {"matrix", r.matrix},
           {"concordance", r.concordance}};
}

Json error_to_json(const Error& error) {
  Json body{{"kind", std::string(to_string(error.kind()))}, {"rule", error.rule()}, {"message", error.message()}};
  if (!error.step().empty()) body["step"] = error.step();
  return Json{{"error", std::move(body)}};
}

}  // namespace igape
