#include "igape/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <csignal>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "igape/error.hpp"
#include "igape/persistence.hpp"
#include "igape/report.hpp"
#include "igape/serialization.hpp"
#include "igape/service.hpp"

namespace igape {

namespace {

int default_port() {
  if (const char* env = std::getenv("IGAPE_PORT")) {
    char* end = nullptr;
    const long port = std::strtol(env, &end, 10);
    if (end && *end == '\0' && port > 0 && port < 65536) return static_cast<int>(port);
  }
  return 8080;
}

std::string cell_text(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  const auto& r = std::get<Real>(cell);
  auto text = fmt::format("{:.{}f}", r.value, r.decimals);
  if (text.front() == '-' && text.find_first_not_of("-0.") == std::string::npos) text.erase(0, 1);
  return text;
}

/// Left-aligned text columns, numbers right-aligned, two-space gutter.
void print_table(std::ostream& out, const ReportTable& table, bool header = true) {
  std::vector<std::size_t> width(table.columns.size(), 0);
  if (header) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) width[c] = table.columns[c].size();
  }
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], cell_text(row[c]).size());
  }
  auto line = [&](const std::vector<std::string>& cells, const std::vector<bool>& numeric) {
    std::string text;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) text += "  ";
      const auto pad = std::string(width[c] - cells[c].size(), ' ');
      text += numeric[c] ? pad + cells[c] : cells[c] + (c + 1 < cells.size() ? pad : "");
    }
    out << text << '\n';
  };
  if (header) line(table.columns, std::vector<bool>(table.columns.size(), false));
  for (const auto& row : table.rows) {
    std::vector<std::string> cells;
    std::vector<bool> numeric;
    for (const auto& cell : row) {
      cells.push_back(cell_text(cell));
      numeric.push_back(!std::holds_alternative<std::string>(cell));
    }
    line(cells, numeric);
  }
}

const ReportTable& table_named(const ReportDocument& doc, const std::string& title) {
  for (const auto& t : doc.tables) {
    if (t.title == title) return t;
  }
  throw std::logic_error("report lacks table " + title);
}

void warn(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

enum class Format { Text, Csv, Json };

const std::map<std::string, Format> kFormats{{"text", Format::Text}, {"csv", Format::Csv}, {"json", Format::Json}};

struct Options {
  std::string model;
  std::string hierarchy;
  std::string scenario;
  std::string ranks;
  std::string experts;
  std::string out_path;
  std::string report_kind = "decision";
  std::string report_flavor = "human";
  std::string host = "127.0.0.1";
  int port = 0;
  bool json = false;
  bool persist = false;
  double threshold = kGoodAgreementThreshold;
  Format format = Format::Text;
};

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto doc = load_model(o.model);
  const auto report = validate_model(doc.model);
  if (o.format == Format::Json) {
    out << Json(report).dump(2) << '\n';
  } else {
    for (const auto& v : report.violations) {
      out << to_string(v.severity) << " [" << v.rule << "] " << (v.goal.empty() ? "" : v.goal + ": ") << v.message
          << '\n';
    }
  }
  const auto errors = report.error_count();
  err << o.model << ": " << errors << " error(s), " << report.violations.size() - errors << " warning(s)\n";
  return errors ? kExitDomain : kExitOk;
}

int cmd_weights(const Options& o, std::ostream& out, std::ostream& err) {
  const auto doc = load_model(o.model);
  const auto weights = global_weights(doc.hierarchy(o.hierarchy));
  warn(err, weights.warnings);
  if (o.format == Format::Json) {
    out << Json(weights).dump(2) << '\n';
    return kExitOk;
  }
  const auto report = weights_report(doc.model, o.hierarchy, weights);
  if (o.format == Format::Csv) {
    out << render(ReportDocument{report.kind, report.title, {}, {table_named(report, "Global weights")}},
                  ReportFlavor::Tabular);
    return kExitOk;
  }
  ReportTable t{"", {"criterion", "name", "weight"}, {}};
  for (const auto& row : table_named(report, "Global weights").rows) t.rows.push_back({row[0], row[1], row[3]});
  print_table(out, t);
  return kExitOk;
}

int cmd_rank(const Options& o, std::ostream& out, std::ostream& err) {
  const auto doc = load_model(o.model);
  const auto result = run_scenario(doc, o.scenario);
  const auto& outcome = result.outcomes.at(0);
  warn(err, outcome.warnings);
  if (o.format == Format::Json) {
    out << Json(outcome.ranking).dump(2) << '\n';
    return kExitOk;
  }
  const auto report = ranking_report(doc.model, result);
  if (o.format == Format::Csv) {
    out << render(report, ReportFlavor::Tabular);
    return kExitOk;
  }
  ReportTable t{"", {"rank", "alternative", "closeness"}, {}};
  for (const auto& row : table_named(report, "Ranking").rows) t.rows.push_back({row[0], row[1], row[2]});
  print_table(out, t);
  return kExitOk;
}

int cmd_decide(const Options& o, std::ostream& out, std::ostream& err) {
  const auto doc = load_model(o.model);
  const auto result = run_scenario(doc, o.scenario);
  warn(err, result.outcomes.at(0).warnings);
  if (o.json || o.format == Format::Json) {
    out << Json(result).dump(2) << '\n';
    return kExitOk;
  }
  const auto report = decision_report(doc.model, result);
  if (o.format == Format::Csv) {
    out << render(report, ReportFlavor::Tabular);
    return kExitOk;
  }
  for (const auto& line : report.summary) {
    if (line.rfind("warning: ", 0) != 0) out << line << '\n';
  }
  out << '\n';
  print_table(out, table_named(report, "Ranking"));
  if (result.kind == ScenarioKind::PrioritizeAndChoose) {
    out << '\n';
    print_table(out, table_named(report, "Selections"));
  }
  return kExitOk;
}

int cmd_concord(const Options& o, std::ostream& out, std::ostream&) {
  const auto matrix = import_rank_matrix(o.ranks);
  const auto result = kendall_w(matrix, o.threshold);
  if (o.format == Format::Json) {
    out << Json(result).dump(2) << '\n';
    return kExitOk;
  }
  const auto report = concordance_report(matrix, result);
  if (o.format == Format::Csv) {
    out << render(report, ReportFlavor::Tabular);
    return kExitOk;
  }
  std::vector<std::string> sums;
  for (long long r : result.rank_sums) sums.push_back(std::to_string(r));
  out << concordance_summary(result) << '\n';
  out << "R = (" << fmt::format("{}", fmt::join(sums, ", ")) << ")\n";
  out << "s = " << fmt::format("{}", result.s) << '\n';
  out << report.summary.at(1) << '\n';
  return kExitOk;
}

MethodRanking method_for(const ModelDocument& doc, const ScenarioResult& result) {
  auto method = MethodRanking::from_outcome(result.outcomes.at(0));
  auto rename = [&](std::string& id) { id = goal_label(doc.model, id); };
  for (auto& id : method.order) rename(id);
  rename(method.chosen);
  rename(method.rejected);
  return method;
}

/// Accepts expert headers written as goal ids or goal names.
ExpertPanel panel_for(const ModelDocument& doc, const RankMatrix& matrix) {
  auto panel = ExpertPanel::from_rank_matrix(matrix);
  for (auto& label : panel.alternatives) {
    if (doc.model.find(GoalId{label})) label = goal_label(doc.model, label);
  }
  return panel;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  const auto doc = load_model(o.model);
  const auto result = run_scenario(doc, o.scenario);
  warn(err, result.outcomes.at(0).warnings);
  const auto comparison = expert_comparison(method_for(doc, result), panel_for(doc, import_rank_matrix(o.experts)));
  if (o.format == Format::Json) {
    out << Json(comparison).dump(2) << '\n';
    return kExitOk;
  }
  const auto report = comparison_report(comparison);
  if (o.format == Format::Csv) {
    out << render(report, ReportFlavor::Tabular);
    return kExitOk;
  }
  for (const auto& line : report.summary) out << line << '\n';
  out << '\n';
  print_table(out, table_named(report, "Answers"));
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream&, std::ostream& err) {
  const auto doc = load_model(o.model);
  ReportDocument report;
  if (o.report_kind == "validation") {
    report = validation_report(doc.model, validate_model(doc.model));
  } else if (o.report_kind == "weights") {
    const auto name = o.hierarchy.empty() ? doc.scenario(o.scenario).hierarchy : o.hierarchy;
    report = weights_report(doc.model, name, global_weights(doc.hierarchy(name)));
  } else if (o.report_kind == "concordance") {
    if (o.ranks.empty()) throw CLI::ValidationError("--ranks", "concordance reports need --ranks");
    const auto matrix = import_rank_matrix(o.ranks);
    report = concordance_report(matrix, kendall_w(matrix, o.threshold));
  } else {
    if (o.scenario.empty()) throw CLI::ValidationError("--scenario", "required for " + o.report_kind + " reports");
    const auto result = run_scenario(doc, o.scenario);
    warn(err, result.outcomes.at(0).warnings);
    if (o.report_kind == "ranking") {
      report = ranking_report(doc.model, result);
    } else if (o.report_kind == "comparison") {
      if (o.experts.empty()) throw CLI::ValidationError("--experts", "comparison reports need --experts");
      report = comparison_report(
          expert_comparison(method_for(doc, result), panel_for(doc, import_rank_matrix(o.experts))));
    } else {
      report = decision_report(doc.model, result);
    }
  }
  export_report(report, o.out_path, o.report_flavor == "tabular" ? ReportFlavor::Tabular : ReportFlavor::Human);
  err << "wrote " << to_string(report.kind) << " report to " << o.out_path << '\n';
  return kExitOk;
}

ApiService* g_serving = nullptr;

extern "C" void stop_serving(int) {
  if (g_serving) g_serving->stop();
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
  auto doc = load_model(o.model);
  const auto report = validate_model(doc.model);
  if (report.has_errors()) {
    err << o.model << ": " << report.error_count() << " validation error(s); run `validate` for details\n";
    return kExitDomain;
  }
  ApiService service(std::move(doc), o.persist ? std::optional<std::filesystem::path>(o.model) : std::nullopt);
  const int port = o.port > 0 ? o.port : default_port();
  g_serving = &service;
  std::signal(SIGINT, stop_serving);
  std::signal(SIGTERM, stop_serving);
  if (service.bind(o.host, port) < 0) {
    g_serving = nullptr;
    err << "cannot listen on " << o.host << ":" << port << '\n';
    return kExitUsage;
  }
  out << "serving " << o.model << " on http://" << o.host << ":" << port << "/api\n" << std::flush;
  service.listen();
  g_serving = nullptr;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Goal-model decision analysis: AHP weights, TOPSIS ranking, concordance", "igape"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "igape 1.0.0");
  Options o;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
        ->option_text("text|csv|json");
  };

  auto* validate = app.add_subcommand("validate", "Check a model document against the goal-model rules");
  validate->add_option("model", o.model, "Model document (.igape.json)")->required();
  add_format(validate);

  auto* weights = app.add_subcommand("weights", "Local and global AHP weights of a criteria hierarchy");
  weights->add_option("model", o.model, "Model document")->required();
  weights->add_option("--hierarchy", o.hierarchy, "Hierarchy name")->required();
  add_format(weights);

  auto* rank = app.add_subcommand("rank", "TOPSIS ranking of a scenario's alternatives");
  rank->add_option("model", o.model, "Model document")->required();
  rank->add_option("--scenario", o.scenario, "Scenario name")->required();
  add_format(rank);

  auto* decide = app.add_subcommand("decide", "Run a decision scenario end to end");
  decide->add_option("model", o.model, "Model document")->required();
  decide->add_option("--scenario", o.scenario, "Scenario name")->required();
  decide->add_flag("--json", o.json, "Print the full outcome with its trace as JSON");
  add_format(decide);

  auto* concord = app.add_subcommand("concord", "Kendall's W for a rank matrix");
  concord->add_option("ranks", o.ranks, "Rank matrix CSV")->required();
  concord->add_option("--threshold", o.threshold, "Good-agreement threshold")->check(CLI::Range(0.0, 1.0));
  add_format(concord);

  auto* compare = app.add_subcommand("compare", "Compare a scenario's answer with expert rankings");
  compare->add_option("model", o.model, "Model document")->required();
  compare->add_option("--scenario", o.scenario, "Scenario name")->required();
  compare->add_option("--experts", o.experts, "Expert rank matrix CSV")->required();
  add_format(compare);

  auto* report = app.add_subcommand("report", "Write a report file");
  report->add_option("model", o.model, "Model document")->required();
  report->add_option("--scenario", o.scenario, "Scenario name");
  report->add_option("--hierarchy", o.hierarchy, "Hierarchy name (weights reports)");
  report->add_option("--ranks", o.ranks, "Rank matrix CSV (concordance reports)");
  report->add_option("--experts", o.experts, "Expert rank matrix CSV (comparison reports)");
  report->add_option("--out", o.out_path, "Destination file")->required();
  report->add_option("--kind", o.report_kind, "Report kind")
      ->check(CLI::IsMember({"validation", "weights", "ranking", "decision", "concordance", "comparison"}));
  report->add_option("--format", o.report_flavor, "human (markdown) or tabular (CSV)")
      ->check(CLI::IsMember({"human", "tabular"}));

  auto* serve = app.add_subcommand("serve", "Serve the HTTP/JSON API for one model document");
  serve->add_option("--model", o.model, "Model document")->required();
  serve->add_option("--port", o.port, "Port (default $IGAPE_PORT or 8080)")->check(CLI::Range(1, 65535));
  serve->add_option("--host", o.host, "Bind address");
  serve->add_flag("--persist", o.persist, "Write committed changes back to the model file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(o, out, err);
    if (*weights) return cmd_weights(o, out, err);
    if (*rank) return cmd_rank(o, out, err);
    if (*decide) return cmd_decide(o, out, err);
    if (*concord) return cmd_concord(o, out, err);
    if (*compare) return cmd_compare(o, out, err);
    if (*report) return cmd_report(o, out, err);
    if (*serve) return cmd_serve(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_input_error() ? kExitUsage : kExitDomain;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace igape
