// Acceptance runner. With no arguments every criterion runs; otherwise only
// the named ones. One line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "igape/cli.hpp"
#include "igape/concordance.hpp"
#include "igape/report.hpp"

using namespace igape;
using namespace igape::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

struct Criterion {
  std::string id;
  std::function<Outcome()> run;
};

constexpr double kRuntimeBudgetMs = 100.0;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
  double ms = 0.0;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  const auto t0 = std::chrono::steady_clock::now();
  r.code = run_cli(args, out, err);
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string model() { return data_path("payment.igape.json").string(); }

void check_runtime(Outcome& o, const CliRun& r) {
  if (r.ms > kRuntimeBudgetMs) o.fail(fmt::format("took {:.1f} ms", r.ms));
}

// Printed global weights, depth-first leaf order.
const std::vector<std::pair<std::string, double>> kPrintedGlobal{
    {"1.1", 0.0519}, {"1.2", 0.1059}, {"1.3", 0.0770}, {"2", 0.125},      {"3.1", 0.0495},   {"3.2", 0.2311},
    {"3.3", 0.1131}, {"3.4", 0.0481}, {"4.1.1", 0.0574}, {"4.1.2", 0.0301}, {"4.2", 0.0660}, {"4.3", 0.0441}};

Outcome global_weights_table() {
  Outcome o;
  const auto r = cli({"weights", model(), "--hierarchy", "gateway-qr"});
  if (r.code != kExitOk) {
    o.fail("weights exited " + std::to_string(r.code));
    return o;
  }
  check_runtime(o, r);
  const auto g = global_weights(payment_document().hierarchy("gateway-qr"));
  const auto out = lines(r.out);
  std::vector<std::string> mismatches;
  for (std::size_t i = 0; i < kPrintedGlobal.size(); ++i) {
    const auto& [id, printed] = kPrintedGlobal[i];
    const double w = g.weight_of(id);
    const auto shown = i + 1 < out.size() ? out[i + 1].substr(out[i + 1].size() - 6) : std::string{};
    if (std::abs(w - printed) > 0.00005 || shown != fmt::format("{:.4f}", printed)) {
      mismatches.push_back(fmt::format("{} {} vs {:.4f}", id, shown, printed));
    }
  }
  if (!mismatches.empty()) {
    std::string list;
    for (const auto& m : mismatches) list += (list.empty() ? "" : ", ") + m;
    o.fail(fmt::format("{} of 12 differ: {}", mismatches.size(), list));
  } else {
    o.detail = "12 of 12 match at 4 d.p.";
  }
  return o;
}

Outcome weight_normalization() {
  Outcome o;
  Rng rng(0x5EED);
  double worst = 0;
  for (int c = 0; c < 1000; ++c) {
    const auto g = global_weights(random_hierarchy(rng));
    double sum = 0;
    for (const auto& l : g.leaves) sum += l.weight;
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  if (worst > 1e-9) o.fail(fmt::format("random hierarchy sum off by {:.3g}", worst));
  double printed = 0;
  for (const auto& [id, w] : kPrintedGlobal) printed += w;
  if (std::abs(printed - 1.0) > 0.002) o.fail(fmt::format("printed weights sum to {:.4f}", printed));
  if (o.pass) o.detail = fmt::format("1000 hierarchies within {:.2g}; printed sum {:.4f}", worst, printed);
  return o;
}

Outcome gateway_decision() {
  Outcome o;
  const auto r = cli({"decide", model(), "--scenario", "gateway"});
  check_runtime(o, r);
  const auto out = lines(r.out);
  if (r.code != kExitOk || out.size() < 2) {
    o.fail("decide exited " + std::to_string(r.code));
    return o;
  }
  if (out[0] != "chosen: Option D") o.fail(out[0]);
  if (out[1] != "rejected: Option A") o.fail(out[1]);
  const auto& doc = payment_document();
  const auto result = run_scenario(doc, "gateway");
  const auto& outcome = result.outcomes.at(0);
  std::vector<std::string> order;
  for (auto i : outcome.ranking.ranking) order.push_back(outcome.alternatives[i].value);
  const std::vector<std::string> oracle{"opt-d", "opt-b", "opt-c", "opt-a"};
  if (order != oracle) o.fail("order differs from spreadsheet oracle");
  if (o.pass) o.detail = "D > B > C > A";
  return o;
}

Outcome support_ranking() {
  Outcome o;
  const auto r = cli({"rank", model(), "--scenario", "support"});
  check_runtime(o, r);
  const auto out = lines(r.out);
  const std::vector<std::string> expected{"Telephone (Toll-free)", "Online Chat", "Email"};
  if (r.code != kExitOk || out.size() != expected.size() + 1) {
    o.fail("rank exited " + std::to_string(r.code) + " with " + std::to_string(out.size()) + " lines");
    return o;
  }
  std::size_t at = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    at = r.out.find(expected[i], at);
    if (at == std::string::npos || out[i + 1].find(expected[i]) == std::string::npos) {
      o.fail("position " + std::to_string(i + 1) + " is not " + expected[i]);
      return o;
    }
  }
  o.detail = "Telephone (Toll-free) > Online Chat > Email";
  return o;
}

Outcome goal_selection() {
  Outcome o;
  const auto& doc = payment_document();
  const auto result = run_scenario(doc, "support");
  const std::vector<std::tuple<std::string, double, std::string>> table{
      {"product-information", 0.255, "Telephone (Toll-free)"},
      {"purchase-support", 0.520, "Telephone (Toll-free), Online Chat, Email"},
      {"general-feedback", 0.225, "Email"}};
  if (result.outcomes.size() != table.size()) {
    o.fail(std::to_string(result.outcomes.size()) + " outcomes");
    return o;
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& [goal, weight, chosen] = table[i];
    const auto& out = result.outcomes[i];
    std::string names;
    for (const auto& id : out.chosen) names += (names.empty() ? "" : ", ") + goal_label(doc.model, id.value);
    if (!out.goal || out.goal->value != goal) o.fail("outcome " + std::to_string(i) + " is not " + goal);
    if (!out.goal_priorities || std::abs(out.goal_priorities->weights.at(i) - weight) > 1e-9) {
      o.fail(goal + " priority differs");
    }
    if (names != chosen) o.fail(goal + ": " + names);
  }
  if (o.pass) o.detail = "3 of 3 selection sets";
  return o;
}

Outcome kendall() {
  Outcome o;
  const auto r = cli({"concord", data_path("panel-ranks.csv").string()});
  check_runtime(o, r);
  const std::vector<std::string> expected{"W = 0.771 (good agreement)", "R = (9, 18, 15, 28)", "s = 189",
                                          "consensus: A1 > A3 > A2 > A4"};
  if (r.code != kExitOk || lines(r.out) != expected) o.fail("concord printed: " + r.out);
  const auto m = import_rank_matrix(data_path("panel-ranks.csv"));
  const auto w = kendall_w(m);
  if (std::abs(w.w - 0.7714) > 0.0005) o.fail(fmt::format("W = {}", w.w));
  if (w.rank_sums != std::vector<long long>{9, 18, 15, 28}) o.fail("rank sums differ");
  if (w.s != 189) o.fail(fmt::format("s = {}", w.s));
  if (!w.good_agreement) o.fail("not good agreement");
  if (m.alternatives.at(w.consensus_order.at(0)) != "A1") o.fail("consensus best is not A1");
  if (o.pass) o.detail = fmt::format("W = {:.4f}, s = 189", w.w);
  return o;
}

Outcome ahp_properties() {
  Outcome o;
  Rng rng(0xA4);
  int failures = 0;
  for (int c = 0; c < 1000 && failures == 0; ++c) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 10));
    const auto m = consistent_matrix(random_weights(rng, n));
    const auto p = derive_priorities(m);
    if (std::abs(p.consistency.cr) > 1e-9) ++failures;
    double col = 0;
    for (std::size_t i = 0; i < n; ++i) col += m(i, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(p.vector.weights[i] - m(i, 0) / col) > 1e-9) ++failures;
    }
    const auto gm = derive_priorities(m, PriorityMethod::GeometricMean);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(p.vector.weights[i] - gm.vector.weights[i]) > 1e-6) ++failures;
    }
    if (failures) o.fail(fmt::format("consistent case {}", c));
  }
  for (int c = 0; c < 1000 && o.pass; ++c) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 9));
    const auto m = random_reciprocal(rng, n);
    const auto perm = random_permutation(rng, n);
    const auto a = derive_priorities(m);
    const auto b = derive_priorities(permuted(m, perm));
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(b.vector.weights[i] - a.vector.weights[perm[i]]) > 1e-9) {
        o.fail(fmt::format("permutation case {}", c));
        break;
      }
    }
  }
  if (o.pass) o.detail = "2000 cases";
  return o;
}

Outcome topsis_properties() {
  Outcome o;
  Rng rng(0x70);
  int negatives = 0, zero_columns = 0;
  for (int c = 0; c < 1000 && o.pass; ++c) {
    const auto m = random_decision_matrix(rng, static_cast<std::size_t>(uniform_int(rng, 2, 8)),
                                          static_cast<std::size_t>(uniform_int(rng, 1, 7)));
    if (std::any_of(m.values.begin(), m.values.end(), [](double v) { return v < 0; })) ++negatives;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      bool zero = true;
      for (std::size_t i = 0; i < m.rows(); ++i) zero = zero && m.at(i, j) == 0.0;
      if (zero) {
        ++zero_columns;
        break;
      }
    }
    const auto r = evaluate(m);
    for (double v : r.closeness) {
      if (v < 0 || v > 1) o.fail(fmt::format("closeness {} in case {}", v, c));
    }

    auto scaled = m;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double f = uniform(rng, 0.01, 100.0);
      for (std::size_t i = 0; i < m.rows(); ++i) scaled.at(i, j) *= f;
    }
    const auto rs = evaluate(scaled);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (std::abs(rs.closeness[i] - r.closeness[i]) > 1e-9) o.fail(fmt::format("rescaling case {}", c));
    }

    const auto perm = random_permutation(rng, m.rows());
    auto moved = m;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) moved.at(i, j) = m.at(perm[i], j);
    }
    const auto rp = evaluate(moved);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (std::abs(rp.closeness[i] - r.closeness[perm[i]]) > 1e-12) o.fail(fmt::format("permutation case {}", c));
    }

    auto dom = m;
    const auto best = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(m.rows()) - 1));
    for (std::size_t j = 0; j < m.cols(); ++j) {
      double hi = m.at(0, j), lo = m.at(0, j);
      for (std::size_t i = 0; i < m.rows(); ++i) {
        hi = std::max(hi, m.at(i, j));
        lo = std::min(lo, m.at(i, j));
      }
      const double step = std::max(1.0, hi - lo);
      dom.at(best, j) = m.criteria[j].direction == Direction::Benefit ? hi + step : lo - step;
    }
    if (evaluate(dom).ranking.front() != best) o.fail(fmt::format("dominance case {}", c));
  }
  if (o.pass) o.detail = fmt::format("1000 matrices, {} with negatives, {} with zero columns", negatives, zero_columns);
  return o;
}

Outcome round_trip() {
  Outcome o;
  Rng rng(0x47);
  for (int c = 0; c < 1000 && o.pass; ++c) {
    const auto doc = random_document(rng);
    const auto text = serialize_document(doc);
    const auto back = parse_document(text);
    if (!(back == doc) || serialize_document(back) != text) o.fail(fmt::format("document case {}", c));
  }
  TempDir dir;
  const std::vector<std::vector<std::string>> commands{
      {"decide", model(), "--scenario", "gateway", "--json"},
      {"decide", model(), "--scenario", "support"},
      {"weights", model(), "--hierarchy", "gateway-qr"},
      {"concord", data_path("panel-ranks.csv").string(), "--format", "csv"}};
  for (const auto& args : commands) {
    if (cli(args).out != cli(args).out) o.fail(args[0] + " output differs between runs");
  }
  std::string first;
  for (int i = 0; i < 2; ++i) {
    const auto path = (dir / ("report" + std::to_string(i) + ".md")).string();
    cli({"report", model(), "--scenario", "gateway", "--out", path});
    const auto bytes = read_file(path);
    if (i == 0) first = bytes;
    else if (bytes != first) o.fail("report files differ");
  }
  if (o.pass) o.detail = "1000 documents, 4 commands, 1 report";
  return o;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"global-weights", global_weights_table},  {"weight-normalization", weight_normalization},
      {"gateway-decision", gateway_decision},    {"support-ranking", support_ranking},
      {"goal-selection", goal_selection},        {"kendall-w", kendall},
      {"ahp-properties", ahp_properties},        {"topsis-properties", topsis_properties},
      {"round-trip", round_trip}};
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted(argv + 1, argv + argc);
  bool all_pass = true;
  std::size_t ran = 0;
  for (const auto& c : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all_pass = all_pass && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.id << ": " << o.detail << '\n';
  }
  if (ran == 0) {
    std::cerr << "no such criterion\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
