#include "igape/persistence.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <system_error>

#include "igape/csv.hpp"
#include "igape/error.hpp"
#include "igape/serialization.hpp"

namespace igape {

const ScenarioDefinition& ModelDocument::scenario(const std::string& name) const {
  auto it = scenarios.find(name);
  if (it == scenarios.end()) throw Error(ErrorKind::Reference, "scenario.unknown", "no scenario named '" + name + "'");
  return it->second;
}

const CriteriaHierarchy& ModelDocument::hierarchy(const std::string& name) const {
  auto it = hierarchies.find(name);
  if (it == hierarchies.end()) {
    throw Error(ErrorKind::Reference, "scenario.unknown-hierarchy", "no hierarchy named '" + name + "'");
  }
  return it->second;
}

namespace {

std::string locate(std::string_view text, std::size_t position) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < position && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + " (position " +
         std::to_string(position) + ")";
}

}  // namespace

ModelDocument parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t position = e.byte > 0 ? e.byte - 1 : 0;
    std::string what = e.what();
    if (auto at = what.find("; "); at != std::string::npos) what = what.substr(at + 2);
    throw Error(ErrorKind::Parse, "document.syntax", "syntax error at " + locate(text, position) + ": " + what);
  }
  if (!j.is_object()) throw Error(ErrorKind::Parse, "document.schema", "document must be a JSON object");
  auto version = j.find("format_version");
  if (version == j.end()) throw Error(ErrorKind::Version, "document.version", "missing format_version");
  if (!version->is_string() || version->get<std::string>() != kFormatVersion) {
    throw Error(ErrorKind::Version, "document.version",
                "unsupported format_version " + version->dump() + " (expected \"" + std::string(kFormatVersion) +
                    "\")");
  }

  ModelDocument doc;
  try {
    if (j.contains("comments")) doc.comments = j.at("comments").get<std::vector<std::string>>();
    doc.model = j.at("model").get<GoalModel>();
    if (j.contains("hierarchies")) {
      for (const auto& [name, value] : j.at("hierarchies").items()) doc.hierarchies[name] = value.get<CriteriaHierarchy>();
    }
    if (j.contains("scenarios")) {
      for (const auto& [name, value] : j.at("scenarios").items()) {
        try {
          doc.scenarios[name] = value.get<ScenarioDefinition>();
        } catch (const Error& e) {
          throw Error(e.kind(), e.rule(), "scenario '" + name + "': " + e.message());
        }
      }
    }
  } catch (const Json::exception& e) {
    std::string what = e.what();
    if (auto at = what.find("] "); at != std::string::npos) what = what.substr(at + 2);
    throw Error(ErrorKind::Parse, "document.schema", what);
  }
  return doc;
}

namespace {

// Integral doubles print as integers (7500, not 7500.0).
void compact_numbers(Json& j) {
  if (j.is_structured()) {
    for (auto& child : j) compact_numbers(child);
  } else if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v == std::trunc(v) && std::abs(v) < 9007199254740992.0 && !(v == 0.0 && std::signbit(v))) {
      j = static_cast<std::int64_t>(v);
    }
  }
}

}  // namespace

std::string serialize_document(const ModelDocument& doc) {
  Json j;
  j["format_version"] = doc.format_version;
  if (!doc.comments.empty()) j["comments"] = doc.comments;
  j["model"] = doc.model;
  Json hierarchies = Json::object();
  for (const auto& [name, h] : doc.hierarchies) hierarchies[name] = h;
  j["hierarchies"] = std::move(hierarchies);
  Json scenarios = Json::object();
  for (const auto& [name, s] : doc.scenarios) scenarios[name] = s;
  j["scenarios"] = std::move(scenarios);
  compact_numbers(j);
  return j.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "io.read", "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "io.read", "failed reading '" + path.string() + "'");
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "io.write", "cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::Io, "io.write", "failed writing '" + path.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::Io, "io.write", "cannot replace '" + path.string() + "'");
  }
}

ModelDocument load_model(const std::filesystem::path& path) {
  const auto text = read_file(path);
  try {
    return parse_document(text);
  } catch (const Error& e) {
    throw Error(e.kind(), e.rule(), path.string() + ": " + e.message());
  }
}

void save_model(const ModelDocument& doc, const std::filesystem::path& path) {
  write_file(path, serialize_document(doc));
}

ScenarioResult run_scenario(const ModelDocument& doc, const std::string& name) {
  return run_scenario(name, doc.scenario(name), doc.model, doc.hierarchies);
}

namespace {

[[noreturn]] void row_error(std::size_t row, std::size_t line, const std::string& message) {
  throw Error(ErrorKind::Parse, "csv.row",
              "row " + std::to_string(row) + " (line " + std::to_string(line) + "): " + message);
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

RankMatrix parse_rank_matrix(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw Error(ErrorKind::Parse, "csv.header", "missing header row `judge,<alternatives>`");
  const auto& header = rows.front().fields;
  if (header.size() < 2 || lower(header[0]) != "judge") {
    throw Error(ErrorKind::Parse, "csv.header", "header must start with `judge` followed by alternative labels");
  }
  RankMatrix m;
  m.alternatives.assign(header.begin() + 1, header.end());
  const std::size_t n = m.alternatives.size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != n + 1) {
      row_error(r, row.line, "expected " + std::to_string(n + 1) + " fields, found " + std::to_string(row.fields.size()));
    }
    std::vector<bool> seen(n + 1, false);
    for (std::size_t a = 0; a < n; ++a) {
      int rank = 0;
      const auto& cell = row.fields[a + 1];
      if (!parse_number(cell, rank)) row_error(r, row.line, "rank '" + cell + "' is not an integer");
      if (rank < 1 || rank > static_cast<int>(n)) {
        throw Error(ErrorKind::RankValidity, "concordance.rank-range",
                    "row " + std::to_string(r) + " ('" + row.fields[0] + "'): rank " + std::to_string(rank) +
                        " outside 1.." + std::to_string(n));
      }
      if (seen[static_cast<std::size_t>(rank)]) {
        throw Error(ErrorKind::RankValidity, "concordance.rank-duplicate",
                    "row " + std::to_string(r) + " ('" + row.fields[0] + "'): rank " + std::to_string(rank) +
                        " assigned more than once");
      }
      seen[static_cast<std::size_t>(rank)] = true;
      m.ranks.push_back(rank);
    }
    m.judges.push_back(row.fields[0]);
  }
  return m;
}

RankMatrix import_rank_matrix(const std::filesystem::path& path) {
  const auto text = read_file(path);
  try {
    return parse_rank_matrix(text);
  } catch (const Error& e) {
    throw Error(e.kind(), e.rule(), path.string() + ": " + e.message());
  }
}

DecisionMatrix parse_decision_matrix(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.size() < 3) {
    throw Error(ErrorKind::Parse, "csv.header", "expected a header, a `direction` row and a `weight` row");
  }
  const auto& header = rows[0].fields;
  if (header.size() < 2) throw Error(ErrorKind::Parse, "csv.header", "header needs at least one criterion");
  const std::size_t c = header.size() - 1;
  const auto& dir = rows[1];
  const auto& wt = rows[2];
  if (dir.fields.empty() || lower(dir.fields[0]) != "direction" || dir.fields.size() != c + 1) {
    row_error(1, dir.line, "expected `direction` followed by one entry per criterion");
  }
  if (wt.fields.empty() || lower(wt.fields[0]) != "weight" || wt.fields.size() != c + 1) {
    row_error(2, wt.line, "expected `weight` followed by one entry per criterion");
  }
  DecisionMatrix m;
  for (std::size_t k = 0; k < c; ++k) {
    CriterionSpec spec{header[k + 1], Direction::Benefit, 0.0};
    const auto d = lower(dir.fields[k + 1]);
    if (d == "cost") {
      spec.direction = Direction::Cost;
    } else if (d != "benefit") {
      row_error(1, dir.line, "direction '" + dir.fields[k + 1] + "' is neither benefit nor cost");
    }
    if (!parse_number(wt.fields[k + 1], spec.weight)) row_error(2, wt.line, "weight '" + wt.fields[k + 1] + "' is not a number");
    m.criteria.push_back(std::move(spec));
  }
  for (std::size_t r = 3; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != c + 1) {
      row_error(r, row.line, "expected " + std::to_string(c + 1) + " fields, found " + std::to_string(row.fields.size()));
    }
    m.alternatives.push_back(row.fields[0]);
    for (std::size_t k = 0; k < c; ++k) {
      double v = 0.0;
      if (!parse_number(row.fields[k + 1], v)) row_error(r, row.line, "value '" + row.fields[k + 1] + "' is not a number");
      m.values.push_back(v);
    }
  }
  return m;
}

DecisionMatrix import_decision_matrix(const std::filesystem::path& path) {
  const auto text = read_file(path);
  try {
    return parse_decision_matrix(text);
  } catch (const Error& e) {
    throw Error(e.kind(), e.rule(), path.string() + ": " + e.message());
  }
}

}  // namespace igape
