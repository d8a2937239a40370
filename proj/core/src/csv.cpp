#include "igape/csv.hpp"

#include "igape/error.hpp"

namespace igape::csv {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::vector<Row> parse(std::string_view text) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool quoted = false;     // inside quotes
  bool was_quoted = false;  // current field used quotes
  bool any = false;         // current row has content
  std::size_t line = 1;
  row.line = 1;

  auto end_field = [&] {
    row.fields.push_back(was_quoted ? field : trim(field));
    field.clear();
    was_quoted = false;
  };
  auto end_row = [&] {
    end_field();
    if (any) rows.push_back(std::move(row));
    row = Row{};
    any = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!trim(field).empty()) {
          throw Error(ErrorKind::Parse, "csv.quote", "line " + std::to_string(line) + ": stray quote inside a field");
        }
        field.clear();
        quoted = was_quoted = any = true;
        break;
      case ',':
        any = true;
        end_field();
        break;
      case '\n':
        end_row();
        row.line = ++line;
        break;
      default:
        if (was_quoted) {
          if (c == '\r' || c == ' ' || c == '\t') break;
          throw Error(ErrorKind::Parse, "csv.quote", "line " + std::to_string(line) + ": text after closing quote");
        }
        if (c != '\r' && c != ' ' && c != '\t') any = true;
        field += c;
    }
  }
  if (quoted) throw Error(ErrorKind::Parse, "csv.quote", "line " + std::to_string(line) + ": unterminated quote");
  end_row();
  return rows;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += escape(fields[i]);
  }
  return out;
}

}  // namespace igape::csv
