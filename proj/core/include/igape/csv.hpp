#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace igape::csv {

struct Row {
  std::size_t line = 0;  // 1-based source line
  std::vector<std::string> fields;
};

/// RFC 4180 style: comma separated, double-quoted fields may hold commas,
/// quotes ("") and newlines. Blank lines are skipped; fields are trimmed
/// unless quoted.
std::vector<Row> parse(std::string_view text);

/// Quotes a field when it holds a comma, quote or newline.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

}  // namespace igape::csv
