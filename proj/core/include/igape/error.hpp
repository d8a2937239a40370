#pragma once

#include <exception>
#include <string>
#include <string_view>
#include <vector>

namespace igape {

enum class ErrorKind {
  Reference,     // an identifier that does not resolve
  Completeness,  // required data missing (e.g. a contribution link)
  Structure,     // malformed hierarchy or table shape
  Judgment,      // comparison matrix violates positivity/reciprocity
  Convergence,   // power iteration ran out of budget
  Normalization, // a weight vector does not sum to one
  Degenerate,    // instance too small to be meaningful
  KindMismatch,  // criterion direction contradicts requirement kind
  Coverage,      // a weight or direction missing for a criterion
  Policy,        // selection policy infeasible
  Edit,          // what-if edit would break an invariant
  RankValidity,  // rank row is not a permutation
  Alignment,     // label sets of two inputs differ
  Parse,         // syntax error in an input document
  Version,       // unsupported format_version
  Io,            // filesystem failure
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Domain-level failure. `rule()` is a stable dotted identifier
/// ("ahp.reciprocity", "topsis.degenerate", ...) that callers can match on;
/// `step()` is filled in by the decision engine to attribute a failure to
/// the pipeline stage that raised it.
class Error : public std::exception {
 public:
  Error(ErrorKind kind, std::string rule, std::string message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& rule() const noexcept { return rule_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& step() const noexcept { return step_; }

  void set_step(std::string step);

  const char* what() const noexcept override { return what_.c_str(); }

  /// True for input/usage failures (parse, version, I/O) as opposed to
  /// violations of the decision model itself.
  bool is_input_error() const noexcept;

 private:
  void rebuild_what();

  ErrorKind kind_;
  std::string rule_;
  std::string message_;
  std::string step_;
  std::string what_;
};

/// Raised when power iteration exhausts its budget; carries the last iterate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(std::string message, std::vector<double> last_iterate);

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

 private:
  std::vector<double> last_iterate_;
};

}  // namespace igape
