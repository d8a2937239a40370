#include "igape/error.hpp"

#include <utility>

namespace igape {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Reference: return "reference";
    case ErrorKind::Completeness: return "completeness";
    case ErrorKind::Structure: return "structure";
    case ErrorKind::Judgment: return "judgment";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Normalization: return "normalization";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::KindMismatch: return "kind-mismatch";
    case ErrorKind::Coverage: return "coverage";
    case ErrorKind::Policy: return "policy";
    case ErrorKind::Edit: return "edit";
    case ErrorKind::RankValidity: return "rank-validity";
    case ErrorKind::Alignment: return "alignment";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Version: return "version";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, std::string rule, std::string message)
    : kind_(kind), rule_(std::move(rule)), message_(std::move(message)) {
  rebuild_what();
}

void Error::set_step(std::string step) {
  step_ = std::move(step);
  rebuild_what();
}

bool Error::is_input_error() const noexcept {
  return kind_ == ErrorKind::Parse || kind_ == ErrorKind::Version || kind_ == ErrorKind::Io;
}

void Error::rebuild_what() {
  what_.clear();
  if (!step_.empty()) {
    what_ += step_;
    what_ += ": ";
  }
  what_ += '[';
  what_ += rule_;
  what_ += "] ";
  what_ += message_;
}

ConvergenceError::ConvergenceError(std::string message, std::vector<double> last_iterate)
    : Error(ErrorKind::Convergence, "ahp.convergence", std::move(message)),
      last_iterate_(std::move(last_iterate)) {}

}  // namespace igape
