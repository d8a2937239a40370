#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace igape {

enum class Direction { Benefit, Cost };

struct CriterionSpec {
  std::string id;
  Direction direction = Direction::Benefit;
  double weight = 0.0;

  friend bool operator==(const CriterionSpec&, const CriterionSpec&) = default;
};

/// Alternatives x criteria, row-major. Negative values are allowed (the
/// soft-goal scale reaches -2).
struct DecisionMatrix {
  std::vector<std::string> alternatives;
  std::vector<CriterionSpec> criteria;
  std::vector<double> values;

  std::size_t rows() const noexcept { return alternatives.size(); }
  std::size_t cols() const noexcept { return criteria.size(); }
  double at(std::size_t i, std::size_t j) const { return values.at(i * cols() + j); }
  double& at(std::size_t i, std::size_t j) { return values.at(i * cols() + j); }

  /// Throws Error{Structure} on shape problems, non-finite cells or weights
  /// outside [0,1]; Error{Normalization} when weights do not sum to 1
  /// within 1e-6.
  void check() const;

  friend bool operator==(const DecisionMatrix&, const DecisionMatrix&) = default;
};

inline constexpr double kCriterionWeightTolerance = 1e-6;

struct TopsisOptions {
  /// Shift every column by -min so all raw values are non-negative before
  /// normalization. Off by default: raw negatives are kept.
  bool shift_to_nonnegative = false;
};

struct TopsisResult {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> normalized;  // rows x cols
  std::vector<double> weighted;    // rows x cols
  std::vector<double> ideal;
  std::vector<double> anti_ideal;
  std::vector<double> s_plus;
  std::vector<double> s_minus;
  std::vector<double> closeness;
  std::vector<std::size_t> ranking;  // alternative indices, best first
  std::vector<std::string> warnings;

  /// 1-based rank of alternative `index`.
  std::size_t rank_of(std::size_t index) const;

  friend bool operator==(const TopsisResult&, const TopsisResult&) = default;
};

/// Vector normalization r_ij = x_ij / ||x_.j||; an all-zero column stays zero.
std::vector<double> normalize(const DecisionMatrix& matrix);

/// Closeness to the ideal solution with Euclidean distances. Ranking sorts
/// by closeness descending with ties in declaration order. An alternative
/// whose distances are both zero gets closeness 0.5. Throws
/// Error{Degenerate} for fewer than two alternatives.
TopsisResult evaluate(const DecisionMatrix& matrix, const TopsisOptions& options = {});

std::string_view to_string(Direction direction) noexcept;

}  // namespace igape
