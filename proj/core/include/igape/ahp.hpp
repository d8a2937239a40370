#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace igape {

/// Square matrix of pairwise judgments. The container itself only enforces
/// squareness so that arbitrary (possibly invalid) input can be represented
/// and reported; `check()` enforces positivity, unit diagonal and
/// reciprocity.
class ComparisonMatrix {
 public:
  ComparisonMatrix() = default;

  /// n x n identity judgments (all criteria equally important).
  explicit ComparisonMatrix(std::size_t n);

  /// Throws Error{Structure} if `rows` is empty or not square.
  static ComparisonMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_.at(i * n_ + j); }
  std::span<const double> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }
  std::vector<std::vector<double>> to_rows() const;

  /// Sets a_ij = value and a_ji = 1/value. Throws Error{Judgment} for a
  /// diagonal cell or a non-positive value.
  void set_judgment(std::size_t i, std::size_t j, double value);

  /// Throws Error{Judgment} naming the first violated invariant.
  void check() const;

  friend bool operator==(const ComparisonMatrix&, const ComparisonMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

struct PriorityVector {
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
  friend bool operator==(const PriorityVector&, const PriorityVector&) = default;
};

struct ConsistencyReport {
  double lambda_max = 0.0;
  double ci = 0.0;
  double cr = 0.0;
  bool acceptable = true;

  friend bool operator==(const ConsistencyReport&, const ConsistencyReport&) = default;
};

struct Priorities {
  PriorityVector vector;
  ConsistencyReport consistency;
  std::vector<std::string> warnings;

  friend bool operator==(const Priorities&, const Priorities&) = default;
};

enum class PriorityMethod { Eigenvector, GeometricMean };

struct PowerIterationOptions {
  double tolerance = 1e-12;  // max-norm of successive iterates
  int max_iterations = 10'000;
};

inline constexpr double kAcceptableConsistencyRatio = 0.10;
inline constexpr double kReciprocityTolerance = 1e-9;
inline constexpr double kHierarchyWeightTolerance = 1e-9;
inline constexpr double kGivenWeightTolerance = 1e-6;

/// Saaty's random consistency index. Sizes above 10 reuse RI(10).
double random_index(std::size_t n) noexcept;

/// Consistency of `matrix` for a priority estimate with the given
/// principal eigenvalue estimate.
ConsistencyReport consistency_of(std::size_t n, double lambda_max);

/// Normalized principal right eigenvector (power iteration from the uniform
/// vector) or the normalized geometric mean of the rows. Inconsistent
/// judgments (CR > 0.10) produce a warning, never an error.
Priorities derive_priorities(const ComparisonMatrix& matrix, PriorityMethod method = PriorityMethod::Eigenvector,
                             const PowerIterationOptions& options = {});

struct GivenWeights {
  PriorityVector vector;
  friend bool operator==(const GivenWeights&, const GivenWeights&) = default;
};

struct Judgments {
  ComparisonMatrix matrix;
  friend bool operator==(const Judgments&, const Judgments&) = default;
};

/// Where a node's local weights over its children come from.
using LocalSource = std::variant<GivenWeights, Judgments>;

struct CriterionNode {
  std::string id;
  std::optional<LocalSource> local;  // absent on leaves
  std::vector<CriterionNode> children;

  bool is_leaf() const noexcept { return children.empty(); }
  friend bool operator==(const CriterionNode&, const CriterionNode&) = default;
};

struct CriteriaHierarchy {
  CriterionNode root;

  const CriterionNode* find(const std::string& id) const noexcept;
  CriterionNode* find(const std::string& id) noexcept;
  /// Leaf ids in depth-first declaration order.
  std::vector<std::string> leaves() const;

  friend bool operator==(const CriteriaHierarchy&, const CriteriaHierarchy&) = default;
};

struct LeafWeight {
  std::string id;
  double weight = 0.0;
  std::vector<double> factors;  // local weights from the top level down to the leaf

  friend bool operator==(const LeafWeight&, const LeafWeight&) = default;
};

struct NodeWeights {
  std::string id;
  std::vector<std::string> children;
  Priorities local;
  bool derived = false;  // true when computed from judgments

  friend bool operator==(const NodeWeights&, const NodeWeights&) = default;
};

struct GlobalWeights {
  std::vector<LeafWeight> leaves;  // depth-first order
  std::vector<NodeWeights> nodes;  // every internal node, pre-order
  std::vector<std::string> warnings;

  /// Throws Error{Reference} for an unknown leaf.
  double weight_of(const std::string& leaf) const;

  friend bool operator==(const GlobalWeights&, const GlobalWeights&) = default;
};

/// Multiplies local weights along each root-to-leaf path. Throws
/// Error{Structure} for a malformed hierarchy (missing or surplus local
/// sources, size mismatches, given weights not summing to one, duplicate
/// ids) and propagates judgment/convergence errors.
GlobalWeights global_weights(const CriteriaHierarchy& hierarchy);

/// Priorities of functional goals: judgments go through derive_priorities,
/// given weights pass through unchanged after a sum-to-one check
/// (Error{Normalization} beyond 1e-6).
Priorities prioritize_goals(const LocalSource& source);

}  // namespace igape
