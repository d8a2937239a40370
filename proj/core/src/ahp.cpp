#include "igape/ahp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "igape/error.hpp"

namespace igape {

namespace {

std::string cell_name(std::size_t i, std::size_t j) {
  return "a[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
}

std::string format_real(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

}  // namespace

ComparisonMatrix::ComparisonMatrix(std::size_t n) : n_(n), entries_(n * n, 1.0) {}

ComparisonMatrix ComparisonMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    throw Error(ErrorKind::Structure, "ahp.shape", "comparison matrix is empty");
  }
  ComparisonMatrix m;
  m.n_ = rows.size();
  m.entries_.reserve(m.n_ * m.n_);
  for (const auto& row : rows) {
    if (row.size() != m.n_) {
      throw Error(ErrorKind::Structure, "ahp.shape",
                  "comparison matrix is not square: " + std::to_string(m.n_) + " rows but a row of " +
                      std::to_string(row.size()));
    }
    m.entries_.insert(m.entries_.end(), row.begin(), row.end());
  }
  return m;
}

std::vector<std::vector<double>> ComparisonMatrix::to_rows() const {
  std::vector<std::vector<double>> rows;
  rows.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) rows.emplace_back(row(i).begin(), row(i).end());
  return rows;
}

void ComparisonMatrix::set_judgment(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_) {
    throw Error(ErrorKind::Reference, "ahp.cell", cell_name(i, j) + " is outside a " + std::to_string(n_) + "x" +
                                                      std::to_string(n_) + " matrix");
  }
  if (i == j) {
    throw Error(ErrorKind::Judgment, "ahp.diagonal", "diagonal judgments are fixed at 1");
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::Judgment, "ahp.positivity", cell_name(i, j) + " must be a positive finite number");
  }
  entries_[i * n_ + j] = value;
  entries_[j * n_ + i] = 1.0 / value;
}

void ComparisonMatrix::check() const {
  if (n_ == 0) throw Error(ErrorKind::Structure, "ahp.shape", "comparison matrix is empty");
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const double a = (*this)(i, j);
      if (!(a > 0.0) || !std::isfinite(a)) {
        throw Error(ErrorKind::Judgment, "ahp.positivity",
                    cell_name(i, j) + " = " + format_real(a) + " is not a positive finite judgment");
      }
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (std::abs((*this)(i, i) - 1.0) > kReciprocityTolerance) {
      throw Error(ErrorKind::Judgment, "ahp.diagonal", cell_name(i, i) + " must equal 1");
    }
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double product = (*this)(i, j) * (*this)(j, i);
      if (std::abs(product - 1.0) > kReciprocityTolerance) {
        throw Error(ErrorKind::Judgment, "ahp.reciprocity",
                    cell_name(j, i) + " must be the reciprocal of " + cell_name(i, j) + " (" +
                        format_real((*this)(i, j)) + " * " + format_real((*this)(j, i)) + " != 1)");
      }
    }
  }
}

double random_index(std::size_t n) noexcept {
  static constexpr std::array<double, 11> kTable{0.0, 0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49};
  return kTable[std::min<std::size_t>(n, kTable.size() - 1)];
}

ConsistencyReport consistency_of(std::size_t n, double lambda_max) {
  ConsistencyReport report;
  const double dim = static_cast<double>(n);
  // lambda_max >= n for positive reciprocal matrices; round-off can land a
  // few ulps below.
  report.lambda_max = std::max(lambda_max, dim);
  if (n > 2) {
    report.ci = (report.lambda_max - dim) / (dim - 1.0);
    report.cr = report.ci / random_index(n);
  }
  report.acceptable = report.cr <= kAcceptableConsistencyRatio;
  return report;
}

namespace {

std::vector<double> multiply(const ComparisonMatrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto row = a.row(i);
    y[i] = std::inner_product(row.begin(), row.end(), x.begin(), 0.0);
  }
  return y;
}

Priorities power_iteration(const ComparisonMatrix& a, const PowerIterationOptions& options) {
  const std::size_t n = a.size();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  bool converged = false;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    std::vector<double> y = multiply(a, x);
    const double total = std::accumulate(y.begin(), y.end(), 0.0);
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= total;
      delta = std::max(delta, std::abs(y[i] - x[i]));
    }
    x = std::move(y);
    if (delta < options.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError("power iteration did not converge within " + std::to_string(options.max_iterations) +
                               " iterations",
                           x);
  }
  // With x summing to one, sum(Ax) is the eigenvalue estimate.
  const auto ax = multiply(a, x);
  const double lambda = std::accumulate(ax.begin(), ax.end(), 0.0);
  return Priorities{PriorityVector{std::move(x)}, consistency_of(n, lambda), {}};
}

Priorities geometric_mean(const ComparisonMatrix& a) {
  const std::size_t n = a.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    double log_sum = 0.0;
    for (double v : a.row(i)) log_sum += std::log(v);
    w[i] = std::exp(log_sum / static_cast<double>(n));
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= total;

  const auto aw = multiply(a, w);
  double lambda = 0.0;
  for (std::size_t i = 0; i < n; ++i) lambda += aw[i] / w[i];
  lambda /= static_cast<double>(n);
  return Priorities{PriorityVector{std::move(w)}, consistency_of(n, lambda), {}};
}

}  // namespace

Priorities derive_priorities(const ComparisonMatrix& matrix, PriorityMethod method,
                             const PowerIterationOptions& options) {
  matrix.check();
  Priorities result =
      method == PriorityMethod::Eigenvector ? power_iteration(matrix, options) : geometric_mean(matrix);
  if (!result.consistency.acceptable) {
    result.warnings.push_back("consistency ratio " + format_real(result.consistency.cr) +
                              " exceeds 0.10; judgments should be revised");
  }
  return result;
}

const CriterionNode* CriteriaHierarchy::find(const std::string& id) const noexcept {
  return const_cast<CriteriaHierarchy*>(this)->find(id);
}

CriterionNode* CriteriaHierarchy::find(const std::string& id) noexcept {
  std::vector<CriterionNode*> stack{&root};
  while (!stack.empty()) {
    CriterionNode* node = stack.back();
    stack.pop_back();
    if (node->id == id) return node;
    for (auto& child : node->children) stack.push_back(&child);
  }
  return nullptr;
}

std::vector<std::string> CriteriaHierarchy::leaves() const {
  std::vector<std::string> out;
  auto walk = [&](const CriterionNode& node, auto&& self) -> void {
    if (node.is_leaf()) {
      out.push_back(node.id);
      return;
    }
    for (const auto& child : node.children) self(child, self);
  };
  walk(root, walk);
  return out;
}

double GlobalWeights::weight_of(const std::string& leaf) const {
  for (const auto& entry : leaves) {
    if (entry.id == leaf) return entry.weight;
  }
  throw Error(ErrorKind::Reference, "hierarchy.unknown-leaf", "no criterion leaf '" + leaf + "'");
}

namespace {

Priorities local_priorities(const CriterionNode& node) {
  if (!node.local) {
    throw Error(ErrorKind::Structure, "hierarchy.missing-weights",
                "internal criterion '" + node.id + "' has neither weights nor judgments");
  }
  Priorities local;
  if (const auto* given = std::get_if<GivenWeights>(&*node.local)) {
    const auto& w = given->vector.weights;
    if (std::any_of(w.begin(), w.end(), [](double v) { return !(v >= 0.0) || !std::isfinite(v); })) {
      throw Error(ErrorKind::Structure, "hierarchy.negative-weight",
                  "local weights of '" + node.id + "' must be non-negative");
    }
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (std::abs(total - 1.0) > kHierarchyWeightTolerance) {
      throw Error(ErrorKind::Structure, "hierarchy.weights-sum",
                  "local weights of '" + node.id + "' sum to " + format_real(total) + ", not 1");
    }
    local.vector = given->vector;
    local.consistency = consistency_of(w.size(), static_cast<double>(w.size()));
  } else {
    const auto& matrix = std::get<Judgments>(*node.local).matrix;
    try {
      local = derive_priorities(matrix);
    } catch (Error& e) {
      e.set_step("criterion '" + node.id + "'");
      throw;
    }
    for (auto& w : local.warnings) w = "criterion '" + node.id + "': " + w;
  }
  if (local.vector.size() != node.children.size()) {
    throw Error(ErrorKind::Structure, "hierarchy.size-mismatch",
                "criterion '" + node.id + "' has " + std::to_string(node.children.size()) + " children but " +
                    std::to_string(local.vector.size()) + " local weights");
  }
  return local;
}

}  // namespace

GlobalWeights global_weights(const CriteriaHierarchy& hierarchy) {
  GlobalWeights out;
  std::set<std::string> ids;
  std::vector<double> factors;

  auto walk = [&](const CriterionNode& node, double product, auto&& self) -> void {
    if (node.id.empty()) {
      throw Error(ErrorKind::Structure, "hierarchy.id-empty", "criterion node without an id");
    }
    if (!ids.insert(node.id).second) {
      throw Error(ErrorKind::Structure, "hierarchy.id-duplicate", "criterion id '" + node.id + "' appears twice");
    }
    if (node.is_leaf()) {
      if (node.local) {
        throw Error(ErrorKind::Structure, "hierarchy.leaf-weights",
                    "leaf criterion '" + node.id + "' must not carry local weights");
      }
      out.leaves.push_back(LeafWeight{node.id, product, factors});
      return;
    }
    Priorities local = local_priorities(node);
    NodeWeights record{node.id, {}, local, std::holds_alternative<Judgments>(*node.local)};
    for (const auto& child : node.children) record.children.push_back(child.id);
    out.warnings.insert(out.warnings.end(), local.warnings.begin(), local.warnings.end());
    out.nodes.push_back(std::move(record));
    for (std::size_t k = 0; k < node.children.size(); ++k) {
      const double w = local.vector.weights[k];
      factors.push_back(w);
      self(node.children[k], product * w, self);
      factors.pop_back();
    }
  };
  walk(hierarchy.root, 1.0, walk);
  return out;
}

Priorities prioritize_goals(const LocalSource& source) {
  if (const auto* judgments = std::get_if<Judgments>(&source)) {
    return derive_priorities(judgments->matrix);
  }
  const auto& w = std::get<GivenWeights>(source).vector.weights;
  if (w.empty()) {
    throw Error(ErrorKind::Normalization, "ahp.normalization", "goal priority vector is empty");
  }
  if (std::any_of(w.begin(), w.end(), [](double v) { return !(v >= 0.0) || !std::isfinite(v); })) {
    throw Error(ErrorKind::Normalization, "ahp.normalization", "goal priorities must be non-negative");
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (std::abs(total - 1.0) > kGivenWeightTolerance) {
    throw Error(ErrorKind::Normalization, "ahp.normalization",
                "goal priorities sum to " + format_real(total) + ", not 1");
  }
  return Priorities{PriorityVector{w}, consistency_of(w.size(), static_cast<double>(w.size())), {}};
}

}  // namespace igape
