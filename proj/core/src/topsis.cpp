#include "igape/topsis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "igape/error.hpp"

namespace igape {

std::string_view to_string(Direction direction) noexcept {
  return direction == Direction::Benefit ? "benefit" : "cost";
}

void DecisionMatrix::check() const {
  if (criteria.empty()) {
    throw Error(ErrorKind::Structure, "topsis.shape", "decision matrix has no criteria");
  }
  if (values.size() != rows() * cols()) {
    throw Error(ErrorKind::Structure, "topsis.shape",
                "decision matrix expects " + std::to_string(rows() * cols()) + " cells, found " +
                    std::to_string(values.size()));
  }
  if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorKind::Structure, "topsis.non-finite", "decision matrix contains a non-finite value");
  }
  double total = 0.0;
  for (const auto& c : criteria) {
    if (!(c.weight >= 0.0 && c.weight <= 1.0)) {
      throw Error(ErrorKind::Structure, "topsis.weight-range", "weight of criterion '" + c.id + "' is outside [0,1]");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > kCriterionWeightTolerance) {
    throw Error(ErrorKind::Normalization, "topsis.weights-sum",
                "criterion weights sum to " + std::to_string(total) + ", not 1");
  }
}

std::size_t TopsisResult::rank_of(std::size_t index) const {
  auto it = std::find(ranking.begin(), ranking.end(), index);
  if (it == ranking.end()) {
    throw Error(ErrorKind::Reference, "topsis.index", "alternative index out of range");
  }
  return static_cast<std::size_t>(it - ranking.begin()) + 1;
}

namespace {

std::vector<double> normalize_values(const std::vector<double>& values, std::size_t m, std::size_t n) {
  std::vector<double> r(values.size(), 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum_sq += values[i * n + j] * values[i * n + j];
    if (sum_sq == 0.0) continue;
    const double norm = std::sqrt(sum_sq);
    for (std::size_t i = 0; i < m; ++i) r[i * n + j] = values[i * n + j] / norm;
  }
  return r;
}

}  // namespace

std::vector<double> normalize(const DecisionMatrix& matrix) {
  matrix.check();
  return normalize_values(matrix.values, matrix.rows(), matrix.cols());
}

TopsisResult evaluate(const DecisionMatrix& matrix, const TopsisOptions& options) {
  matrix.check();
  const std::size_t m = matrix.rows();
  const std::size_t n = matrix.cols();
  if (m < 2) {
    throw Error(ErrorKind::Degenerate, "topsis.degenerate",
                "TOPSIS needs at least two alternatives; ideal and anti-ideal coincide otherwise");
  }

  TopsisResult out;
  out.rows = m;
  out.cols = n;

  std::vector<double> raw = matrix.values;
  if (options.shift_to_nonnegative) {
    for (std::size_t j = 0; j < n; ++j) {
      double lo = raw[j];
      for (std::size_t i = 1; i < m; ++i) lo = std::min(lo, raw[i * n + j]);
      if (lo < 0.0) {
        for (std::size_t i = 0; i < m; ++i) raw[i * n + j] -= lo;
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    bool all_zero = true;
    for (std::size_t i = 0; i < m && all_zero; ++i) all_zero = raw[i * n + j] == 0.0;
    if (all_zero) {
      out.warnings.push_back("criterion '" + matrix.criteria[j].id +
                             "' is zero for every alternative and does not affect the ranking");
    }
  }

  out.normalized = normalize_values(raw, m, n);
  out.weighted.resize(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.weighted[i * n + j] = matrix.criteria[j].weight * out.normalized[i * n + j];
  }

  out.ideal.resize(n);
  out.anti_ideal.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double hi = out.weighted[j];
    double lo = out.weighted[j];
    for (std::size_t i = 1; i < m; ++i) {
      hi = std::max(hi, out.weighted[i * n + j]);
      lo = std::min(lo, out.weighted[i * n + j]);
    }
    const bool benefit = matrix.criteria[j].direction == Direction::Benefit;
    out.ideal[j] = benefit ? hi : lo;
    out.anti_ideal[j] = benefit ? lo : hi;
  }

  out.s_plus.resize(m);
  out.s_minus.resize(m);
  out.closeness.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double plus = 0.0;
    double minus = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = out.weighted[i * n + j];
      plus += (v - out.ideal[j]) * (v - out.ideal[j]);
      minus += (v - out.anti_ideal[j]) * (v - out.anti_ideal[j]);
    }
    out.s_plus[i] = std::sqrt(plus);
    out.s_minus[i] = std::sqrt(minus);
    const double denom = out.s_plus[i] + out.s_minus[i];
    out.closeness[i] = denom > 0.0 ? out.s_minus[i] / denom : 0.5;
  }

  out.ranking.resize(m);
  std::iota(out.ranking.begin(), out.ranking.end(), std::size_t{0});
  std::stable_sort(out.ranking.begin(), out.ranking.end(),
                   [&](std::size_t a, std::size_t b) { return out.closeness[a] > out.closeness[b]; });
  return out;
}

}  // namespace igape
