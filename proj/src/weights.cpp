#include "rankproj/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "rankproj/csv.hpp"
#include "rankproj/error.hpp"

namespace rankproj {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

std::vector<double> row_diff(const Dataset& dataset, std::size_t a, std::size_t b) {
  auto ra = dataset.normalized_row(a);
  auto rb = dataset.normalized_row(b);
  std::vector<double> d(ra.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = ra[j] - rb[j];
  return d;
}

}  // namespace

WeightVector equal_weights(std::size_t attribute_count) {
  WeightVector out;
  out.w.assign(attribute_count, 1.0 / static_cast<double>(attribute_count));
  out.meta.converged = true;
  return out;
}

std::vector<PairwiseConstraint> derive_constraints(const MarkedRanking& marked,
                                                   const Dataset& dataset,
                                                   std::size_t min_marked) {
  const auto& ids = marked.ids;
  if (ids.size() < min_marked)
    throw Error(ErrorKind::invalid_input,
                "insufficient training data: " + std::to_string(ids.size()) +
                    " marked items, need at least " + std::to_string(min_marked));
  std::vector<std::size_t> index;
  std::unordered_set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second)
      throw Error(ErrorKind::invalid_input, "item '" + id + "' marked more than once");
    index.push_back(dataset.index_of(id));
  }

  std::vector<PairwiseConstraint> out;
  out.reserve(ids.size() * (ids.size() - 1));
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = 0; b < ids.size(); ++b) {
      if (a == b) continue;
      out.push_back({ids[a], ids[b], row_diff(dataset, index[a], index[b]), a < b ? +1 : -1});
    }
  return out;
}

std::vector<PairwiseConstraint> constraints_from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs, const Dataset& dataset) {
  std::vector<PairwiseConstraint> out;
  out.reserve(2 * pairs.size());
  for (const auto& [preferred, other] : pairs) {
    if (preferred == other)
      throw Error(ErrorKind::invalid_input, "item '" + preferred + "' compared with itself");
    std::size_t a = dataset.index_of(preferred);
    std::size_t b = dataset.index_of(other);
    out.push_back({preferred, other, row_diff(dataset, a, b), +1});
    out.push_back({other, preferred, row_diff(dataset, b, a), -1});
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_preference_pairs(std::string_view text,
                                                                       char delimiter) {
  std::vector<std::size_t> lines;
  auto rows = csv::parse(text, delimiter, &lines);
  if (rows.empty()) throw ParseError(1, 1, "empty constraint file");
  std::size_t first = 0;
  if (rows[0].size() >= 2 && csv::trim(rows[0][0]) == "preferred_id") first = 1;
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t r = first; r < rows.size(); ++r) {
    if (rows[r].size() != 2)
      throw ParseError(lines[r], 1, "expected preferred_id,other_id");
    out.emplace_back(csv::trim(rows[r][0]), csv::trim(rows[r][1]));
  }
  return out;
}

double svm_objective(std::span<const double> w, std::span<const PairwiseConstraint> constraints,
                     double regularization) {
  double loss = 0.0;
  for (const auto& c : constraints) loss += std::max(0.0, 1.0 - c.label * dot(w, c.diff));
  return 0.5 * dot(w, w) + regularization * loss;
}

WeightVector train_ranking_svm(std::span<const PairwiseConstraint> constraints,
                               const TrainingOptions& options) {
  if (constraints.size() < 2)
    throw Error(ErrorKind::invalid_input, "training needs at least 2 constraints");
  if (!(options.regularization > 0.0) || !std::isfinite(options.regularization))
    throw Error(ErrorKind::invalid_input, "regularization constant must be positive");

  const std::size_t m = constraints.front().diff.size();
  std::vector<double> q(constraints.size());
  bool any_signal = false;
  for (std::size_t t = 0; t < constraints.size(); ++t) {
    const auto& c = constraints[t];
    if (c.diff.size() != m) throw Error(ErrorKind::invalid_input, "constraint length mismatch");
    if (c.label != 1 && c.label != -1) throw Error(ErrorKind::invalid_input, "label must be +1 or -1");
    q[t] = dot(c.diff, c.diff);
    any_signal = any_signal || q[t] > 0.0;
  }
  if (!any_signal) throw Error(ErrorKind::invalid_input, "degenerate training set: all differences are zero");

  const double upper = options.regularization;
  std::vector<double> alpha(constraints.size(), 0.0);
  std::vector<double> w(m, 0.0);

  WeightVector out;
  out.meta.regularization = upper;
  out.meta.constraints = constraints.size();
  for (std::size_t epoch = 0; epoch < options.max_epochs; ++epoch) {
    double pg_max = -std::numeric_limits<double>::infinity();
    double pg_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < constraints.size(); ++t) {
      if (q[t] == 0.0) continue;
      const auto& c = constraints[t];
      const double y = c.label;
      const double grad = y * dot(w, c.diff) - 1.0;
      double pg = grad;
      if (alpha[t] == 0.0)
        pg = std::min(grad, 0.0);
      else if (alpha[t] == upper)
        pg = std::max(grad, 0.0);
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);
      if (pg == 0.0) continue;
      const double next = std::clamp(alpha[t] - grad / q[t], 0.0, upper);
      const double step = (next - alpha[t]) * y;
      alpha[t] = next;
      for (std::size_t j = 0; j < m; ++j) w[j] += step * c.diff[j];
    }
    out.meta.epochs = epoch + 1;
    if (pg_max - pg_min <= options.tolerance) {
      out.meta.converged = true;
      break;
    }
  }
  out.meta.objective = svm_objective(w, constraints, upper);
  out.w = std::move(w);
  return out;
}

double rank_score(std::span<const double> weights, std::span<const double> normalized_row) {
  return dot(weights, normalized_row);
}

std::vector<RankedItem> rank_all(std::span<const double> weights, const Dataset& dataset) {
  if (weights.size() != dataset.attribute_count())
    throw Error(ErrorKind::invalid_input, "weight vector length does not match attribute count");
  std::vector<RankedItem> out;
  out.reserve(dataset.item_count());
  for (std::size_t i = 0; i < dataset.item_count(); ++i)
    out.push_back({dataset.items()[i].id, rank_score(weights, dataset.normalized_row(i)), 0});
  std::sort(out.begin(), out.end(), [](const RankedItem& a, const RankedItem& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  for (std::size_t r = 0; r < out.size(); ++r) out[r].rank = static_cast<int>(r + 1);
  return out;
}

MarkedRanking marked_from_drag(const std::vector<std::string>& order, const std::string& dragged_id,
                               std::size_t target_position, std::size_t window) {
  auto it = std::find(order.begin(), order.end(), dragged_id);
  if (it == order.end())
    throw Error(ErrorKind::not_found, "unknown item id '" + dragged_id + "'");
  std::vector<std::string> moved = order;
  moved.erase(moved.begin() + (it - order.begin()));
  target_position = std::min(target_position, moved.size());
  moved.insert(moved.begin() + static_cast<std::ptrdiff_t>(target_position), dragged_id);

  const std::size_t n = moved.size();
  const std::size_t size = std::min(window, n);
  std::size_t start = target_position >= size / 2 ? target_position - size / 2 : 0;
  start = std::min(start, n - size);
  return {{moved.begin() + static_cast<std::ptrdiff_t>(start),
           moved.begin() + static_cast<std::ptrdiff_t>(start + size)}};
}

}  // namespace rankproj
