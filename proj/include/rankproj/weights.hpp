#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rankproj/dataset.hpp"

namespace rankproj {

/// Minimum number of marked rows needed to train. Below this the inferred
/// weights are too poorly determined to be useful.
inline constexpr std::size_t kMinMarkedItems = 6;

/// One training tuple: diff = normalized(first) - normalized(second), label
/// +1 if `first` is preferred over `second`, -1 otherwise.
struct PairwiseConstraint {
  std::string first_id;
  std::string second_id;
  std::vector<double> diff;
  int label = +1;
};

/// Item ids in the user's adjusted order, best first.
struct MarkedRanking {
  std::vector<std::string> ids;
};

struct TrainingOptions {
  double regularization = 1.0;   // C in 0.5|w|^2 + C * sum(hinge)
  std::size_t max_epochs = 10000;
  double tolerance = 1e-10;      // projected-gradient gap for early stop
};

struct TrainingMeta {
  double regularization = 1.0;
  std::size_t epochs = 0;
  std::size_t constraints = 0;
  bool converged = false;
  double objective = 0.0;
};

struct WeightVector {
  std::vector<double> w;
  TrainingMeta meta;

  std::string fingerprint() const { return fingerprint_of(w); }
};

/// Uniform weights 1/m; the ranking shown before any user interaction.
WeightVector equal_weights(std::size_t attribute_count);

/// Emits one constraint per ordered pair of distinct marked items: k(k-1) in
/// total. `min_marked` exists so tests can exercise tiny rankings.
std::vector<PairwiseConstraint> derive_constraints(const MarkedRanking& marked,
                                                   const Dataset& dataset,
                                                   std::size_t min_marked = kMinMarkedItems);

/// Builds constraints from explicit (preferred, other) id pairs; each pair
/// yields the +1 tuple and its mirrored -1 tuple.
std::vector<PairwiseConstraint> constraints_from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs, const Dataset& dataset);

/// Reads a CSV with header `preferred_id,other_id`.
std::vector<std::pair<std::string, std::string>> read_preference_pairs(std::string_view text,
                                                                       char delimiter = ',');

/// Soft-margin linear ranking SVM without bias, solved by cyclic dual
/// coordinate descent from alpha = 0. Fully deterministic.
WeightVector train_ranking_svm(std::span<const PairwiseConstraint> constraints,
                               const TrainingOptions& options = {});

/// 0.5 |w|^2 + C * sum max(0, 1 - y (w . diff)).
double svm_objective(std::span<const double> w, std::span<const PairwiseConstraint> constraints,
                     double regularization);

double rank_score(std::span<const double> weights, std::span<const double> normalized_row);

struct RankedItem {
  std::string id;
  double score = 0.0;
  int rank = 0;  // 1 = best
};

/// Items sorted by descending score; ties by ascending id.
std::vector<RankedItem> rank_all(std::span<const double> weights, const Dataset& dataset);

/// Moves `dragged_id` to `target_position` (0-based) in `order` and returns
/// the marked window: `window` consecutive rows of the new order centred on
/// the drop position and clamped to the table bounds.
MarkedRanking marked_from_drag(const std::vector<std::string>& order, const std::string& dragged_id,
                               std::size_t target_position,
                               std::size_t window = kMinMarkedItems);

}  // namespace rankproj
