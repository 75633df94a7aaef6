#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rankproj/dataset.hpp"
#include "rankproj/projection.hpp"
#include "rankproj/rating.hpp"
#include "rankproj/weights.hpp"

namespace rankproj {

/// Immutable snapshot of one ranking. Per-item vectors follow dataset order.
struct RankingScheme {
  std::string name;
  std::string created_at;  // ISO-8601 UTC
  std::string dataset_fingerprint;
  std::vector<std::string> attribute_names;
  WeightVector weights;
  std::vector<std::string> ids;
  std::vector<double> scores;
  std::vector<int> ranks;
  RatingPartition partition;  // ids in dataset order
  std::optional<ProjectionConfig> projection_config;

  int rank_of(std::string_view id) const;
};

RankingScheme make_scheme(const Dataset& dataset, const WeightVector& weights,
                          const std::vector<RankedItem>& ranking, const RatingPartition& partition,
                          std::optional<ProjectionConfig> projection_config, std::string name);

/// Append-only scheme collection. With a directory, every saved scheme is
/// also written as `<seq>-<name>.json` and existing files are loaded on
/// construction. One writer at a time; readers get shared immutable copies.
class SchemeStore {
 public:
  SchemeStore() = default;
  explicit SchemeStore(std::filesystem::path directory);

  /// Stores `scheme`, renaming it "name-2", "name-3", ... if taken.
  std::shared_ptr<const RankingScheme> save(RankingScheme scheme);

  std::shared_ptr<const RankingScheme> get(std::string_view name) const;
  std::vector<std::shared_ptr<const RankingScheme>> list() const;
  /// Most recent `count` schemes, oldest first.
  std::vector<std::shared_ptr<const RankingScheme>> latest(std::size_t count) const;
  std::size_t size() const;

 private:
  std::filesystem::path directory_;
  mutable std::mutex mutex_;
  std::vector<std::shared_ptr<const RankingScheme>> schemes_;
};

enum class Arrow { up, down, flat };
std::string_view to_string(Arrow a);

struct RankDelta {
  std::string id;
  int rank_a = 0;
  int rank_b = 0;
  int delta = 0;  // rank_a - rank_b; positive means b ranks the item higher
  Arrow arrow = Arrow::flat;
};

struct SchemeComparison {
  std::string scheme_a;
  std::string scheme_b;
  std::vector<RankDelta> items;
};

/// Throws ErrorKind::invalid_input when the schemes rank different datasets.
SchemeComparison compare_schemes(const RankingScheme& a, const RankingScheme& b);

inline constexpr double kSimilarityEpsilon = 1e-9;

/// 1 / (eps + Euclidean distance between normalized rows).
double attribute_similarity(const Dataset& dataset, std::string_view selected_id,
                            std::string_view other_id);

struct AlignedItem {
  std::string id;
  double similarity = 0.0;
};

/// Selected item first, then the rest by descending similarity, ties by id.
std::vector<AlignedItem> align_order(const Dataset& dataset, std::string_view selected_id);

/// diff(i, j) = normalized(i, j) - normalized(selected, j). Positive values
/// mean the other item is larger on that attribute.
Matrix attribute_diff_coloring(const Dataset& dataset, std::string_view selected_id);

}  // namespace rankproj
