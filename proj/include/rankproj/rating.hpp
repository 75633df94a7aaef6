#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankproj/weights.hpp"

namespace rankproj {

inline constexpr int kDefaultRatings = 5;

/// Empirical distribution of a score sample.
struct ScoreDistribution {
  std::vector<double> sorted;          // all scores, ascending
  std::vector<double> values;          // distinct scores, ascending
  std::vector<std::size_t> counts;     // frequency of each distinct score
  std::vector<double> probabilities;   // counts / N

  static ScoreDistribution from(std::span<const double> scores);
};

/// Shannon entropy in nats; 0 log 0 = 0. Throws on an empty distribution.
double entropy(const ScoreDistribution& distribution);

/// Snaps each score to the grid min + k * range / (10 n), k integer.
std::vector<double> quantize_scores(std::span<const double> scores, int n_ratings);

/// Greedy minimum-entropy discretization. Each step considers every boundary
/// between consecutive distinct values inside any current interval and keeps
/// the one whose resulting partition has the lowest count-weighted entropy
/// sum (leftmost on ties). Returns n-1 ascending thresholds, each the
/// midpoint of the two distinct values it separates.
std::vector<double> find_split_points(std::span<const double> scores, int n_ratings);

struct RatingPartition {
  int n_ratings = 0;
  std::vector<double> split_points;  // ascending
  std::vector<std::string> ids;
  std::vector<int> ratings;          // parallel to ids; 1 = best

  int rating_of(std::string_view id) const;
  std::size_t count(int rating) const;
};

/// Rating = 1 + number of thresholds strictly above the score, so a score
/// equal to a threshold lands in the better bucket.
int rating_for(double score, std::span<const double> split_points);

RatingPartition assign_ratings(const std::vector<std::string>& ids, std::span<const double> scores,
                               std::span<const double> split_points);

/// Quantize, split and assign in one step for a ranked list.
RatingPartition rate(const std::vector<RankedItem>& ranking, int n_ratings);

}  // namespace rankproj
