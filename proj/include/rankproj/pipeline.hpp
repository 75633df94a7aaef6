#pragma once

// End-to-end orchestration shared by the CLI and the HTTP service.

#include <filesystem>
#include <optional>
#include <stop_token>
#include <string>
#include <utility>
#include <vector>

#include "rankproj/axis.hpp"
#include "rankproj/consistency.hpp"
#include "rankproj/dataset.hpp"
#include "rankproj/projection.hpp"
#include "rankproj/rating.hpp"
#include "rankproj/weights.hpp"

namespace rankproj {

struct RankingState {
  WeightVector weights;
  std::vector<RankedItem> ranking;
};

RankingState rank_with(const Dataset& dataset, WeightVector weights);

/// derive_constraints -> train -> rank_all.
RankingState rerank(const Dataset& dataset, const MarkedRanking& marked, double regularization = 1.0);

/// Trains from explicit (preferred, other) pairs.
RankingState rerank_from_pairs(const Dataset& dataset,
                               const std::vector<std::pair<std::string, std::string>>& pairs,
                               double regularization = 1.0);

/// Scores in dataset order, looked up from a ranking.
std::vector<double> scores_in_dataset_order(const Dataset& dataset,
                                            const std::vector<RankedItem>& ranking);

struct PipelineOptions {
  int n_ratings = kDefaultRatings;
  ProjectionConfig projection;
  EnumerationOptions inconsistencies;
};

struct PipelineResult {
  RankingState ranking;
  RatingPartition partition;
  Projection projection;
  RatingPolyline polyline;  // rating line
  std::vector<AxisPlacement> axis;
  std::vector<TripleVerdict> inconsistencies;
};

PipelineResult run_pipeline(const Dataset& dataset, RankingState ranking,
                            const PipelineOptions& options, std::stop_token stop = {});

inline const std::vector<std::string> kOutputFiles = {
    "weights.json", "ranking.csv", "ratings.csv", "projection.csv", "axis.csv", "inconsistencies.csv"};

/// Writes every artifact into `directory`. Refuses to replace existing
/// outputs unless `force` is set.
void write_outputs(const std::filesystem::path& directory, const Dataset& dataset,
                   const PipelineResult& result, bool force);

}  // namespace rankproj
