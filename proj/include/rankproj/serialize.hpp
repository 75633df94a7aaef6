#pragma once

// JSON and CSV encodings shared by the HTTP service and the batch CLI.

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "rankproj/axis.hpp"
#include "rankproj/consistency.hpp"
#include "rankproj/dataset.hpp"
#include "rankproj/projection.hpp"
#include "rankproj/rating.hpp"
#include "rankproj/schemes.hpp"
#include "rankproj/weights.hpp"

namespace rankproj {

using Json = nlohmann::ordered_json;

Json to_json(const TrainingMeta& meta);
/// {attribute name: weight} in schema order.
Json weights_to_json(const std::vector<std::string>& attribute_names, const WeightVector& weights);
WeightVector weights_from_json(const Json& j, const std::vector<std::string>& attribute_names);

Json to_json(const std::vector<RankedItem>& ranking);
Json to_json(const RatingPartition& partition);
RatingPartition partition_from_json(const Json& j);

Json to_json(const ProjectionConfig& config);
/// Missing keys keep their defaults.
ProjectionConfig config_from_json(const Json& j);
Json to_json(const Projection& projection);

Json to_json(const RatingPolyline& polyline);
Json to_json(const std::vector<AxisPlacement>& placements);
std::vector<Polygon> polygons_from_json(const Json& j);

Json to_json(const std::vector<TripleVerdict>& verdicts, const std::vector<std::string>& ids);

Json to_json(const RankingScheme& scheme);
RankingScheme scheme_from_json(const Json& j);
Json to_json(const SchemeComparison& comparison);
Json to_json(const std::vector<AlignedItem>& aligned);

/// Rows keyed by item id, columns keyed by attribute name.
Json matrix_to_json(const Matrix& m, const std::vector<std::string>& ids,
                    const std::vector<std::string>& attribute_names);

Json dataset_summary(const Dataset& dataset, const std::vector<RenamedLabel>& renamed);

// CSV exports; numbers use the shortest round-trip representation.
void write_ranking_csv(std::ostream& out, const std::vector<RankedItem>& ranking);
void write_ratings_csv(std::ostream& out, const std::vector<RankedItem>& ranking,
                       const RatingPartition& partition);
void write_projection_csv(std::ostream& out, const Projection& projection);
void write_axis_csv(std::ostream& out, const std::vector<AxisPlacement>& placements);
void write_inconsistencies_csv(std::ostream& out, const std::vector<TripleVerdict>& verdicts,
                               const std::vector<std::string>& ids);
void write_comparison_csv(std::ostream& out, const SchemeComparison& comparison);

}  // namespace rankproj
