#include "rankproj/pipeline.hpp"

#include <fstream>
#include <map>

#include "rankproj/error.hpp"
#include "rankproj/serialize.hpp"

namespace rankproj {

RankingState rank_with(const Dataset& dataset, WeightVector weights) {
  RankingState s;
  s.ranking = rank_all(weights.w, dataset);
  s.weights = std::move(weights);
  return s;
}

RankingState rerank(const Dataset& dataset, const MarkedRanking& marked, double regularization) {
  const auto constraints = derive_constraints(marked, dataset);
  TrainingOptions opts;
  opts.regularization = regularization;
  return rank_with(dataset, train_ranking_svm(constraints, opts));
}

RankingState rerank_from_pairs(const Dataset& dataset,
                               const std::vector<std::pair<std::string, std::string>>& pairs,
                               double regularization) {
  const auto constraints = constraints_from_pairs(pairs, dataset);
  TrainingOptions opts;
  opts.regularization = regularization;
  return rank_with(dataset, train_ranking_svm(constraints, opts));
}

std::vector<double> scores_in_dataset_order(const Dataset& dataset,
                                            const std::vector<RankedItem>& ranking) {
  std::map<std::string, double> by_id;
  for (const auto& r : ranking) by_id[r.id] = r.score;
  std::vector<double> out;
  out.reserve(dataset.item_count());
  for (const auto& item : dataset.items()) out.push_back(by_id.at(item.id));
  return out;
}

PipelineResult run_pipeline(const Dataset& dataset, RankingState ranking,
                            const PipelineOptions& options, std::stop_token stop) {
  PipelineResult r{std::move(ranking), {}, {}, {}, {}, {}};
  r.partition = rate(r.ranking.ranking, options.n_ratings);
  r.projection = project_dataset(dataset, r.ranking.weights.w, options.projection, stop);
  r.polyline = rating_line(r.partition, r.projection);
  r.axis = build_axis(r.partition, r.polyline, r.projection);
  r.inconsistencies = enumerate_inconsistencies(scores_in_dataset_order(dataset, r.ranking.ranking),
                                                r.projection, options.inconsistencies);
  return r;
}

void write_outputs(const std::filesystem::path& directory, const Dataset& dataset,
                   const PipelineResult& result, bool force) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create output directory " + directory.string());
  if (!force)
    for (const auto& name : kOutputFiles)
      if (std::filesystem::exists(directory / name))
        throw Error(ErrorKind::io, (directory / name).string() + " exists; pass --force to overwrite");

  auto open = [&](const std::string& name) {
    std::ofstream out(directory / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write " + (directory / name).string());
    return out;
  };
  const auto names = dataset.schema().names();
  {
    auto out = open("weights.json");
    Json j = {{"weights", weights_to_json(names, result.ranking.weights)},
              {"training", to_json(result.ranking.weights.meta)}};
    out << j.dump(2) << '\n';
  }
  {
    auto out = open("ranking.csv");
    write_ranking_csv(out, result.ranking.ranking);
  }
  {
    auto out = open("ratings.csv");
    write_ratings_csv(out, result.ranking.ranking, result.partition);
  }
  {
    auto out = open("projection.csv");
    write_projection_csv(out, result.projection);
  }
  {
    auto out = open("axis.csv");
    write_axis_csv(out, result.axis);
  }
  {
    auto out = open("inconsistencies.csv");
    write_inconsistencies_csv(out, result.inconsistencies, dataset.ids());
  }
}

}  // namespace rankproj
