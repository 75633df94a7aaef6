#include "rankproj/serialize.hpp"

#include "rankproj/csv.hpp"
#include "rankproj/error.hpp"

namespace rankproj {

using csv::escape;
using csv::format_number;

Json to_json(const TrainingMeta& meta) {
  return {{"regularization", meta.regularization},
          {"epochs", meta.epochs},
          {"constraints", meta.constraints},
          {"converged", meta.converged},
          {"objective", meta.objective}};
}

Json weights_to_json(const std::vector<std::string>& attribute_names, const WeightVector& weights) {
  Json j = Json::object();
  for (std::size_t k = 0; k < attribute_names.size(); ++k) j[attribute_names[k]] = weights.w.at(k);
  return j;
}

WeightVector weights_from_json(const Json& j, const std::vector<std::string>& attribute_names) {
  WeightVector w;
  for (const auto& name : attribute_names) w.w.push_back(j.at(name).get<double>());
  return w;
}

Json to_json(const std::vector<RankedItem>& ranking) {
  Json out = Json::array();
  for (const auto& r : ranking) out.push_back({{"id", r.id}, {"score", r.score}, {"rank", r.rank}});
  return out;
}

Json to_json(const RatingPartition& partition) {
  Json ratings = Json::array();
  for (std::size_t i = 0; i < partition.ids.size(); ++i)
    ratings.push_back({{"id", partition.ids[i]}, {"rating", partition.ratings[i]}});
  return {{"n_ratings", partition.n_ratings},
          {"split_points", partition.split_points},
          {"ratings", ratings}};
}

RatingPartition partition_from_json(const Json& j) {
  RatingPartition p;
  p.n_ratings = j.at("n_ratings").get<int>();
  p.split_points = j.at("split_points").get<std::vector<double>>();
  for (const auto& r : j.at("ratings")) {
    p.ids.push_back(r.at("id").get<std::string>());
    p.ratings.push_back(r.at("rating").get<int>());
  }
  return p;
}

Json to_json(const ProjectionConfig& config) {
  return {{"method", std::string(to_string(config.method))},
          {"seed", config.seed},
          {"perplexity", config.tsne.perplexity},
          {"iterations", config.tsne.iterations},
          {"learning_rate", config.tsne.learning_rate}};
}

ProjectionConfig config_from_json(const Json& j) {
  ProjectionConfig c;
  if (!j.is_object()) return c;
  if (j.contains("method")) c.method = parse_method(j["method"].get<std::string>());
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("perplexity")) c.tsne.perplexity = j["perplexity"].get<double>();
  if (j.contains("iterations")) c.tsne.iterations = j["iterations"].get<int>();
  if (j.contains("learning_rate")) c.tsne.learning_rate = j["learning_rate"].get<double>();
  return c;
}

Json to_json(const Projection& projection) {
  Json coords = Json::array();
  for (std::size_t i = 0; i < projection.ids.size(); ++i)
    coords.push_back(
        {{"id", projection.ids[i]}, {"x", projection.coords[i].x}, {"y", projection.coords[i].y}});
  return {{"config", to_json(projection.config)},
          {"weights_fingerprint", projection.weights_fingerprint},
          {"fingerprint", projection.fingerprint()},
          {"warnings", projection.warnings},
          {"coords", coords}};
}

Json to_json(const RatingPolyline& polyline) {
  Json anchors = Json::array();
  for (const auto& a : polyline.anchors)
    anchors.push_back({{"x", a.point.x}, {"y", a.point.y}, {"label", a.label}});
  return {{"kind", std::string(to_string(polyline.kind))},
          {"source", polyline.source},
          {"length", polyline.length()},
          {"anchors", anchors}};
}

Json to_json(const std::vector<AxisPlacement>& placements) {
  Json out = Json::array();
  for (const auto& p : placements)
    out.push_back({{"id", p.id},
                   {"segment_index", p.segment_index},
                   {"t", p.t},
                   {"arc_position", p.arc_position},
                   {"distance", p.distance},
                   {"bracket_low", p.bracket_low},
                   {"bracket_high", p.bracket_high},
                   {"rating", p.rating},
                   {"inverse_ordinal", p.inverse_ordinal},
                   {"consistency", std::string(to_string(p.consistency))}});
  return out;
}

std::vector<Polygon> polygons_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::invalid_input, "regions must be an array of polygons");
  std::vector<Polygon> out;
  for (const auto& poly : j) {
    if (!poly.is_array()) throw Error(ErrorKind::invalid_input, "polygon must be an array of [x, y]");
    Polygon p;
    for (const auto& v : poly) {
      if (!v.is_array() || v.size() != 2)
        throw Error(ErrorKind::invalid_input, "polygon vertex must be [x, y]");
      p.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    out.push_back(std::move(p));
  }
  return out;
}

Json to_json(const std::vector<TripleVerdict>& verdicts, const std::vector<std::string>& ids) {
  Json out = Json::array();
  for (const auto& v : verdicts)
    out.push_back({{"i", ids.at(v.i)},
                   {"j", ids.at(v.j)},
                   {"k", ids.at(v.k)},
                   {"gate_holds", v.gate_holds},
                   {"verdict", std::string(to_string(v.verdict))},
                   {"witness", std::string(to_string(v.witness))},
                   {"witness_equation", equation_number(v.witness)},
                   {"severity", v.severity}});
  return out;
}

Json to_json(const RankingScheme& scheme) {
  Json j = {{"name", scheme.name},
            {"created_at", scheme.created_at},
            {"dataset_fingerprint", scheme.dataset_fingerprint},
            {"attributes", scheme.attribute_names},
            {"weights", weights_to_json(scheme.attribute_names, scheme.weights)},
            {"training", to_json(scheme.weights.meta)},
            {"ids", scheme.ids},
            {"scores", scheme.scores},
            {"ranks", scheme.ranks},
            {"n_ratings", scheme.partition.n_ratings},
            {"split_points", scheme.partition.split_points},
            {"ratings", scheme.partition.ratings}};
  j["projection_config"] =
      scheme.projection_config ? to_json(*scheme.projection_config) : Json(nullptr);
  return j;
}

RankingScheme scheme_from_json(const Json& j) {
  RankingScheme s;
  s.name = j.at("name").get<std::string>();
  s.created_at = j.at("created_at").get<std::string>();
  s.dataset_fingerprint = j.at("dataset_fingerprint").get<std::string>();
  s.attribute_names = j.at("attributes").get<std::vector<std::string>>();
  s.weights = weights_from_json(j.at("weights"), s.attribute_names);
  if (j.contains("training")) {
    const auto& t = j["training"];
    s.weights.meta.regularization = t.at("regularization").get<double>();
    s.weights.meta.epochs = t.at("epochs").get<std::size_t>();
    s.weights.meta.constraints = t.at("constraints").get<std::size_t>();
    s.weights.meta.converged = t.at("converged").get<bool>();
    s.weights.meta.objective = t.at("objective").get<double>();
  }
  s.ids = j.at("ids").get<std::vector<std::string>>();
  s.scores = j.at("scores").get<std::vector<double>>();
  s.ranks = j.at("ranks").get<std::vector<int>>();
  s.partition.n_ratings = j.at("n_ratings").get<int>();
  s.partition.split_points = j.at("split_points").get<std::vector<double>>();
  s.partition.ratings = j.at("ratings").get<std::vector<int>>();
  s.partition.ids = s.ids;
  if (s.scores.size() != s.ids.size() || s.ranks.size() != s.ids.size() ||
      s.partition.ratings.size() != s.ids.size())
    throw Error(ErrorKind::parse, "scheme '" + s.name + "' has inconsistent array lengths");
  if (j.contains("projection_config") && !j["projection_config"].is_null())
    s.projection_config = config_from_json(j["projection_config"]);
  return s;
}

Json to_json(const SchemeComparison& comparison) {
  Json items = Json::array();
  for (const auto& d : comparison.items)
    items.push_back({{"id", d.id},
                     {"rank_a", d.rank_a},
                     {"rank_b", d.rank_b},
                     {"delta", d.delta},
                     {"arrow", std::string(to_string(d.arrow))}});
  return {{"a", comparison.scheme_a}, {"b", comparison.scheme_b}, {"items", items}};
}

Json to_json(const std::vector<AlignedItem>& aligned) {
  Json out = Json::array();
  for (const auto& a : aligned) out.push_back({{"id", a.id}, {"similarity", a.similarity}});
  return out;
}

Json matrix_to_json(const Matrix& m, const std::vector<std::string>& ids,
                    const std::vector<std::string>& attribute_names) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json values = Json::object();
    for (std::size_t j = 0; j < m.cols(); ++j) values[attribute_names[j]] = m(i, j);
    out.push_back({{"id", ids[i]}, {"values", values}});
  }
  return out;
}

Json dataset_summary(const Dataset& dataset, const std::vector<RenamedLabel>& renamed) {
  Json attrs = Json::array();
  for (std::size_t j = 0; j < dataset.attribute_count(); ++j)
    attrs.push_back({{"name", dataset.schema()[j].name},
                     {"direction", "maximize"},
                     {"constant", static_cast<bool>(dataset.constant_columns()[j])}});
  Json ren = Json::array();
  for (const auto& r : renamed) ren.push_back({{"label", r.label}, {"id", r.id}});
  Json warnings = Json::array();
  for (std::size_t j = 0; j < dataset.attribute_count(); ++j)
    if (dataset.constant_columns()[j])
      warnings.push_back("attribute '" + dataset.schema()[j].name + "' is constant");
  return {{"items", dataset.item_count()},
          {"attributes", attrs},
          {"ids", dataset.ids()},
          {"renamed", ren},
          {"warnings", warnings},
          {"fingerprint", dataset.fingerprint()}};
}

void write_ranking_csv(std::ostream& out, const std::vector<RankedItem>& ranking) {
  out << "id,score,rank\n";
  for (const auto& r : ranking) out << escape(r.id) << ',' << format_number(r.score) << ',' << r.rank << '\n';
}

void write_ratings_csv(std::ostream& out, const std::vector<RankedItem>& ranking,
                       const RatingPartition& partition) {
  out << "id,score,rank,rating\n";
  for (const auto& r : ranking)
    out << escape(r.id) << ',' << format_number(r.score) << ',' << r.rank << ','
        << partition.rating_of(r.id) << '\n';
}

void write_projection_csv(std::ostream& out, const Projection& projection) {
  out << "id,x,y\n";
  for (std::size_t i = 0; i < projection.ids.size(); ++i)
    out << escape(projection.ids[i]) << ',' << format_number(projection.coords[i].x) << ','
        << format_number(projection.coords[i].y) << '\n';
}

void write_axis_csv(std::ostream& out, const std::vector<AxisPlacement>& placements) {
  out << "id,arc_position,distance,bracket_low,bracket_high,inverse_ordinal\n";
  for (const auto& p : placements)
    out << escape(p.id) << ',' << format_number(p.arc_position) << ',' << format_number(p.distance)
        << ',' << p.bracket_low << ',' << p.bracket_high << ',' << p.inverse_ordinal << '\n';
}

void write_inconsistencies_csv(std::ostream& out, const std::vector<TripleVerdict>& verdicts,
                               const std::vector<std::string>& ids) {
  out << "i,j,k,verdict,witness_equation,severity\n";
  for (const auto& v : verdicts)
    out << escape(ids.at(v.i)) << ',' << escape(ids.at(v.j)) << ',' << escape(ids.at(v.k)) << ','
        << to_string(v.verdict) << ',' << equation_number(v.witness) << ','
        << format_number(v.severity) << '\n';
}

void write_comparison_csv(std::ostream& out, const SchemeComparison& comparison) {
  out << "id,rank_a,rank_b,delta,arrow\n";
  for (const auto& d : comparison.items)
    out << escape(d.id) << ',' << d.rank_a << ',' << d.rank_b << ',' << d.delta << ','
        << to_string(d.arrow) << '\n';
}

}  // namespace rankproj
