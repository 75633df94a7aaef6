#include "rankproj/schemes.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "rankproj/error.hpp"
#include "rankproj/serialize.hpp"

namespace rankproj {

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string file_safe(std::string_view name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out.empty() ? "scheme" : out;
}

}  // namespace

int RankingScheme::rank_of(std::string_view id) const {
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return ranks[i];
  throw Error(ErrorKind::not_found, "unknown item id '" + std::string(id) + "'");
}

RankingScheme make_scheme(const Dataset& dataset, const WeightVector& weights,
                          const std::vector<RankedItem>& ranking, const RatingPartition& partition,
                          std::optional<ProjectionConfig> projection_config, std::string name) {
  if (ranking.size() != dataset.item_count())
    throw Error(ErrorKind::invalid_input, "ranking does not cover the dataset");
  RankingScheme s;
  s.name = std::move(name);
  s.created_at = utc_now();
  s.dataset_fingerprint = dataset.fingerprint();
  s.attribute_names = dataset.schema().names();
  s.weights = weights;
  s.ids = dataset.ids();
  s.scores.resize(s.ids.size());
  s.ranks.resize(s.ids.size());
  std::map<std::string, const RankedItem*> by_id;
  for (const auto& r : ranking) by_id[r.id] = &r;
  s.partition.n_ratings = partition.n_ratings;
  s.partition.split_points = partition.split_points;
  s.partition.ids = s.ids;
  for (std::size_t i = 0; i < s.ids.size(); ++i) {
    auto it = by_id.find(s.ids[i]);
    if (it == by_id.end()) throw Error(ErrorKind::invalid_input, "ranking misses item '" + s.ids[i] + "'");
    s.scores[i] = it->second->score;
    s.ranks[i] = it->second->rank;
    s.partition.ratings.push_back(partition.rating_of(s.ids[i]));
  }
  s.projection_config = projection_config;
  return s;
}

SchemeStore::SchemeStore(std::filesystem::path directory) : directory_(std::move(directory)) {
  if (directory_.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create scheme directory " + directory_.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory_))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f);
    try {
      schemes_.push_back(std::make_shared<const RankingScheme>(scheme_from_json(Json::parse(in))));
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::parse, "bad scheme file " + f.string() + ": " + e.what());
    }
  }
}

std::shared_ptr<const RankingScheme> SchemeStore::save(RankingScheme scheme) {
  std::lock_guard lock(mutex_);
  auto taken = [&](const std::string& name) {
    return std::any_of(schemes_.begin(), schemes_.end(),
                       [&](const auto& s) { return s->name == name; });
  };
  if (scheme.name.empty()) scheme.name = "scheme";
  if (taken(scheme.name)) {
    const std::string base = scheme.name;
    for (int k = 2;; ++k) {
      std::string candidate = base + "-" + std::to_string(k);
      if (!taken(candidate)) {
        scheme.name = std::move(candidate);
        break;
      }
    }
  }
  auto stored = std::make_shared<const RankingScheme>(std::move(scheme));
  if (!directory_.empty()) {
    char seq[16];
    std::snprintf(seq, sizeof seq, "%06zu", schemes_.size() + 1);
    const auto path = directory_ / (std::string(seq) + "-" + file_safe(stored->name) + ".json");
    std::ofstream out(path);
    out << to_json(*stored).dump(2) << '\n';
    if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  }
  schemes_.push_back(stored);
  return stored;
}

std::shared_ptr<const RankingScheme> SchemeStore::get(std::string_view name) const {
  std::lock_guard lock(mutex_);
  for (const auto& s : schemes_)
    if (s->name == name) return s;
  throw Error(ErrorKind::not_found, "unknown scheme '" + std::string(name) + "'");
}

std::vector<std::shared_ptr<const RankingScheme>> SchemeStore::list() const {
  std::lock_guard lock(mutex_);
  return schemes_;
}

std::vector<std::shared_ptr<const RankingScheme>> SchemeStore::latest(std::size_t count) const {
  std::lock_guard lock(mutex_);
  const std::size_t start = schemes_.size() > count ? schemes_.size() - count : 0;
  return {schemes_.begin() + static_cast<std::ptrdiff_t>(start), schemes_.end()};
}

std::size_t SchemeStore::size() const {
  std::lock_guard lock(mutex_);
  return schemes_.size();
}

std::string_view to_string(Arrow a) {
  switch (a) {
    case Arrow::up: return "up";
    case Arrow::down: return "down";
    case Arrow::flat: return "flat";
  }
  return "unknown";
}

SchemeComparison compare_schemes(const RankingScheme& a, const RankingScheme& b) {
  if (a.dataset_fingerprint != b.dataset_fingerprint || a.ids.size() != b.ids.size())
    throw Error(ErrorKind::invalid_input,
                "schemes '" + a.name + "' and '" + b.name + "' rank different datasets");
  SchemeComparison c{a.name, b.name, {}};
  for (std::size_t i = 0; i < a.ids.size(); ++i) {
    RankDelta d;
    d.id = a.ids[i];
    d.rank_a = a.ranks[i];
    d.rank_b = b.rank_of(d.id);
    d.delta = d.rank_a - d.rank_b;
    d.arrow = d.delta > 0 ? Arrow::up : d.delta < 0 ? Arrow::down : Arrow::flat;
    c.items.push_back(std::move(d));
  }
  return c;
}

double attribute_similarity(const Dataset& dataset, std::string_view selected_id,
                            std::string_view other_id) {
  const auto a = dataset.normalized_row(dataset.index_of(selected_id));
  const auto b = dataset.normalized_row(dataset.index_of(other_id));
  double sq = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sq += (a[j] - b[j]) * (a[j] - b[j]);
  return 1.0 / (kSimilarityEpsilon + std::sqrt(sq));
}

std::vector<AlignedItem> align_order(const Dataset& dataset, std::string_view selected_id) {
  const std::size_t selected = dataset.index_of(selected_id);
  std::vector<AlignedItem> others;
  for (std::size_t i = 0; i < dataset.item_count(); ++i) {
    if (i == selected) continue;
    const auto& id = dataset.items()[i].id;
    others.push_back({id, attribute_similarity(dataset, selected_id, id)});
  }
  std::sort(others.begin(), others.end(), [](const AlignedItem& a, const AlignedItem& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.id < b.id;
  });
  std::vector<AlignedItem> out;
  out.push_back({std::string(selected_id), 1.0 / kSimilarityEpsilon});
  out.insert(out.end(), others.begin(), others.end());
  return out;
}

Matrix attribute_diff_coloring(const Dataset& dataset, std::string_view selected_id) {
  const auto base = dataset.normalized_row(dataset.index_of(selected_id));
  const auto& norm = dataset.normalized();
  Matrix out(norm.rows(), norm.cols());
  for (std::size_t i = 0; i < norm.rows(); ++i)
    for (std::size_t j = 0; j < norm.cols(); ++j) out(i, j) = norm(i, j) - base[j];
  return out;
}

}  // namespace rankproj
