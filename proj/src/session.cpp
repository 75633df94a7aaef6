#include "rankproj/session.hpp"

#include <charconv>

#include "rankproj/consistency.hpp"
#include "rankproj/error.hpp"
#include "rankproj/pipeline.hpp"

namespace rankproj {

namespace {

Response error_response(int status, const std::string& message) {
  return {status, {{"error", message}}};
}

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return 422;
    case ErrorKind::parse: return 400;
    case ErrorKind::not_found: return 404;
    case ErrorKind::stale: return 409;
    case ErrorKind::cancelled: return 409;
    case ErrorKind::io: return 500;
  }
  return 500;
}

Json parse_body(const std::string& body) {
  if (body.empty()) return Json::object();
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string("invalid JSON body: ") + e.what());
  }
}

std::string query_value(const Request& r, const std::string& key) {
  auto it = r.query.find(key);
  if (it == r.query.end() || it->second.empty())
    throw Error(ErrorKind::invalid_input, "missing query parameter '" + key + "'");
  return it->second;
}

template <typename T>
T query_number(const Request& r, const std::string& key, T fallback) {
  auto it = r.query.find(key);
  if (it == r.query.end() || it->second.empty()) return fallback;
  T value{};
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(ErrorKind::invalid_input, "query parameter '" + key + "' is not a number");
  return value;
}

bool projection_fresh(const Session& s) {
  return s.projection && s.projection->weights_fingerprint == s.weights.fingerprint();
}

const Projection& fresh_projection(const Session& s) {
  if (!s.projection) throw Error(ErrorKind::stale, "no projection yet; POST /projection first");
  if (!projection_fresh(s))
    throw Error(ErrorKind::stale, "stale projection: weights changed since it was computed");
  return *s.projection;
}

const RatingPartition& current_partition(const Session& s) {
  if (!s.partition)
    throw Error(ErrorKind::invalid_input, "no rating partition: " + s.partition_error);
  return *s.partition;
}

void recompute_partition(Session& s) {
  try {
    s.partition = rate(s.ranking, s.n_ratings);
    s.partition_error.clear();
  } catch (const Error& e) {
    s.partition.reset();
    s.partition_error = e.what();
  }
}

Json ranking_state_json(const Session& s) {
  Json j = {{"weights", weights_to_json(s.dataset().schema().names(), s.weights)},
            {"training", to_json(s.weights.meta)},
            {"ranking", to_json(s.ranking)}};
  j["partition"] = s.partition ? to_json(*s.partition) : Json(nullptr);
  if (!s.partition) j["partition_error"] = s.partition_error;
  return j;
}

void apply_ranking(Session& s, RankingState state) {
  s.weights = std::move(state.weights);
  s.ranking = std::move(state.ranking);
  recompute_partition(s);
}

}  // namespace

Session::Session(std::string id, LoadResult loaded, std::filesystem::path scheme_dir)
    : schemes(std::move(scheme_dir)),
      id_(std::move(id)),
      dataset_(std::move(loaded.dataset)),
      renamed_(std::move(loaded.renamed)) {
  apply_ranking(*this, rank_with(dataset_, equal_weights(dataset_.attribute_count())));
  last_access = std::chrono::steady_clock::now();
}

std::stop_token Session::begin_job() {
  std::lock_guard lock(job_mutex_);
  job_.emplace();
  return job_->get_token();
}

void Session::end_job() {
  std::lock_guard lock(job_mutex_);
  job_.reset();
}

bool Session::cancel_job() {
  std::lock_guard lock(job_mutex_);
  if (!job_) return false;
  job_->request_stop();
  return true;
}

std::string partition_key(const RatingPartition& partition) {
  std::vector<double> flat = partition.split_points;
  for (int r : partition.ratings) flat.push_back(r);
  return fingerprint_of(flat);
}

Api::Api(ServiceConfig config) : config_(std::move(config)) {}

std::size_t Api::session_count() const {
  std::lock_guard lock(sessions_mutex_);
  return sessions_.size();
}

void Api::evict_expired() {
  const auto now = std::chrono::steady_clock::now();
  std::lock_guard lock(sessions_mutex_);
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->last_access > config_.session_ttl)
      it = sessions_.erase(it);
    else
      ++it;
  }
}

std::shared_ptr<Session> Api::find_session(const std::string& id) {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorKind::not_found, "unknown session '" + id + "'");
  it->second->last_access = std::chrono::steady_clock::now();
  return it->second;
}

Response Api::handle(const Request& request) {
  try {
    evict_expired();
    const std::string prefix = "/sessions";
    if (request.path == prefix || request.path == prefix + "/") {
      if (request.method == "POST") return create_session(request);
      if (request.method == "GET") {
        std::lock_guard lock(sessions_mutex_);
        Json ids = Json::array();
        for (const auto& [id, s] : sessions_) ids.push_back(id);
        return {200, {{"sessions", ids}}};
      }
      return error_response(405, "method not allowed");
    }
    if (request.path.rfind(prefix + "/", 0) != 0) return error_response(404, "no such endpoint");
    std::string rest = request.path.substr(prefix.size() + 1);
    const auto slash = rest.find('/');
    const std::string id = rest.substr(0, slash);
    const std::string tail = slash == std::string::npos ? "" : rest.substr(slash);

    if (tail.empty() && request.method == "DELETE") {
      std::lock_guard lock(sessions_mutex_);
      if (sessions_.erase(id) == 0) return error_response(404, "unknown session '" + id + "'");
      return {200, {{"deleted", id}}};
    }
    auto session = find_session(id);
    if (tail == "/projection" && request.method == "DELETE") {
      // Must not wait for the writer lock held by the running projection.
      const bool cancelled = session->cancel_job();
      return {cancelled ? 202 : 404,
              cancelled ? Json{{"cancelled", true}} : Json{{"error", "no projection running"}}};
    }
    std::lock_guard writer(session->writer());
    return route_session(*session, tail, request);
  } catch (const Error& e) {
    return error_response(status_for(e.kind()), e.what());
  } catch (const Json::exception& e) {
    return error_response(400, std::string("malformed request: ") + e.what());
  } catch (const std::exception& e) {
    return error_response(500, e.what());
  }
}

Response Api::create_session(const Request& request) {
  CsvOptions options;
  if (auto it = request.query.find("delimiter"); it != request.query.end()) {
    if (it->second.size() != 1) throw Error(ErrorKind::invalid_input, "delimiter must be one character");
    options.delimiter = it->second[0];
  }
  if (auto it = request.query.find("header"); it != request.query.end())
    options.header = !(it->second == "0" || it->second == "false");
  auto loaded = load_csv_text(request.body, options);
  if (loaded.dataset.item_count() > config_.max_rows)
    throw Error(ErrorKind::invalid_input, "dataset has " + std::to_string(loaded.dataset.item_count()) +
                                              " rows, limit is " + std::to_string(config_.max_rows));
  std::string id;
  {
    std::lock_guard lock(sessions_mutex_);
    id = "s" + std::to_string(next_id_++);
  }
  std::filesystem::path dir;
  if (!config_.session_root.empty()) dir = config_.session_root / id / "schemes";
  auto session = std::make_shared<Session>(id, std::move(loaded), dir);
  Json body = {{"session_id", id}, {"dataset", dataset_summary(session->dataset(), session->renamed())}};
  {
    std::lock_guard lock(sessions_mutex_);
    sessions_[id] = session;
  }
  return {201, body};
}

Response Api::route_session(Session& s, const std::string& tail, const Request& request) {
  const auto& method = request.method;
  const auto& dataset = s.dataset();

  if (tail.empty() && method == "GET") {
    Json j = {{"session_id", s.id()},
              {"dataset", dataset_summary(dataset, s.renamed())},
              {"n_ratings", s.n_ratings},
              {"has_projection", s.projection.has_value()},
              {"projection_fresh", projection_fresh(s)},
              {"has_polyline", s.polyline.has_value()},
              {"schemes", s.schemes.size()}};
    return {200, j};
  }

  if (tail == "/ranking" && method == "GET") return {200, ranking_state_json(s)};

  if (tail == "/contributions" && method == "GET")
    return {200, {{"contributions", matrix_to_json(attribute_contributions(dataset, s.weights.w),
                                                   dataset.ids(), dataset.schema().names())}}};

  if (tail == "/rerank" && method == "POST") {
    const Json body = parse_body(request.body);
    MarkedRanking marked{body.at("marked").get<std::vector<std::string>>()};
    const double c = body.value("regularization", 1.0);
    apply_ranking(s, rerank(dataset, marked, c));
    return {200, ranking_state_json(s)};
  }

  if (tail == "/drag" && method == "POST") {
    const Json body = parse_body(request.body);
    std::vector<std::string> order;
    for (const auto& r : s.ranking) order.push_back(r.id);
    const auto marked = marked_from_drag(order, body.at("item").get<std::string>(),
                                         body.at("position").get<std::size_t>(),
                                         body.value("window", kMinMarkedItems));
    apply_ranking(s, rerank(dataset, marked, body.value("regularization", 1.0)));
    Json j = ranking_state_json(s);
    j["marked"] = marked.ids;
    return {200, j};
  }

  if (tail == "/ratings" && method == "POST") {
    const Json body = parse_body(request.body);
    const int n = body.at("n").get<int>();
    auto partition = rate(s.ranking, n);
    s.n_ratings = n;
    s.partition = std::move(partition);
    s.partition_error.clear();
    return {200, to_json(*s.partition)};
  }

  if (tail == "/projection" && method == "POST") {
    const auto config = config_from_json(parse_body(request.body));
    config.validate(dataset.item_count());
    auto token = s.begin_job();
    try {
      s.projection = project_dataset(dataset, s.weights.w, config, token);
    } catch (...) {
      s.end_job();
      throw;
    }
    s.end_job();
    s.polyline.reset();
    return {200, to_json(*s.projection)};
  }

  if (tail == "/projection" && method == "GET") return {200, to_json(fresh_projection(s))};

  if (tail == "/polyline" && method == "POST") {
    const Json body = parse_body(request.body);
    const auto& projection = fresh_projection(s);
    const auto kind = parse_polyline_kind(body.value("kind", std::string("rating")));
    switch (kind) {
      case PolylineKind::sequence:
        s.polyline = sequence_ranking_line(s.ranking, projection);
        s.polyline_partition_key.clear();
        break;
      case PolylineKind::rating: {
        const auto& partition = current_partition(s);
        s.polyline = rating_line(partition, projection);
        s.polyline_partition_key = partition_key(partition);
        break;
      }
      case PolylineKind::self_defined:
        s.polyline = self_defined_rating_line(polygons_from_json(body.at("regions")), projection);
        s.polyline_partition_key.clear();
        break;
    }
    return {200, to_json(*s.polyline)};
  }

  if (tail == "/axis" && (method == "POST" || method == "GET")) {
    const auto& projection = fresh_projection(s);
    if (!s.polyline) throw Error(ErrorKind::stale, "no polyline yet; POST /polyline first");
    if (s.polyline->source != projection.fingerprint())
      throw Error(ErrorKind::stale, "stale polyline: projection changed since it was built");
    const auto& partition = current_partition(s);
    if (s.polyline->kind == PolylineKind::rating && s.polyline_partition_key != partition_key(partition))
      throw Error(ErrorKind::stale, "stale polyline: ratings changed since it was built");
    return {200, {{"polyline", to_json(*s.polyline)},
                  {"placements", to_json(build_axis(partition, *s.polyline, projection))}}};
  }

  if (tail == "/inconsistencies" && method == "GET") {
    const auto& projection = fresh_projection(s);
    EnumerationOptions opts;
    opts.budget = query_number<std::size_t>(request, "budget", opts.budget);
    opts.seed = query_number<std::uint64_t>(request, "seed", projection.config.seed);
    const auto found =
        enumerate_inconsistencies(scores_in_dataset_order(dataset, s.ranking), projection, opts);
    return {200, {{"inconsistencies", to_json(found, dataset.ids())}}};
  }

  if (tail == "/schemes" && method == "POST") {
    const Json body = parse_body(request.body);
    if (!s.partition) throw Error(ErrorKind::invalid_input, "nothing to save: no rating partition");
    std::optional<ProjectionConfig> config;
    if (s.projection) config = s.projection->config;
    auto stored = s.schemes.save(make_scheme(dataset, s.weights, s.ranking, *s.partition, config,
                                             body.value("name", std::string("scheme"))));
    return {201, to_json(*stored)};
  }

  if (tail == "/schemes" && method == "GET") {
    Json list = Json::array();
    for (const auto& scheme : s.schemes.list()) list.push_back(to_json(*scheme));
    return {200, {{"schemes", list}}};
  }

  if (tail == "/schemes/compare" && method == "GET") {
    const auto a = s.schemes.get(query_value(request, "a"));
    const auto b = s.schemes.get(query_value(request, "b"));
    return {200, to_json(compare_schemes(*a, *b))};
  }

  if (tail == "/schemes/projections" && method == "GET") {
    Json out = Json::array();
    for (const auto& scheme : s.schemes.latest(config_.comparative_projections)) {
      ProjectionConfig config;
      config.method = ProjectionMethod::pca;
      if (scheme->projection_config) config = *scheme->projection_config;
      out.push_back({{"scheme", scheme->name},
                     {"projection", to_json(project_dataset(dataset, scheme->weights.w, config))}});
    }
    return {200, {{"projections", out}}};
  }

  if (tail == "/align" && method == "GET")
    return {200, {{"order", to_json(align_order(dataset, query_value(request, "item")))}}};

  if (tail == "/diffs" && method == "GET") {
    const auto item = query_value(request, "item");
    return {200, {{"item", item},
                  {"diffs", matrix_to_json(attribute_diff_coloring(dataset, item), dataset.ids(),
                                           dataset.schema().names())}}};
  }

  return error_response(404, "no such endpoint: " + method + " " + request.path);
}

}  // namespace rankproj
