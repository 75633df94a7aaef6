#pragma once

// In-process HTTP server on an ephemeral port plus the endpoint-vs-module
// equivalence checks shared by the service tests and the acceptance runner.

#include <httplib.h>

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rankproj/error.hpp"
#include "rankproj/pipeline.hpp"
#include "rankproj/server.hpp"
#include "rankproj/session.hpp"

namespace testing {

struct HttpResult {
  int status = 0;
  rankproj::Json body;
};

class LiveServer {
 public:
  explicit LiveServer(rankproj::ServiceConfig config = {}) : api_(std::move(config)), server_(api_) {
    port_ = server_.bind("127.0.0.1", 0);
    thread_ = std::jthread([this] { server_.serve(); });
    server_.wait_until_ready();
  }
  ~LiveServer() { server_.stop(); }

  int port() const { return port_; }
  rankproj::Api& api() { return api_; }

  HttpResult call(const std::string& method, const std::string& path, const std::string& body = {},
                  const std::string& content_type = "application/json") const {
    httplib::Client client("127.0.0.1", port_);
    client.set_read_timeout(120, 0);
    httplib::Result res;
    if (method == "GET") res = client.Get(path);
    else if (method == "POST") res = client.Post(path, body, content_type);
    else if (method == "DELETE") res = client.Delete(path);
    if (!res) return {0, nullptr};
    HttpResult out{res->status, nullptr};
    if (!res->body.empty()) out.body = rankproj::Json::parse(res->body);
    return out;
  }

  HttpResult post_json(const std::string& path, const rankproj::Json& body) const {
    return call("POST", path, body.dump());
  }

 private:
  rankproj::Api api_;
  rankproj::HttpServer server_;
  int port_ = -1;
  std::jthread thread_;
};

/// Deterministic CSV fixture: `rows` items over five attributes.
inline std::string fixture_csv(std::size_t rows, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 100);
  std::ostringstream out;
  out.precision(17);
  out << "name,capital,assets,profit,liquidity,growth\n";
  for (std::size_t i = 0; i < rows; ++i) {
    out << "bank" << i;
    for (int j = 0; j < 5; ++j) out << ',' << u(rng);
    out << '\n';
  }
  return out.str();
}

struct NamedCheck {
  std::string name;
  bool ok = false;
};

/// Drives every endpoint over HTTP and compares each response with the same
/// computation done directly through the library.
inline std::vector<NamedCheck> endpoint_equivalence(const LiveServer& server) {
  using namespace rankproj;
  using rankproj::Json;
  std::vector<NamedCheck> checks;
  auto expect = [&](const std::string& name, const HttpResult& got, int status, const Json& want) {
    checks.push_back({name, got.status == status && got.body == want});
  };

  const std::string csv = fixture_csv(40);
  const auto loaded = load_csv_text(csv);
  const Dataset& d = loaded.dataset;
  const auto names = d.schema().names();

  auto created = server.call("POST", "/sessions", csv, "text/csv");
  const std::string base = "/sessions/" + created.body.value("session_id", std::string());
  expect("POST /sessions", {created.status, created.body.value("dataset", Json())}, 201,
         dataset_summary(d, loaded.renamed));

  auto state_json = [&](const RankingState& st, const RatingPartition& p) {
    return Json{{"weights", weights_to_json(names, st.weights)},
                {"training", to_json(st.weights.meta)},
                {"ranking", to_json(st.ranking)},
                {"partition", to_json(p)}};
  };

  RankingState state = rank_with(d, equal_weights(d.attribute_count()));
  expect("GET /ranking", server.call("GET", base + "/ranking"), 200,
         state_json(state, rate(state.ranking, kDefaultRatings)));
  expect("GET /contributions", server.call("GET", base + "/contributions"), 200,
         Json{{"contributions", matrix_to_json(attribute_contributions(d, state.weights.w), d.ids(), names)}});

  std::vector<std::string> order;
  for (const auto& r : state.ranking) order.push_back(r.id);
  const std::vector<std::string> marked = {order[3], order[0], order[10], order[7], order[25], order[18]};
  state = rerank(d, {marked}, 1.0);
  expect("POST /rerank", server.post_json(base + "/rerank", {{"marked", marked}}), 200,
         state_json(state, rate(state.ranking, kDefaultRatings)));

  order.clear();
  for (const auto& r : state.ranking) order.push_back(r.id);
  const auto dragged = marked_from_drag(order, order[20], 4);
  state = rerank(d, dragged, 1.0);
  {
    Json want = state_json(state, rate(state.ranking, kDefaultRatings));
    want["marked"] = dragged.ids;
    expect("POST /drag", server.post_json(base + "/drag", {{"item", order[20]}, {"position", 4}}), 200, want);
  }

  const auto partition = rate(state.ranking, 4);
  expect("POST /ratings", server.post_json(base + "/ratings", {{"n", 4}}), 200, to_json(partition));

  ProjectionConfig tsne;
  tsne.seed = 11;
  tsne.tsne = {8.0, 300, 150.0};
  expect("POST /projection (t-SNE)", server.post_json(base + "/projection", to_json(tsne)), 200,
         to_json(project_dataset(d, state.weights.w, tsne)));

  ProjectionConfig pca;
  pca.method = ProjectionMethod::pca;
  const auto projection = project_dataset(d, state.weights.w, pca);
  expect("POST /projection (PCA)", server.post_json(base + "/projection", {{"method", "pca"}}), 200,
         to_json(projection));
  expect("GET /projection", server.call("GET", base + "/projection"), 200, to_json(projection));

  const auto seq = sequence_ranking_line(state.ranking, projection);
  expect("POST /polyline (sequence)", server.post_json(base + "/polyline", {{"kind", "sequence"}}), 200,
         to_json(seq));

  const auto line = rating_line(partition, projection);
  expect("POST /polyline (rating)", server.post_json(base + "/polyline", {{"kind", "rating"}}), 200,
         to_json(line));
  const Json axis_want = {{"polyline", to_json(line)},
                          {"placements", to_json(build_axis(partition, line, projection))}};
  expect("POST /axis", server.call("POST", base + "/axis"), 200, axis_want);
  expect("GET /axis", server.call("GET", base + "/axis"), 200, axis_want);

  // two lasso boxes around the first and last anchors
  std::vector<Polygon> regions;
  for (const auto* anchor : {&line.anchors.front(), &line.anchors.back()}) {
    const auto c = anchor->point;
    regions.push_back({{c.x - 0.3, c.y - 0.3}, {c.x + 0.3, c.y - 0.3}, {c.x + 0.3, c.y + 0.3}, {c.x - 0.3, c.y + 0.3}});
  }
  Json regions_json = Json::array();
  for (const auto& poly : regions) {
    Json pts = Json::array();
    for (const auto& p : poly) pts.push_back({p.x, p.y});
    regions_json.push_back(pts);
  }
  try {
    const auto custom = self_defined_rating_line(regions, projection);
    expect("POST /polyline (self-defined)",
           server.post_json(base + "/polyline", {{"kind", "self_defined"}, {"regions", regions_json}}), 200,
           to_json(custom));
    expect("GET /axis (self-defined)", server.call("GET", base + "/axis"), 200,
           Json{{"polyline", to_json(custom)}, {"placements", to_json(build_axis(partition, custom, projection))}});
  } catch (const Error&) {
    checks.push_back({"POST /polyline (self-defined)", false});
  }

  {
    EnumerationOptions opts;
    opts.budget = 25;
    opts.seed = 3;
    const auto found = enumerate_inconsistencies(scores_in_dataset_order(d, state.ranking), projection, opts);
    expect("GET /inconsistencies", server.call("GET", base + "/inconsistencies?budget=25&seed=3"), 200,
           Json{{"inconsistencies", to_json(found, d.ids())}});
  }

  auto first = server.post_json(base + "/schemes", {{"name", "trained"}});
  auto scheme_a = make_scheme(d, state.weights, state.ranking, partition, pca, "trained");
  scheme_a.created_at = first.body.value("created_at", std::string());
  expect("POST /schemes", first, 201, to_json(scheme_a));

  const std::vector<std::string> marked_b = {order[1], order[2], order[5], order[30], order[12], order[9]};
  server.post_json(base + "/rerank", {{"marked", marked_b}});
  const auto state_b = rerank(d, {marked_b}, 1.0);
  const auto partition_b = rate(state_b.ranking, 4);
  auto second = server.post_json(base + "/schemes", {{"name", "trained"}});
  auto scheme_b = make_scheme(d, state_b.weights, state_b.ranking, partition_b, pca, "trained-2");
  scheme_b.created_at = second.body.value("created_at", std::string());
  expect("POST /schemes (suffixed)", second, 201, to_json(scheme_b));

  expect("GET /schemes", server.call("GET", base + "/schemes"), 200,
         Json{{"schemes", Json::array({to_json(scheme_a), to_json(scheme_b)})}});
  expect("GET /schemes/compare", server.call("GET", base + "/schemes/compare?a=trained&b=trained-2"), 200,
         to_json(compare_schemes(scheme_a, scheme_b)));
  {
    Json want = Json::array();
    for (const auto* s : {&scheme_a, &scheme_b})
      want.push_back({{"scheme", s->name}, {"projection", to_json(project_dataset(d, s->weights.w, pca))}});
    expect("GET /schemes/projections", server.call("GET", base + "/schemes/projections"), 200,
           Json{{"projections", want}});
  }

  const std::string item = d.ids()[5];
  expect("GET /align", server.call("GET", base + "/align?item=" + item), 200,
         Json{{"order", to_json(align_order(d, item))}});
  expect("GET /diffs", server.call("GET", base + "/diffs?item=" + item), 200,
         Json{{"item", item}, {"diffs", matrix_to_json(attribute_diff_coloring(d, item), d.ids(), names)}});

  {
    auto got = server.call("GET", base);
    const Json want = {{"session_id", base.substr(std::string("/sessions/").size())},
                       {"dataset", dataset_summary(d, loaded.renamed)},
                       {"n_ratings", 4},
                       {"has_projection", true},
                       {"projection_fresh", false},
                       {"has_polyline", true},
                       {"schemes", 2}};
    expect("GET /sessions/{id}", got, 200, want);
  }
  return checks;
}

}  // namespace testing
