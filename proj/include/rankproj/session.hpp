#pragma once

// Stateful analysis sessions behind the HTTP API. `Api::handle` is the
// transport-independent entry point; server.hpp binds it to HTTP.

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>

#include "rankproj/axis.hpp"
#include "rankproj/dataset.hpp"
#include "rankproj/projection.hpp"
#include "rankproj/rating.hpp"
#include "rankproj/schemes.hpp"
#include "rankproj/serialize.hpp"
#include "rankproj/weights.hpp"

namespace rankproj {

struct ServiceConfig {
  std::size_t max_rows = 5000;
  std::chrono::seconds session_ttl{3600};
  std::filesystem::path session_root;  // empty: schemes kept in memory only
  std::size_t comparative_projections = 3;
};

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  Json body;
};

class Session {
 public:
  Session(std::string id, LoadResult loaded, std::filesystem::path scheme_dir);

  const std::string& id() const { return id_; }
  const Dataset& dataset() const { return dataset_; }
  const std::vector<RenamedLabel>& renamed() const { return renamed_; }

  /// Serializes mutating requests within the session.
  std::mutex& writer() { return writer_; }

  // Current ranking state. Changing weights drops projection, polyline and
  // any stale derived state is reported as 409 by the API.
  WeightVector weights;
  std::vector<RankedItem> ranking;
  int n_ratings = kDefaultRatings;
  std::optional<RatingPartition> partition;
  std::string partition_error;
  std::optional<Projection> projection;
  std::optional<RatingPolyline> polyline;
  std::string polyline_partition_key;
  SchemeStore schemes;

  std::chrono::steady_clock::time_point last_access;

  /// Installs a stop source for a running projection; returns its token.
  std::stop_token begin_job();
  void end_job();
  /// Requests cancellation of the running projection; false if none runs.
  bool cancel_job();

 private:
  std::string id_;
  Dataset dataset_;
  std::vector<RenamedLabel> renamed_;
  std::mutex writer_;
  std::mutex job_mutex_;
  std::optional<std::stop_source> job_;
};

/// Fingerprint of a rating partition (split points + assignment).
std::string partition_key(const RatingPartition& partition);

class Api {
 public:
  explicit Api(ServiceConfig config = {});

  Response handle(const Request& request);

  std::size_t session_count() const;

 private:
  std::shared_ptr<Session> find_session(const std::string& id);
  void evict_expired();

  Response create_session(const Request& request);
  Response route_session(Session& session, const std::string& tail, const Request& request);

  ServiceConfig config_;
  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::size_t next_id_ = 1;
};

}  // namespace rankproj
