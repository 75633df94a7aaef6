#pragma once

#include <memory>
#include <string>

#include "rankproj/session.hpp"

namespace rankproj {

/// HTTP/1.1 front end for `Api`. Every request body and response is JSON
/// except POST /sessions, which takes the CSV text as its body.
class HttpServer {
 public:
  explicit HttpServer(Api& api);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Blocks serving requests until stop() is called.
  bool serve();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rankproj
