// HTTP JSON service exposing analysis sessions.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "rankproj/server.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Ranking/projection analysis service"};
  std::string host = "127.0.0.1";
  int port = 8080;
  long ttl_seconds = 3600;
  std::size_t max_rows = 5000;
  std::string session_root;

  if (const char* env = std::getenv("RANKPROJ_PORT")) port = std::atoi(env);
  if (const char* env = std::getenv("RANKPROJ_SESSION_TTL")) ttl_seconds = std::atol(env);
  if (const char* env = std::getenv("RANKPROJ_MAX_ROWS")) max_rows = std::strtoull(env, nullptr, 10);

  app.add_option("--host", host)->capture_default_str();
  app.add_option("--port", port)->capture_default_str();
  app.add_option("--session-ttl", ttl_seconds, "Idle seconds before a session is dropped")->capture_default_str();
  app.add_option("--max-rows", max_rows, "Largest accepted dataset")->capture_default_str();
  app.add_option("--session-dir", session_root, "Persist saved schemes under this directory");
  CLI11_PARSE(app, argc, argv);

  rankproj::ServiceConfig config;
  config.max_rows = max_rows;
  config.session_ttl = std::chrono::seconds(ttl_seconds);
  config.session_root = session_root;

  rankproj::Api api(config);
  rankproj::HttpServer server(api);
  const int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "cannot bind " << host << ":" << port << '\n';
    return 1;
  }
  std::cout << "listening on http://" << host << ":" << bound << std::endl;
  return server.serve() ? 0 : 1;
}
