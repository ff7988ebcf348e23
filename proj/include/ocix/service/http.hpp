#pragma once

#include <memory>
#include <string>
#include <thread>

#include "ocix/index.hpp"

namespace ocix::service {

// Read-only HTTP front end over a loaded index. The index must outlive the
// server.
class HttpServer {
 public:
  explicit HttpServer(const CitationIndex& index);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds; port 0 picks a free port. Throws BindFailure.
  int bind(const std::string& host, int port);
  // Serves on the calling thread until stop().
  void run();
  // Serves on a background thread.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
};

}  // namespace ocix::service
