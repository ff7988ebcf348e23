#include "ocix/service/http.hpp"

#include <httplib.h>

#include "ocix/error.hpp"
#include "ocix/service/api.hpp"

namespace ocix::service {

struct HttpServer::Impl {
  explicit Impl(const CitationIndex& idx) : index(idx) {
    server.Get(R"(/api/v1/.*)", [this](const httplib::Request& req, httplib::Response& res) {
      auto r = handle_get(index, req.path, req.has_param("format") ? req.get_param_value("format") : "");
      res.status = r.status;
      res.set_content(r.body, r.content_type);
    });
    // httplib's default also sets SO_REUSEPORT, which lets a second server
    // silently share a busy port.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
    });
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) res.set_content(error_json("NotFound"), "application/json");
    });
  }

  const CitationIndex& index;
  httplib::Server server;
};

HttpServer::HttpServer(const CitationIndex& index) : impl_(std::make_unique<Impl>(index)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::BindFailure, host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::start() {
  thread_ = std::thread([this] { run(); });
  impl_->server.wait_until_ready();
}

void HttpServer::stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace ocix::service
