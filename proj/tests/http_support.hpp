#pragma once

#include <thread>

#include <httplib.h>

#include "dreamxi/service/http.hpp"

namespace dreamxi::testing {

/// The service on an ephemeral localhost port for the lifetime of the object.
class LiveServer {
 public:
  explicit LiveServer(service::Core& core) {
    service::install_routes(server_, core);
    port_ = server_.bind_to_any_port("127.0.0.1");
    if (port_ <= 0) throw std::runtime_error("cannot bind a port");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LiveServer() {
    server_.stop();
    thread_.join();
  }
  LiveServer(const LiveServer&) = delete;
  LiveServer& operator=(const LiveServer&) = delete;

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(60, 0);
    return c;
  }
  int port() const { return port_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace dreamxi::testing
