#include "mock_server.hpp"

#include <atomic>
#include <thread>

#include "httplib.h"

namespace smartnote::testing {

struct MockServer::Impl {
  httplib::Server server;
  std::thread thread;
  std::atomic<std::size_t> requests{0};
};

MockServer::MockServer(Handler handler) : impl_(std::make_unique<Impl>()) {
  auto serve = [this, handler](const httplib::Request& req, httplib::Response& res) {
    ++impl_->requests;
    MockRequest r{req.method, req.path, req.body, req.get_header_value("Authorization")};
    const auto out = handler(r);
    res.status = out.status;
    if (!out.retry_after.empty()) res.set_header("Retry-After", out.retry_after);
    res.set_content(out.body, out.content_type);
  };
  impl_->server.Get(".*", serve);
  impl_->server.Post(".*", serve);
  port_ = impl_->server.bind_to_any_port("127.0.0.1");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

MockServer::~MockServer() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string MockServer::base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }

std::size_t MockServer::request_count() const { return impl_->requests.load(); }

}  // namespace smartnote::testing
