#pragma once

// Minimal OpenAI-style chat-completions server on a loopback port.

#include <httplib.h>

#include <atomic>
#include <functional>
#include <json.hpp>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

class StubServer {
 public:
  /// reply(n) gives the status and assistant text of the n-th request (0-based).
  using Reply = std::function<std::pair<int, std::string>(std::size_t)>;

  explicit StubServer(Reply reply) : reply_(std::move(reply)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      const std::size_t n = requests_++;
      {
        std::lock_guard lock(mutex_);
        bodies_.push_back(req.body);
        auth_.push_back(req.get_header_value("Authorization"));
      }
      const auto [status, text] = reply_(n);
      res.status = status;
      if (status == 200) {
        const nlohmann::json body = {
            {"choices", nlohmann::json::array({{{"message", {{"role", "assistant"}, {"content", text}}}}})}};
        res.set_content(body.dump(), "application/json");
      } else {
        res.set_content(text, "text/plain");
      }
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }
  std::size_t requests() const { return requests_; }
  std::vector<std::string> bodies() {
    std::lock_guard lock(mutex_);
    return bodies_;
  }
  std::vector<std::string> auth_headers() {
    std::lock_guard lock(mutex_);
    return auth_;
  }

 private:
  Reply reply_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::atomic<std::size_t> requests_{0};
  std::mutex mutex_;
  std::vector<std::string> bodies_;
  std::vector<std::string> auth_;
};
