#include <httplib.h>

#include <json.hpp>
#include <thread>

#include "rumorsim/backend.hpp"
#include "rumorsim/error.hpp"

namespace rumorsim {

using nlohmann::json;

RemoteBackend::RemoteBackend(RemoteConfig cfg, std::string api_key)
    : cfg_(std::move(cfg)), api_key_(std::move(api_key)) {
  if (cfg_.max_retries < 0) throw ConfigError("remote.max_retries must be >= 0");
  if (cfg_.temperature < 0) throw ConfigError("remote.temperature must be >= 0");
  const auto scheme_end = cfg_.base_url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("remote.base_url needs a scheme: " + cfg_.base_url);
  const auto path_start = cfg_.base_url.find('/', scheme_end + 3);
  host_ = cfg_.base_url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "" : cfg_.base_url.substr(path_start);
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  path_ += "/chat/completions";
  sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

RemoteBackend::~RemoteBackend() = default;

std::string RemoteBackend::remote_act(const PromptMessages& messages) {
  const json body = {{"model", cfg_.model},
                     {"messages", json::array({{{"role", "system"}, {"content", messages.system}},
                                               {{"role", "user"}, {"content", messages.user}}})},
                     {"temperature", cfg_.temperature}};
  const std::string payload = body.dump();

  httplib::Client client(host_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(cfg_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(cfg_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  std::string last_failure;
  auto backoff = cfg_.initial_backoff;
  for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
    if (attempt > 0) {
      sleep_(backoff);
      backoff = std::min(backoff * 2, cfg_.max_backoff);
    }
    ++attempts_;
    auto res = client.Post(path_, headers, payload, "application/json");
    if (!res) {
      last_failure = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_failure = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      throw ProtocolError("chat completion rejected with HTTP " + std::to_string(res->status) + ": " +
                          res->body.substr(0, 200));
    }
    json reply;
    try {
      reply = json::parse(res->body);
    } catch (const json::parse_error&) {
      throw ProtocolError("chat completion reply is not JSON");
    }
    const json* content = nullptr;
    if (reply.is_object() && reply.contains("choices") && reply["choices"].is_array() && !reply["choices"].empty()) {
      const auto& choice = reply["choices"][0];
      if (choice.is_object() && choice.contains("message") && choice["message"].is_object() &&
          choice["message"].contains("content")) {
        content = &choice["message"]["content"];
      }
    }
    if (content == nullptr || !content->is_string()) {
      throw ProtocolError("chat completion reply lacks choices[0].message.content");
    }
    return content->get<std::string>();
  }
  throw BackendUnavailable("chat completion failed after " + std::to_string(cfg_.max_retries + 1) +
                           " attempts (" + last_failure + ")");
}

std::string RemoteBackend::respond(const PromptMessages& messages, const PromptContext& /*context*/,
                                   std::uint64_t /*iteration*/) {
  return remote_act(messages);
}

}  // namespace rumorsim
