#include "rumorsim/backend.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <istream>
#include <json.hpp>
#include <ostream>

#include "rumorsim/error.hpp"

namespace rumorsim {

using nlohmann::json;

namespace {

std::string hex(const unsigned char* data, std::size_t n) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(2 * n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    out[2 * i] = kDigits[data[i] >> 4];
    out[2 * i + 1] = kDigits[data[i] & 0xf];
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

constexpr std::string_view kTranscriptSchema = "rumorsim-transcript";

}  // namespace

std::string request_hash(const PromptMessages& messages) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  const char sep = '\0';
  const bool ok = ctx != nullptr && EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, messages.system.data(), messages.system.size()) == 1 &&
                  EVP_DigestUpdate(ctx, &sep, 1) == 1 &&
                  EVP_DigestUpdate(ctx, messages.user.data(), messages.user.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw Error("SHA-256 computation failed");
  return hex(digest, len);
}

std::string transcript_line(const TranscriptEntry& e) {
  const json j = {{"request_hash", e.request_hash}, {"system", e.system},       {"user", e.user},
                  {"raw_response", e.raw_response}, {"timestamp", e.timestamp}, {"latency_ms", e.latency_ms}};
  return j.dump();
}

std::vector<TranscriptEntry> load_transcript(std::istream& in) {
  std::vector<TranscriptEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("transcript: ") + e.what(), line_no);
    }
    if (j.contains("schema")) {
      if (j["schema"] != kTranscriptSchema) throw ParseError("transcript: unexpected schema", line_no);
      continue;
    }
    try {
      TranscriptEntry e;
      e.request_hash = j.at("request_hash").get<std::string>();
      e.system = j.at("system").get<std::string>();
      e.user = j.at("user").get<std::string>();
      e.raw_response = j.at("raw_response").get<std::string>();
      e.timestamp = j.value("timestamp", "");
      e.latency_ms = j.value("latency_ms", 0.0);
      entries.push_back(std::move(e));
    } catch (const json::exception& e) {
      throw ParseError(std::string("transcript: ") + e.what(), line_no);
    }
  }
  return entries;
}

std::vector<TranscriptEntry> load_transcript(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open transcript '" + path.string() + "'");
  return load_transcript(in);
}

// ---------------------------------------------------------------------------
// Rule agents

AgentAction rule_act(const PromptContext& ctx, const RuleConfig& cfg, const MentionDetector& detector) {
  const std::size_t n = ctx.rumor_list.size();
  std::vector<std::size_t> exposures(n, 0);
  for (const auto& entry : ctx.post_history) {
    const auto hit = detector.mentioned(entry.text);
    for (std::size_t j = 0; j < n; ++j) exposures[j] += hit[j] ? 1 : 0;
  }

  const auto level = static_cast<std::size_t>(ctx.persona.rumors_acc - 1);
  const auto threshold = level < cfg.accept_threshold.size() ? cfg.accept_threshold[level] : std::nullopt;

  AgentAction action;
  action.checks.assign(n, false);
  for (std::size_t j = 0; j < n; ++j) action.checks[j] = threshold.has_value() && exposures[j] >= *threshold;

  const bool any_believed = std::find(action.checks.begin(), action.checks.end(), true) != action.checks.end();
  if (!any_believed || ctx.persona.rumors_spread < cfg.min_spread_to_post) {
    action.post = cfg.neutral_post;
    return action;
  }
  if (cfg.post_policy == PostPolicy::MostSeen) {
    std::size_t pick = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (action.checks[j] && (pick == n || exposures[j] > exposures[pick])) pick = j;
    }
    action.post = ctx.rumor_list[pick];
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      if (!action.checks[j]) continue;
      if (!action.post.empty()) action.post += ' ';
      action.post += ctx.rumor_list[j];
    }
  }
  return action;
}

AgentAction rule_act(const PromptContext& ctx, const RuleConfig& cfg) {
  return rule_act(ctx, cfg, MentionDetector(ctx.rumor_list));
}

std::string RuleBackend::respond(const PromptMessages& /*messages*/, const PromptContext& context,
                                 std::uint64_t /*iteration*/) {
  if (!detector_ || rumors_ != context.rumor_list) {
    rumors_ = context.rumor_list;
    detector_.emplace(rumors_);
  }
  return format_response(rule_act(context, cfg_, *detector_), context.rumor_list);
}

// ---------------------------------------------------------------------------
// Replay and recording

ReplayBackend::ReplayBackend(std::vector<TranscriptEntry> entries) {
  for (auto& e : entries) by_hash_[e.request_hash].push_back(std::move(e));
}

std::string ReplayBackend::respond(const PromptMessages& messages, const PromptContext& /*context*/,
                                   std::uint64_t iteration) {
  const std::string hash = request_hash(messages);
  auto it = by_hash_.find(hash);
  if (it != by_hash_.end()) {
    auto& queue = it->second;
    for (auto e = queue.begin(); e != queue.end(); ++e) {
      if (e->system == messages.system && e->user == messages.user) {
        std::string reply = std::move(e->raw_response);
        queue.erase(e);
        return reply;
      }
    }
  }
  throw ReplayMiss("replay miss at iteration " + std::to_string(iteration) + ": no recorded response for prompt " +
                       hash.substr(0, 16),
                   iteration);
}

RecordingBackend::RecordingBackend(std::unique_ptr<Backend> inner, const std::filesystem::path& path)
    : inner_(std::move(inner)), out_(&file_) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  file_.open(path, std::ios::app);
  if (!file_) throw IoError("cannot open transcript '" + path.string() + "' for writing");
  if (fresh) file_ << json{{"schema", kTranscriptSchema}, {"version", 1}}.dump() << '\n' << std::flush;
}

RecordingBackend::RecordingBackend(std::unique_ptr<Backend> inner, std::ostream& out)
    : inner_(std::move(inner)), out_(&out) {}

std::string RecordingBackend::respond(const PromptMessages& messages, const PromptContext& context,
                                      std::uint64_t iteration) {
  const auto start = std::chrono::steady_clock::now();
  std::string reply = inner_->respond(messages, context, iteration);
  const std::chrono::duration<double, std::milli> latency = std::chrono::steady_clock::now() - start;
  TranscriptEntry e{request_hash(messages), messages.system, messages.user, reply, utc_timestamp(), latency.count()};
  *out_ << transcript_line(e) << '\n' << std::flush;
  return reply;
}

std::unique_ptr<Backend> make_backend(const BackendConfig& cfg) {
  std::unique_ptr<Backend> backend;
  switch (cfg.kind) {
    case BackendKind::Rule:
      backend = std::make_unique<RuleBackend>(cfg.rule);
      break;
    case BackendKind::Replay:
      backend = std::make_unique<ReplayBackend>(load_transcript(cfg.replay.transcript));
      break;
    case BackendKind::Remote: {
      std::string key;
      if (!cfg.remote.api_key_env.empty()) {
        const char* value = std::getenv(cfg.remote.api_key_env.c_str());
        if (value == nullptr || *value == '\0') {
          throw ConfigError("remote backend needs an API key in environment variable " + cfg.remote.api_key_env);
        }
        key = value;
      }
      backend = std::make_unique<RemoteBackend>(cfg.remote, std::move(key));
      break;
    }
  }
  if (cfg.record_to) backend = std::make_unique<RecordingBackend>(std::move(backend), *cfg.record_to);
  return backend;
}

}  // namespace rumorsim
