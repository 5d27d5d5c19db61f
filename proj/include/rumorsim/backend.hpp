#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rumorsim/prompt.hpp"
#include "rumorsim/response.hpp"
#include "rumorsim/text.hpp"

namespace rumorsim {

enum class BackendKind { Remote, Rule, Replay };

/// OpenAI-compatible chat-completions endpoint.
struct RemoteConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string model = "gpt-4o-mini";
  double temperature = 0.0;
  std::chrono::milliseconds timeout{60'000};
  int max_retries = 3;
  /// Environment variable holding the bearer token. Empty disables auth.
  std::string api_key_env = "OPENAI_API_KEY";
  std::chrono::milliseconds initial_backoff{1'000};
  std::chrono::milliseconds max_backoff{30'000};
};

enum class PostPolicy {
  MostSeen,     ///< repost the believed rumor seen most often (ties: lowest index)
  AllBelieved,  ///< repost every believed rumor, in list order
};

struct RuleConfig {
  /// Exposures needed to believe, indexed by acceptance level 1..4.
  /// nullopt means the level never accepts.
  std::array<std::optional<std::size_t>, 4> accept_threshold{std::nullopt, 3, 2, 1};
  /// Agents with a lower spread level never repost rumors.
  int min_spread_to_post = 2;
  PostPolicy post_policy = PostPolicy::MostSeen;
  std::string neutral_post = "Nothing new to report from me today.";
};

struct ReplayConfig {
  std::filesystem::path transcript;
};

struct BackendConfig {
  BackendKind kind = BackendKind::Rule;
  RemoteConfig remote;
  RuleConfig rule;
  ReplayConfig replay;
  /// When set, every exchange is appended to this transcript file.
  std::optional<std::filesystem::path> record_to;
};

struct TranscriptEntry {
  std::string request_hash;
  std::string system;
  std::string user;
  std::string raw_response;
  std::string timestamp;  ///< ISO 8601 UTC
  double latency_ms = 0.0;
};

/// Lowercase hex SHA-256 of system + '\0' + user.
std::string request_hash(const PromptMessages& messages);

std::string transcript_line(const TranscriptEntry& entry);
std::vector<TranscriptEntry> load_transcript(std::istream& in);
std::vector<TranscriptEntry> load_transcript(const std::filesystem::path& path);

/// Produces the raw reply text for one activation.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string respond(const PromptMessages& messages, const PromptContext& context,
                              std::uint64_t iteration) = 0;
};

/// Deterministic stand-in for a model. An agent believes rumor j when at
/// least accept_threshold[acc] visible posts mention it; it reposts a
/// believed rumor when its spread level allows, otherwise posts the neutral
/// message.
AgentAction rule_act(const PromptContext& ctx, const RuleConfig& cfg, const MentionDetector& detector);
AgentAction rule_act(const PromptContext& ctx, const RuleConfig& cfg);

class RuleBackend final : public Backend {
 public:
  explicit RuleBackend(RuleConfig cfg = {}) : cfg_(std::move(cfg)) {}
  std::string respond(const PromptMessages& messages, const PromptContext& context,
                      std::uint64_t iteration) override;

 private:
  RuleConfig cfg_;
  std::vector<std::string> rumors_;
  std::optional<MentionDetector> detector_;
};

class RemoteBackend final : public Backend {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  RemoteBackend(RemoteConfig cfg, std::string api_key);
  ~RemoteBackend() override;

  /// One chat completion, retried with exponential backoff on transport
  /// failures, HTTP 429 and 5xx. Throws BackendUnavailable once the retry
  /// budget is spent, ProtocolError on any other unusable reply.
  std::string remote_act(const PromptMessages& messages);

  std::string respond(const PromptMessages& messages, const PromptContext& context,
                      std::uint64_t iteration) override;

  /// HTTP attempts made so far, across all calls.
  std::size_t attempts() const noexcept { return attempts_; }
  void set_sleeper(Sleeper sleeper) { sleep_ = std::move(sleeper); }

 private:
  RemoteConfig cfg_;
  std::string api_key_;
  std::string host_;
  std::string path_;
  std::size_t attempts_ = 0;
  Sleeper sleep_;
};

/// Answers from a recorded transcript, keyed by request hash. Entries with
/// the same prompt are consumed in recording order.
class ReplayBackend final : public Backend {
 public:
  explicit ReplayBackend(std::vector<TranscriptEntry> entries);
  std::string respond(const PromptMessages& messages, const PromptContext& context,
                      std::uint64_t iteration) override;

 private:
  std::unordered_map<std::string, std::deque<TranscriptEntry>> by_hash_;
};

/// Decorator appending one transcript line per exchange (flushed each time).
class RecordingBackend final : public Backend {
 public:
  RecordingBackend(std::unique_ptr<Backend> inner, const std::filesystem::path& path);
  RecordingBackend(std::unique_ptr<Backend> inner, std::ostream& out);
  std::string respond(const PromptMessages& messages, const PromptContext& context,
                      std::uint64_t iteration) override;

 private:
  std::unique_ptr<Backend> inner_;
  std::ofstream file_;
  std::ostream* out_;
};

/// Builds the configured backend (wrapped for recording when requested).
/// Remote backends whose key variable is unset fail here with ConfigError,
/// before any network traffic.
std::unique_ptr<Backend> make_backend(const BackendConfig& cfg);

}  // namespace rumorsim
