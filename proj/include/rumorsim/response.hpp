#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rumorsim {

class MentionDetector;

/// What an agent did in one activation: a post and one verdict per rumor.
struct AgentAction {
  std::string post;
  std::vector<bool> checks;  ///< checks[j] is the verdict on rumor j
  bool operator==(const AgentAction&) const = default;
};

enum class ResponseErrorKind {
  MissingPost,
  MissingCheck,
  EmptyPost,
  VerdictCountMismatch,
  BadVerdictToken,
  AmbiguousMatch,
};

struct ResponseError {
  ResponseErrorKind kind;
  std::string detail;
};

/// Stable identifier, e.g. "missing_check".
std::string_view to_string(ResponseErrorKind kind) noexcept;

using ParsedResponse = std::variant<AgentAction, ResponseError>;

/// Minimum token similarity for a verdict line to claim a rumor by text.
inline constexpr double kVerdictMatchThreshold = 0.6;

/// Parses a model reply of the form
///
///   POST
///   <one or more content lines>
///   CHECK
///   True|False <rumor text>      (one line per rumor)
///
/// Markers and verdict words are case-insensitive; blank lines are ignored
/// between sections. Verdicts are assigned to rumors by token similarity;
/// when that does not yield a one-to-one assignment the verdicts are taken
/// in list order, provided every echoed text is at least as close to its
/// positional rumor as to any other. Never throws on malformed input.
ParsedResponse parse_response(std::string_view text, std::span<const std::string> rumors);

/// Canonical reply text for an action (the form parse_response round-trips).
std::string format_response(const AgentAction& action, std::span<const std::string> rumors);

struct ConsistencyWarning {
  std::size_t rumor;
  std::string message;
  bool operator==(const ConsistencyWarning&) const = default;
};

/// One warning for every rumor the post mentions while its check is False.
std::vector<ConsistencyWarning> mention_consistency(std::string_view post,
                                                    const std::vector<bool>& checks,
                                                    const MentionDetector& detector);
std::vector<ConsistencyWarning> mention_consistency(std::string_view post,
                                                    const std::vector<bool>& checks,
                                                    std::span<const std::string> rumors);

}  // namespace rumorsim
