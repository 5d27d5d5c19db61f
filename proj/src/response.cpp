#include "rumorsim/response.hpp"

#include <algorithm>

#include "rumorsim/text.hpp"

namespace rumorsim {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (is_blank(s.front()) || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (is_blank(s.back()) || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto lo = [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; };
    if (lo(a[i]) != lo(b[i])) return false;
  }
  return true;
}

/// "POST", "post", "POST:" all count as the marker.
bool is_marker(std::string_view line, std::string_view marker) {
  line = trim(line);
  if (!line.empty() && line.back() == ':') line.remove_suffix(1);
  return iequals(trim(line), marker);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (true) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

ResponseError error(ResponseErrorKind kind, std::string detail) { return {kind, std::move(detail)}; }

}  // namespace

std::string_view to_string(ResponseErrorKind kind) noexcept {
  switch (kind) {
    case ResponseErrorKind::MissingPost: return "missing_post";
    case ResponseErrorKind::MissingCheck: return "missing_check";
    case ResponseErrorKind::EmptyPost: return "empty_post";
    case ResponseErrorKind::VerdictCountMismatch: return "verdict_count_mismatch";
    case ResponseErrorKind::BadVerdictToken: return "bad_verdict_token";
    case ResponseErrorKind::AmbiguousMatch: return "ambiguous_match";
  }
  return "unknown";
}

ParsedResponse parse_response(std::string_view text, std::span<const std::string> rumors) {
  const auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  if (i == lines.size() || !is_marker(lines[i], "POST")) {
    return error(ResponseErrorKind::MissingPost, "reply does not start with a POST line");
  }
  ++i;

  const std::size_t body_begin = i;
  while (i < lines.size() && !is_marker(lines[i], "CHECK")) ++i;
  if (i == lines.size()) return error(ResponseErrorKind::MissingCheck, "no CHECK line after the post");

  std::string body;
  for (std::size_t k = body_begin; k < i; ++k) {
    if (k > body_begin) body += '\n';
    std::string_view line = lines[k];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    body += line;
  }
  AgentAction action;
  action.post = std::string(trim(body));
  if (action.post.empty()) return error(ResponseErrorKind::EmptyPost, "post body is empty");
  ++i;

  std::vector<bool> verdicts;
  std::vector<std::string_view> echoed;
  for (; i < lines.size(); ++i) {
    std::string_view line = trim(lines[i]);
    if (line.empty()) continue;
    if (line.starts_with("- ") || line.starts_with("* ")) line = trim(line.substr(2));
    std::size_t end = 0;
    while (end < line.size() && !is_blank(line[end]) && line[end] != ':' && line[end] != ',') ++end;
    std::string_view word = line.substr(0, end);
    while (!word.empty() && (word.back() == '.' || word.back() == '-')) word.remove_suffix(1);
    bool verdict = false;
    if (iequals(word, "true")) {
      verdict = true;
    } else if (!iequals(word, "false")) {
      return error(ResponseErrorKind::BadVerdictToken,
                   "verdict line does not start with True or False: '" + std::string(line.substr(0, 60)) + "'");
    }
    std::string_view rest = line.substr(end);
    while (!rest.empty() && (rest.front() == ':' || rest.front() == ',' || rest.front() == '-' || is_blank(rest.front()))) {
      rest.remove_prefix(1);
    }
    verdicts.push_back(verdict);
    echoed.push_back(trim(rest));
  }

  const std::size_t n = rumors.size();
  if (verdicts.size() != n) {
    return error(ResponseErrorKind::VerdictCountMismatch,
                 "expected " + std::to_string(n) + " verdicts, got " + std::to_string(verdicts.size()));
  }

  std::vector<std::vector<double>> score(n, std::vector<double>(n, 0.0));
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t r = 0; r < n; ++r) score[v][r] = token_similarity(echoed[v], rumors[r]);
  }

  // Text assignment: every verdict must single out a distinct rumor.
  std::vector<std::size_t> assigned(n, n);
  std::vector<char> taken(n, 0);
  bool by_text = true;
  for (std::size_t v = 0; v < n && by_text; ++v) {
    std::size_t best = 0;
    for (std::size_t r = 1; r < n; ++r) {
      if (score[v][r] > score[v][best]) best = r;
    }
    bool unique = true;
    for (std::size_t r = 0; r < n; ++r) {
      if (r != best && score[v][r] >= score[v][best]) unique = false;
    }
    if (score[v][best] < kVerdictMatchThreshold || !unique || taken[best]) {
      by_text = false;
    } else {
      taken[best] = 1;
      assigned[v] = best;
    }
  }

  action.checks.assign(n, false);
  if (by_text) {
    for (std::size_t v = 0; v < n; ++v) action.checks[assigned[v]] = verdicts[v];
    return action;
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (echoed[v].empty()) continue;
    const double row_max = *std::max_element(score[v].begin(), score[v].end());
    if (score[v][v] < row_max) {
      return error(ResponseErrorKind::AmbiguousMatch,
                   "verdict " + std::to_string(v + 1) + " cannot be matched to a rumor: '" +
                       std::string(echoed[v].substr(0, 60)) + "'");
    }
  }
  for (std::size_t v = 0; v < n; ++v) action.checks[v] = verdicts[v];
  return action;
}

std::string format_response(const AgentAction& action, std::span<const std::string> rumors) {
  std::string out = "POST\n";
  out += action.post;
  out += "\nCHECK\n";
  for (std::size_t j = 0; j < rumors.size(); ++j) {
    const bool verdict = j < action.checks.size() && action.checks[j];
    out += verdict ? "True " : "False ";
    out += rumors[j];
    out += '\n';
  }
  return out;
}

std::vector<ConsistencyWarning> mention_consistency(std::string_view post, const std::vector<bool>& checks,
                                                    const MentionDetector& detector) {
  std::vector<ConsistencyWarning> warnings;
  const auto mentioned = detector.mentioned(post);
  for (std::size_t j = 0; j < mentioned.size(); ++j) {
    if (mentioned[j] && j < checks.size() && !checks[j]) {
      warnings.push_back({j, "post mentions rumor #" + std::to_string(j + 1) + " but CHECK marks it False"});
    }
  }
  return warnings;
}

std::vector<ConsistencyWarning> mention_consistency(std::string_view post, const std::vector<bool>& checks,
                                                    std::span<const std::string> rumors) {
  return mention_consistency(post, checks, MentionDetector(rumors));
}

}  // namespace rumorsim
