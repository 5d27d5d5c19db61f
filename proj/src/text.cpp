#include "rumorsim/text.hpp"

#include <algorithm>
#include <array>

namespace rumorsim {

namespace {

constexpr std::array<std::string_view, 40> kStopWords = {
    "a",    "an",   "the",  "is",   "are",  "was",  "were", "be",   "been", "am",
    "of",   "in",   "on",   "at",   "to",   "for",  "by",   "as",   "and",  "or",
    "it",   "its",  "that", "this", "with", "from", "can",  "will", "now",  "not",
    "i",    "my",   "me",   "you",  "we",   "they", "he",   "she",  "has",  "have"};

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

std::vector<std::string> distinct_sorted(std::vector<std::string> tokens) {
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  return tokens;
}

std::size_t count_common(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

}  // namespace

std::string normalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      if (pending_space && !out.empty()) out += ' ';
      pending_space = false;
      out += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
    } else {
      pending_space = true;
    }
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  const std::string norm = normalize_text(text);
  std::size_t start = 0;
  while (start < norm.size()) {
    auto end = norm.find(' ', start);
    if (end == std::string::npos) end = norm.size();
    tokens.emplace_back(norm.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

double token_similarity(std::string_view a, std::string_view b) {
  const auto ta = distinct_sorted(tokenize(a));
  const auto tb = distinct_sorted(tokenize(b));
  if (ta.empty() && tb.empty()) return 0.0;
  return 2.0 * static_cast<double>(count_common(ta, tb)) / static_cast<double>(ta.size() + tb.size());
}

MentionDetector::MentionDetector(std::span<const std::string> rumors) {
  keys_.reserve(rumors.size());
  required_.reserve(rumors.size());
  for (const auto& rumor : rumors) {
    auto tokens = tokenize(rumor);
    std::erase_if(tokens, [](const std::string& t) {
      return std::find(kStopWords.begin(), kStopWords.end(), t) != kStopWords.end();
    });
    tokens = distinct_sorted(std::move(tokens));
    const std::size_t k = tokens.size();
    required_.push_back(std::min(k, std::max<std::size_t>(2, (k + 2) / 3)));
    keys_.push_back(std::move(tokens));
  }
}

bool MentionDetector::mentions(std::string_view text, std::size_t rumor) const {
  const auto& key = keys_.at(rumor);
  if (key.empty()) return false;
  return count_common(key, distinct_sorted(tokenize(text))) >= required_[rumor];
}

std::vector<bool> MentionDetector::mentioned(std::string_view text) const {
  const auto words = distinct_sorted(tokenize(text));
  std::vector<bool> out(keys_.size(), false);
  for (std::size_t r = 0; r < keys_.size(); ++r) {
    out[r] = !keys_[r].empty() && count_common(keys_[r], words) >= required_[r];
  }
  return out;
}

}  // namespace rumorsim
