#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rumorsim {

/// Lowercases ASCII letters, turns every other ASCII non-alphanumeric byte
/// into a separator and collapses runs of separators to one space. Bytes
/// >= 0x80 (UTF-8 sequences) are kept as word characters.
std::string normalize_text(std::string_view text);

/// Words of normalize_text(text), in order.
std::vector<std::string> tokenize(std::string_view text);

/// Dice coefficient 2|A∩B| / (|A|+|B|) over the distinct tokens of a and b.
/// Two empty inputs score 0.
double token_similarity(std::string_view a, std::string_view b);

/// Decides whether a text talks about a given rumor.
///
/// Each rumor is reduced to its key tokens (distinct, stop words removed). A
/// text mentions the rumor when it contains at least
/// min(|key|, max(2, ceil(|key|/3))) of them. The same detector backs the
/// rule agents' exposure counts and the post/check consistency warnings.
class MentionDetector {
 public:
  explicit MentionDetector(std::span<const std::string> rumors);

  std::size_t rumor_count() const noexcept { return keys_.size(); }
  const std::vector<std::string>& key_tokens(std::size_t rumor) const { return keys_.at(rumor); }
  std::size_t required_matches(std::size_t rumor) const { return required_.at(rumor); }

  bool mentions(std::string_view text, std::size_t rumor) const;
  /// One flag per rumor.
  std::vector<bool> mentioned(std::string_view text) const;

 private:
  std::vector<std::vector<std::string>> keys_;
  std::vector<std::size_t> required_;
};

}  // namespace rumorsim
