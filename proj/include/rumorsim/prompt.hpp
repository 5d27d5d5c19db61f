#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rumorsim/persona.hpp"

namespace rumorsim {

/// One visible post, rendered as "author: text".
struct HistoryEntry {
  std::string author;
  std::string text;
  bool operator==(const HistoryEntry&) const = default;
};

/// Everything an agent is shown when it is activated.
struct PromptContext {
  Persona persona;
  std::vector<std::string> friend_names;
  std::vector<std::string> believed_rumors;  ///< subset of rumor_list, list order
  std::vector<HistoryEntry> post_history;    ///< oldest first
  std::vector<std::string> rumor_list;
};

struct PromptMessages {
  std::string system;
  std::string user;
  bool operator==(const PromptMessages&) const = default;
};

inline constexpr std::string_view kSystemPrompt = "You are a helpful assistant.";

/// The two worked POST/CHECK examples embedded in every prompt.
extern const std::string_view kWorkedExamples;

/// Assembles the chat messages for one activation. The result depends only
/// on the context and dictionaries, byte for byte.
PromptMessages build_prompt(const PromptContext& ctx,
                            const ScaleDictionaries& dict = ScaleDictionaries::standard());

/// Newest-last "Name: text" lines, each introduced by '\n'.
std::string render_post_history(std::span<const HistoryEntry> history);

/// Dictionary literal keyed by 1-based rumor number, e.g. {'1': '...', '2': '...'}.
std::string render_rumor_list(std::span<const std::string> rumors);

}  // namespace rumorsim
