#include "rumorsim/prompt.hpp"

namespace rumorsim {

const std::string_view kWorkedExamples =
    "Example#1:\n"
    "\n"
    "POST\n"
    "\n"
    "I just read that Donald Trump will be president of Greece! OMG! That's interesting.\n"
    "\n"
    "CHECK\n"
    "\n"
    "False COVID-19 now named as COVID-114514.\n"
    "\n"
    "True Donald Trump will be president of Greece.\n"
    "\n"
    "Example#2:\n"
    "\n"
    "POST\n"
    "\n"
    "What a nice day! I enjoy my job as a teacher.\n"
    "\n"
    "CHECK\n"
    "\n"
    "False COVID-19 now named as COVID-114514.\n"
    "\n"
    "False Donald Trump will be president of Greece.\n";

namespace {

// Single-quoted unless the text holds a quote but no double quote.
std::string quote_literal(std::string_view s) {
  const bool has_single = s.find('\'') != std::string_view::npos;
  const bool has_double = s.find('"') != std::string_view::npos;
  const char q = (has_single && !has_double) ? '"' : '\'';
  std::string out(1, q);
  for (char c : s) {
    if (c == '\\' || c == q) out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += q;
  return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

std::string render_post_history(std::span<const HistoryEntry> history) {
  std::string out;
  for (const auto& entry : history) {
    out += '\n';
    out += entry.author;
    out += ": ";
    out += entry.text;
  }
  return out;
}

std::string render_rumor_list(std::span<const std::string> rumors) {
  std::string out = "{";
  for (std::size_t i = 0; i < rumors.size(); ++i) {
    if (i) out += ", ";
    out += quote_literal(std::to_string(i + 1));
    out += ": ";
    out += quote_literal(rumors[i]);
  }
  out += '}';
  return out;
}

PromptMessages build_prompt(const PromptContext& ctx, const ScaleDictionaries& dict) {
  const Persona& p = ctx.persona;
  std::string u;
  u.reserve(4096);
  u += "Hi, " + p.name + ", you are a " + std::to_string(p.age) + "-year-old " + p.job +
       " known for being " + join_traits(p.traits) + ". Please follow the instructions below.\n";
  u += "You are active on a social network, receiving and sending posts.\n";
  u += "You " + dict.accept(p.rumors_acc) + ", and you " + dict.forward(p.rumors_spread) + ".\n";
  u += "\n";
  u += "Read through the post history, especially the new posts. It can be something you've read "
       "in other posts but you need to rephase it your personality.\n";
  u += "You can criticize the posts if you don't agree with them, you can also repeat them or "
       "express in your own way.\n";
  u += "Your posts can be seen by all your friends. Here are your friends: " +
       join(ctx.friend_names, ", ") + "\n";
  u += "You are about to send a new post [POST] based on your personal preferences.\n";
  u += "\n\n";
  u += "After posting, you will review a list of rumors and decide [CHECK] whether to believe or "
       "reject each one. Be honest: if your post mentions a rumor,\n";
  u += "your response must be consistent with what you posted.\n";
  u += "\n";
  u += "[Action Output Instruction]\n";
  u += "Start with 'POST', then on a new line, specify the content of your new post.\n";
  u += "Then, on a new line, output 'CHECK', followed by True or False for each rumor.\n";
  u += "\n";
  u += kWorkedExamples;
  u += "\n";
  u += "Before you reviewing the posts, you used to believe:\n";
  u += "\n";
  for (const auto& rumor : ctx.believed_rumors) u += "You used to believe " + rumor + " is True\n";
  u += "\n";
  u += "The previous post history is: " + render_post_history(ctx.post_history) + "\n";
  u += "\n";
  u += "Think step-by-step about the task. Be careful not to let the rumor list affect your "
       "judgment on post history.\n";
  u += "\n";
  u += "You CANNOT post the information from the rumor list but NOT in your post history.\n";
  u += "\n";
  u += "The rumor list is: " + render_rumor_list(ctx.rumor_list) +
       " Check whether you believe them based on what you read and send.\n";
  u += "\n";
  u += "Try not to exactly repeat what others have said.\n";
  u += "\n";
  u += "Propose exactly one action (POST and CHECK) for yourself in the current round.\n";
  u += "\n";
  u += "Your response:";
  return PromptMessages{std::string(kSystemPrompt), std::move(u)};
}

}  // namespace rumorsim
