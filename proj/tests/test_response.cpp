#include <doctest.h>

#include <variant>

#include "rumorsim/engine.hpp"
#include "rumorsim/response.hpp"
#include "rumorsim/rng.hpp"
#include "rumorsim/text.hpp"

using namespace rumorsim;

namespace {

const std::vector<std::string> kExampleRumors{"COVID-19 now named as COVID-114514.",
                                              "Donald Trump will be president of Greece."};

const char* kExample1 =
    "POST\n"
    "\n"
    "I just read that Donald Trump will be president of Greece! OMG! That's interesting.\n"
    "\n"
    "CHECK\n"
    "\n"
    "False COVID-19 now named as COVID-114514.\n"
    "\n"
    "True Donald Trump will be president of Greece.\n";

const char* kExample2 =
    "POST\n"
    "\n"
    "What a nice day! I enjoy my job as a teacher.\n"
    "\n"
    "CHECK\n"
    "\n"
    "False COVID-19 now named as COVID-114514.\n"
    "\n"
    "False Donald Trump will be president of Greece.\n";

AgentAction ok(const ParsedResponse& r) {
  if (const auto* e = std::get_if<ResponseError>(&r)) FAIL(to_string(e->kind), ": ", e->detail);
  return std::get<AgentAction>(r);
}

ResponseErrorKind kind(const ParsedResponse& r) {
  REQUIRE(std::holds_alternative<ResponseError>(r));
  return std::get<ResponseError>(r).kind;
}

}  // namespace

TEST_CASE("worked examples parse to the documented actions") {
  const auto a = ok(parse_response(kExample1, kExampleRumors));
  CHECK(a.post == "I just read that Donald Trump will be president of Greece! OMG! That's interesting.");
  CHECK(a.checks == std::vector<bool>{false, true});
  const auto b = ok(parse_response(kExample2, kExampleRumors));
  CHECK(b.post == "What a nice day! I enjoy my job as a teacher.");
  CHECK(b.checks == std::vector<bool>{false, false});
}

TEST_CASE("verdicts are matched by text, not position, when the text is clear") {
  const auto a = ok(parse_response(
      "post:\nhello there\ncheck:\n- TRUE: Donald Trump will be president of Greece\n* false - COVID-19 now "
      "named as COVID-114514\n",
      kExampleRumors));
  CHECK(a.post == "hello there");
  CHECK(a.checks == std::vector<bool>{false, true});
}

TEST_CASE("bare verdicts fall back to list order") {
  const auto a = ok(parse_response("POST\nhi\nCHECK\nTrue\nFalse\n", kExampleRumors));
  CHECK(a.checks == std::vector<bool>{true, false});
}

TEST_CASE("multi-line posts keep inner lines") {
  const auto a = ok(parse_response("POST\nline one\n\nline two\nCHECK\nFalse a\nFalse b\n",
                                   std::vector<std::string>{"a", "b"}));
  CHECK(a.post == "line one\n\nline two");
}

TEST_CASE("typed errors for malformed replies") {
  CHECK(kind(parse_response("", kExampleRumors)) == ResponseErrorKind::MissingPost);
  CHECK(kind(parse_response("Hello\nPOST\nx\nCHECK\n", kExampleRumors)) == ResponseErrorKind::MissingPost);
  CHECK(kind(parse_response("POST\nsomething\n", kExampleRumors)) == ResponseErrorKind::MissingCheck);
  CHECK(kind(parse_response("POST\n\n  \nCHECK\nTrue\nFalse\n", kExampleRumors)) == ResponseErrorKind::EmptyPost);
  CHECK(kind(parse_response("POST\nx\nCHECK\nTrue\n", kExampleRumors)) == ResponseErrorKind::VerdictCountMismatch);
  CHECK(kind(parse_response("POST\nx\nCHECK\nMaybe a\nTrue b\n", kExampleRumors)) ==
        ResponseErrorKind::BadVerdictToken);
  // Both lines echo the second rumor: no one-to-one assignment, and the
  // first line is closer to rumor 2 than to its own position.
  CHECK(kind(parse_response("POST\nx\nCHECK\nTrue Donald Trump will be president of Greece\n"
                            "False Donald Trump will be president of Greece\n",
                            kExampleRumors)) == ResponseErrorKind::AmbiguousMatch);
  CHECK(to_string(ResponseErrorKind::AmbiguousMatch) == "ambiguous_match");
}

TEST_CASE("format/parse round trip over random actions") {
  const auto rumors = default_rumors();
  const std::vector<std::string> words{"sunny", "coffee", "weekend", "Dinosaur", "news", "hello", "!", "work"};
  Rng r(99);
  for (int trial = 0; trial < 2000; ++trial) {
    AgentAction a;
    const auto len = 1 + r.uniform_below(12);
    for (std::uint64_t w = 0; w < len; ++w) {
      if (w) a.post += r.bernoulli(0.1) ? "\n" : " ";
      a.post += words[r.uniform_below(words.size())];
    }
    for (std::size_t j = 0; j < rumors.size(); ++j) a.checks.push_back(r.bernoulli(0.5));
    CHECK(ok(parse_response(format_response(a, rumors), rumors)) == a);
  }
}

TEST_CASE("fuzz: random bytes only ever produce actions or typed errors") {
  const auto rumors = default_rumors();
  const std::vector<std::string> fragments{"POST", "CHECK", "True", "False", "\n", " ", ":", "- ", "\r\n",
                                           rumors[0], rumors[2], "\xff\xfe", "post", "TRUE"};
  Rng r(2024);
  std::size_t actions = 0;
  for (int trial = 0; trial < 100000; ++trial) {
    std::string s;
    const auto len = r.uniform_below(64);
    for (std::uint64_t i = 0; i < len; ++i) {
      if (r.bernoulli(0.3)) {
        s += fragments[r.uniform_below(fragments.size())];
      } else {
        s += static_cast<char>(r.uniform_below(256));
      }
    }
    const auto parsed = parse_response(s, rumors);
    if (std::holds_alternative<AgentAction>(parsed)) {
      ++actions;
      CHECK(std::get<AgentAction>(parsed).checks.size() == rumors.size());
    }
  }
  CHECK(actions < 100000);
}

TEST_CASE("text normalization and similarity") {
  CHECK(normalize_text("  Hello,   WORLD!! ") == "hello world");
  CHECK(normalize_text("Ceaușescu") == "ceaușescu");
  CHECK(tokenize("COVID-19 now") == std::vector<std::string>{"covid", "19", "now"});
  CHECK(token_similarity("", "") == 0.0);
  CHECK(token_similarity("a b", "a b") == doctest::Approx(1.0));
  CHECK(token_similarity("a b", "a c") == doctest::Approx(0.5));
}

TEST_CASE("mention detector") {
  const auto rumors = default_rumors();
  const MentionDetector d(rumors);
  CHECK(d.key_tokens(0) == std::vector<std::string>{"ceaușescu", "dead", "nicolae"});
  CHECK(d.required_matches(0) == 2);
  for (std::size_t j = 0; j < rumors.size(); ++j) {
    CHECK(d.mentions(rumors[j], j));
    for (std::size_t k = 0; k < rumors.size(); ++k) {
      if (k != j) CHECK_FALSE(d.mentions(rumors[j], k));
    }
  }
  CHECK(d.mentions("I heard Nicolae Ceaușescu lives! Still alive, they say.", 0));
  CHECK_FALSE(d.mentions("Is anyone dead tired today?", 0));
  CHECK(d.mentions("a DINOSAUR spotted in yellowstone?!", 1));
  for (const auto& filler : {"What a lovely morning at the lake.", "Nothing new to report from me today."}) {
    const auto m = d.mentioned(filler);
    CHECK(std::find(m.begin(), m.end(), true) == m.end());
  }
}

TEST_CASE("consistency warnings") {
  const auto rumors = default_rumors();
  const auto w = mention_consistency("Wow, a living dinosaur in Yellowstone!", {false, false, false, false}, rumors);
  REQUIRE(w.size() == 1);
  CHECK(w[0].rumor == 1);
  CHECK(mention_consistency("Wow, a living dinosaur in Yellowstone!", {false, true, false, false}, rumors).empty());
}
