#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "rumorsim/backend.hpp"
#include "rumorsim/engine.hpp"
#include "rumorsim/prompt.hpp"

using namespace rumorsim;

namespace {

Persona leo() { return Persona{3, "Leo", 35, "Software Developer", {"Analytical", "Persistent"}, 3, 3}; }

PromptContext leo_context() {
  PromptContext ctx;
  ctx.persona = leo();
  ctx.friend_names = {"Olivia", "Mia"};
  ctx.rumor_list = default_rumors();
  ctx.believed_rumors = {ctx.rumor_list[0], ctx.rumor_list[3]};
  ctx.post_history = {{"Mia", "What a lovely morning at the lake."}, {"Olivia", ctx.rumor_list[0]}};
  return ctx;
}

std::string read_fixture(const char* name) {
  std::ifstream in(std::string(RUMORSIM_SOURCE_DIR) + "/tests/fixtures/" + name, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("Leo prompt matches the transcribed template byte for byte") {
  const auto m = build_prompt(leo_context());
  CHECK(m.system == "You are a helpful assistant.");
  CHECK(m.user == read_fixture("leo_prompt.txt"));
}

TEST_CASE("believed rumors: one line each, none when empty") {
  auto ctx = leo_context();
  auto count = [](const std::string& s) {
    std::size_t n = 0;
    for (auto pos = s.find("You used to believe "); pos != std::string::npos;
         pos = s.find("You used to believe ", pos + 1)) {
      ++n;
    }
    return n;
  };
  CHECK(count(build_prompt(ctx).user) == 2);
  ctx.believed_rumors.clear();
  CHECK(count(build_prompt(ctx).user) == 0);
  ctx.believed_rumors = ctx.rumor_list;
  CHECK(count(build_prompt(ctx).user) == 4);
}

TEST_CASE("rumor list rendering quotes like a Python dict") {
  CHECK(render_rumor_list(std::vector<std::string>{}) == "{}");
  CHECK(render_rumor_list(std::vector<std::string>{"a", "it's"}) == "{'1': 'a', '2': \"it's\"}");
  CHECK(render_rumor_list(std::vector<std::string>{"say \"hi\" it's"}) == "{'1': 'say \"hi\" it\\'s'}");
}

TEST_CASE("post history rendering") {
  CHECK(render_post_history({}) == "");
  const std::vector<HistoryEntry> h{{"A", "x"}, {"B", "y"}};
  CHECK(render_post_history(h) == "\nA: x\nB: y");
}

TEST_CASE("every context field reaches the prompt") {
  const auto base = leo_context();
  std::vector<PromptContext> variants(8, base);
  variants[0].persona.name = "Leon";
  variants[1].persona.age = 36;
  variants[2].persona.job = "Teacher";
  variants[3].persona.rumors_acc = 4;
  variants[4].persona.rumors_spread = 1;
  variants[5].friend_names.pop_back();
  variants[6].believed_rumors.pop_back();
  variants[7].post_history.push_back({"Leo", "hello"});
  std::set<std::string> hashes{request_hash(build_prompt(base))};
  for (const auto& v : variants) hashes.insert(request_hash(build_prompt(v)));
  CHECK(hashes.size() == variants.size() + 1);
}

TEST_CASE("request hash is SHA-256 of system, NUL, user") {
  // sha256("a\0b")
  CHECK(request_hash(PromptMessages{"a", "b"}) ==
        "59b271ae1bbcb1d31d41929817f4b16fb439eb4f31520b5ad1d5ce98920a7138");
}
