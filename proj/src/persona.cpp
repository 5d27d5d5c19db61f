#include "rumorsim/persona.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>

#include "rumorsim/error.hpp"
#include "rumorsim/rng.hpp"

namespace rumorsim {

namespace pools_data {
extern const char* const names;
extern const char* const jobs;
extern const char* const traits;
extern const char* const fillers;
}  // namespace pools_data

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    if (!line.empty()) out.emplace_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

int draw_scale(const ScalePolicy& policy, std::size_t index, int max, Rng& rng, const char* what) {
  switch (policy.kind()) {
    case ScalePolicy::Kind::Uniform:
      return static_cast<int>(rng.uniform_int(1, max));
    case ScalePolicy::Kind::Fixed:
      return policy.value();
    case ScalePolicy::Kind::PerAgent:
      return policy.values()[index];
  }
  throw ParameterError(std::string("unknown ") + what + " policy");
}

void check_policy(const ScalePolicy& policy, std::size_t n, int max, const char* what) {
  auto in_range = [max](int v) { return v >= 1 && v <= max; };
  if (policy.kind() == ScalePolicy::Kind::Fixed && !in_range(policy.value())) {
    throw ParameterError(std::string(what) + " fixed value " + std::to_string(policy.value()) +
                         " outside 1.." + std::to_string(max));
  }
  if (policy.kind() == ScalePolicy::Kind::PerAgent) {
    if (policy.values().size() != n) {
      throw ParameterError(std::string(what) + " per-agent list has " +
                           std::to_string(policy.values().size()) + " entries for " +
                           std::to_string(n) + " agents");
    }
    for (int v : policy.values()) {
      if (!in_range(v)) {
        throw ParameterError(std::string(what) + " per-agent value " + std::to_string(v) +
                             " outside 1.." + std::to_string(max));
      }
    }
  }
}

std::string record_name(const Persona& p) {
  return "persona id " + std::to_string(p.id) + (p.name.empty() ? "" : " (" + p.name + ")");
}

template <typename Int>
Int parse_integer(std::string_view value, const std::string& key, std::size_t record) {
  Int out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ValidationError("record " + std::to_string(record) + ": field '" + key +
                          "' is not an integer: '" + std::string(value) + "'");
  }
  return out;
}

}  // namespace

const std::string& ScaleDictionaries::accept(int level) const {
  if (level < 1 || level > kMaxAcceptance) throw ParameterError("acceptance level out of range");
  return likely_to_accept_rumors[static_cast<std::size_t>(level - 1)];
}

const std::string& ScaleDictionaries::forward(int level) const {
  if (level < 1 || level > kMaxSpread) throw ParameterError("spread level out of range");
  return likely_to_forward_rumors[static_cast<std::size_t>(level - 1)];
}

const ScaleDictionaries& ScaleDictionaries::standard() {
  static const ScaleDictionaries dict{
      {"won't easily accept any rumors or new information unless they are confirmed or well-examined",
       "may suspect rumors but will accept them once they appear frequently in posts or generally make sense",
       "will accept any new information unless there is significant controversy or criticism",
       "will easily accept any rumors, even if there are doubts or criticisms"},
      {"prefer not to spread much of the new information seen in others' posts",
       "may forward posts seen with comments and feelings, or may just share personal experiences",
       "are willing to share and comment on rumors, posts, and new things seen in posts"}};
  return dict;
}

const std::vector<std::string>& name_pool() {
  static const auto pool = split_lines(pools_data::names);
  return pool;
}
const std::vector<std::string>& job_pool() {
  static const auto pool = split_lines(pools_data::jobs);
  return pool;
}
const std::vector<std::string>& trait_pool() {
  static const auto pool = split_lines(pools_data::traits);
  return pool;
}
const std::vector<std::string>& filler_pool() {
  static const auto pool = split_lines(pools_data::fillers);
  return pool;
}

std::string join_traits(const std::vector<std::string>& traits) {
  std::string out;
  for (std::size_t i = 0; i < traits.size(); ++i) {
    if (i) out += ", ";
    out += traits[i];
  }
  return out;
}

std::vector<Persona> generate_personas(std::size_t n, std::uint64_t seed, const ScalePolicy& acc,
                                       const ScalePolicy& spread) {
  if (n < 1) throw ParameterError("generate_personas requires n >= 1");
  check_policy(acc, n, kMaxAcceptance, "acceptance");
  check_policy(spread, n, kMaxSpread, "spread");

  Rng rng(seed);
  // Shuffled name pool; wraps with a numeric suffix so names stay unique.
  std::vector<std::string> names = name_pool();
  for (std::size_t i = names.size(); i > 1; --i) std::swap(names[i - 1], names[rng.uniform_below(i)]);
  const auto& jobs = job_pool();
  const auto& traits = trait_pool();

  std::vector<Persona> roster;
  roster.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Persona p;
    p.id = static_cast<std::int64_t>(i);
    p.name = names[i % names.size()];
    if (i >= names.size()) p.name += " " + std::to_string(i / names.size() + 1);
    p.age = static_cast<int>(rng.uniform_int(18, 70));
    p.job = jobs[rng.uniform_below(jobs.size())];
    const auto first = rng.uniform_below(traits.size());
    auto second = rng.uniform_below(traits.size() - 1);
    if (second >= first) ++second;
    p.traits = {traits[first], traits[second]};
    p.rumors_acc = draw_scale(acc, i, kMaxAcceptance, rng, "acceptance");
    p.rumors_spread = draw_scale(spread, i, kMaxSpread, rng, "spread");
    roster.push_back(std::move(p));
  }
  return roster;
}

void validate_persona(const Persona& p) {
  if (p.name.empty()) throw ValidationError(record_name(p) + ": agent_name is empty");
  if (p.age < 0) throw ValidationError(record_name(p) + ": agent_age is negative");
  if (p.rumors_acc < 1 || p.rumors_acc > kMaxAcceptance) {
    throw ValidationError(record_name(p) + ": agent_rumors_acc " + std::to_string(p.rumors_acc) +
                          " outside 1..4");
  }
  if (p.rumors_spread < 1 || p.rumors_spread > kMaxSpread) {
    throw ValidationError(record_name(p) + ": agent_rumors_spread " +
                          std::to_string(p.rumors_spread) + " outside 1..3");
  }
}

std::vector<Persona> parse_personas(std::string_view document) {
  static const std::vector<std::string> kFields = {
      "id", "agent_name", "agent_age", "agent_job", "agent_traits", "agent_rumors_acc", "agent_rumors_spread"};

  std::vector<Persona> roster;
  std::set<std::int64_t> ids;
  Persona current;
  std::set<std::string> present;
  std::size_t record = 0;
  std::size_t line_no = 0;

  auto finish = [&] {
    if (present.empty()) return;
    ++record;
    for (const auto& f : kFields) {
      if (!present.count(f)) {
        throw ValidationError("record " + std::to_string(record) + " (line " + std::to_string(line_no) +
                              "): missing field '" + f + "'");
      }
    }
    validate_persona(current);
    if (!ids.insert(current.id).second) {
      throw ValidationError(record_name(current) + ": duplicate id");
    }
    roster.push_back(std::move(current));
    current = Persona{};
    present.clear();
  };

  while (true) {
    const auto nl = document.find('\n');
    const std::string_view raw = document.substr(0, nl);
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) {
      finish();
    } else if (line.front() != '#') {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) {
        throw ValidationError("line " + std::to_string(line_no) + ": expected 'key: value'");
      }
      const std::string key(trim(line.substr(0, colon)));
      const auto value = trim(line.substr(colon + 1));
      if (present.count(key)) {
        // A repeated key with no blank line between starts the next record.
        if (key == "id") {
          finish();
        } else {
          throw ValidationError("line " + std::to_string(line_no) + ": field '" + key + "' repeated");
        }
      }
      const std::size_t rec = record + 1;
      if (key == "id") {
        current.id = parse_integer<std::int64_t>(value, key, rec);
      } else if (key == "agent_name") {
        current.name = std::string(value);
      } else if (key == "agent_age") {
        current.age = parse_integer<int>(value, key, rec);
      } else if (key == "agent_job") {
        current.job = std::string(value);
      } else if (key == "agent_traits") {
        current.traits.clear();
        std::string_view rest = value;
        while (!rest.empty()) {
          const auto comma = rest.find(',');
          const auto t = trim(rest.substr(0, comma));
          if (!t.empty()) current.traits.emplace_back(t);
          if (comma == std::string_view::npos) break;
          rest.remove_prefix(comma + 1);
        }
      } else if (key == "agent_rumors_acc") {
        current.rumors_acc = parse_integer<int>(value, key, rec);
      } else if (key == "agent_rumors_spread") {
        current.rumors_spread = parse_integer<int>(value, key, rec);
      } else {
        throw ValidationError("line " + std::to_string(line_no) + ": unknown field '" + key + "'");
      }
      present.insert(key);
    }
    if (nl == std::string_view::npos) break;
    document.remove_prefix(nl + 1);
  }
  finish();
  return roster;
}

std::vector<Persona> load_personas(std::istream& in) {
  const std::string doc{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_personas(doc);
}

std::vector<Persona> load_personas(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open persona roster '" + path.string() + "'");
  return load_personas(in);
}

void write_personas(std::ostream& out, const std::vector<Persona>& roster) {
  for (std::size_t i = 0; i < roster.size(); ++i) {
    const auto& p = roster[i];
    if (i) out << '\n';
    out << "id: " << p.id << '\n'
        << "agent_name: " << p.name << '\n'
        << "agent_age: " << p.age << '\n'
        << "agent_job: " << p.job << '\n'
        << "agent_traits: " << join_traits(p.traits) << '\n'
        << "agent_rumors_acc: " << p.rumors_acc << '\n'
        << "agent_rumors_spread: " << p.rumors_spread << '\n';
  }
}

std::string format_personas(const std::vector<Persona>& roster) {
  std::ostringstream out;
  write_personas(out, roster);
  return out.str();
}

}  // namespace rumorsim
