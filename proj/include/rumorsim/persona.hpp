#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rumorsim {

struct Persona {
  std::int64_t id = 0;
  std::string name;
  int age = 0;
  std::string job;
  std::vector<std::string> traits;
  int rumors_acc = 1;     ///< 1..4, key into the acceptance phrases
  int rumors_spread = 1;  ///< 1..3, key into the forwarding phrases

  bool operator==(const Persona&) const = default;
};

inline constexpr int kMaxAcceptance = 4;
inline constexpr int kMaxSpread = 3;

/// Phrases substituted into the agent prompt, keyed by the persona scales.
struct ScaleDictionaries {
  std::array<std::string, kMaxAcceptance> likely_to_accept_rumors;
  std::array<std::string, kMaxSpread> likely_to_forward_rumors;

  const std::string& accept(int level) const;
  const std::string& forward(int level) const;

  static const ScaleDictionaries& standard();
};

/// How a generated roster assigns one of the two scales.
class ScalePolicy {
 public:
  enum class Kind { Uniform, Fixed, PerAgent };

  static ScalePolicy uniform() { return ScalePolicy(Kind::Uniform, 0, {}); }
  static ScalePolicy fixed(int value) { return ScalePolicy(Kind::Fixed, value, {}); }
  static ScalePolicy per_agent(std::vector<int> values) {
    return ScalePolicy(Kind::PerAgent, 0, std::move(values));
  }

  Kind kind() const noexcept { return kind_; }
  int value() const noexcept { return value_; }
  const std::vector<int>& values() const noexcept { return values_; }

  bool operator==(const ScalePolicy&) const = default;

 private:
  ScalePolicy(Kind kind, int value, std::vector<int> values)
      : kind_(kind), value_(value), values_(std::move(values)) {}

  Kind kind_;
  int value_;
  std::vector<int> values_;
};

/// Bundled sampling pools, one entry per non-empty line of data/pools/*.txt.
const std::vector<std::string>& name_pool();
const std::vector<std::string>& job_pool();
const std::vector<std::string>& trait_pool();
const std::vector<std::string>& filler_pool();

/// Deterministic roster of n personas with ids 0..n-1. Names are distinct.
std::vector<Persona> generate_personas(std::size_t n, std::uint64_t seed, const ScalePolicy& acc,
                                       const ScalePolicy& spread);

/// Throws ValidationError naming the record when a field is out of range.
void validate_persona(const Persona& p);

/// Parses the roster document format: records of "key: value" lines with the
/// field names id, agent_name, agent_age, agent_job, agent_traits,
/// agent_rumors_acc and agent_rumors_spread, separated by blank lines.
/// Lines starting with '#' are comments.
std::vector<Persona> load_personas(std::istream& in);
std::vector<Persona> load_personas(const std::filesystem::path& path);
std::vector<Persona> parse_personas(std::string_view document);

void write_personas(std::ostream& out, const std::vector<Persona>& roster);
std::string format_personas(const std::vector<Persona>& roster);

/// "Analytical, Persistent"
std::string join_traits(const std::vector<std::string>& traits);

}  // namespace rumorsim
