#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace roomdiv {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Signals an internal inconsistency (encoder/realizer bug), never bad input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

enum class Color : std::uint8_t { Red, Blue };

std::string_view to_string(Color c);
Color color_from_string(std::string_view s);

/// Weak order over the ratio numerators 0..s. Classes are listed best first;
/// numerators within a class are kept sorted ascending (canonical form).
class WeakOrder {
 public:
  WeakOrder() = default;

  /// Validates that `classes` partitions {0..s} with no empty class.
  static WeakOrder from_classes(std::vector<std::vector<int>> classes, int s);

  /// Single indifference class containing all of 0..s.
  static WeakOrder indifferent(int s);

  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int domain_size() const { return static_cast<int>(rank_.size()); }  // s + 1

  /// 0 = best class.
  int rank(int numerator) const;

  bool operator==(const WeakOrder& other) const { return classes_ == other.classes_; }
  std::strong_ordering operator<=>(const WeakOrder& other) const {
    return classes_ <=> other.classes_;
  }

 private:
  std::vector<std::vector<int>> classes_;
  std::vector<int> rank_;  // indexed by numerator
};

enum class Preference : std::uint8_t { StrictlyBetter, Indifferent, StrictlyWorse };

/// Compares numerators a vs c under `order`: how does a room with `a` red
/// agents rank against one with `c`?
Preference compare(const WeakOrder& order, int a, int c);

inline bool strictly_prefers(const WeakOrder& order, int a, int c) {
  return compare(order, a, c) == Preference::StrictlyBetter;
}
inline bool weakly_prefers(const WeakOrder& order, int a, int c) {
  return compare(order, a, c) != Preference::StrictlyWorse;
}

struct Agent {
  std::string id;
  Color color = Color::Red;
  WeakOrder pref;
};

/// A roommate diversity instance: n = k*s agents, each red or blue, with weak
/// orders over the possible counts of red roommates.
class Instance {
 public:
  /// Validates: s >= 1, |agents| divisible by s, unique ids, each preference
  /// spanning exactly {0..s}.
  static Instance make(int s, std::vector<Agent> agents);

  int s() const { return s_; }
  const std::vector<Agent>& agents() const { return agents_; }
  int n() const { return static_cast<int>(agents_.size()); }
  int k() const { return n() / s_; }
  int red_count() const { return red_count_; }
  int blue_count() const { return n() - red_count_; }

  bool has_agent(std::string_view id) const;
  int agent_index(std::string_view id) const;  // throws ValidationError if unknown
  const Agent& agent(std::string_view id) const { return agents_[agent_index(id)]; }

 private:
  int s_ = 0;
  int red_count_ = 0;
  std::vector<Agent> agents_;
  std::map<std::string, int, std::less<>> index_;
};

/// A partition of the agents into k rooms of size s. Room contents are kept
/// in the order given; validation and comparisons do not depend on it.
struct Outcome {
  std::vector<std::vector<std::string>> rooms;
};

/// Sorts ids within each room and rooms among themselves.
Outcome normalized(Outcome outcome);

struct PrefClass {
  bool strict = false;
  bool dichotomous = false;
  bool single_peaked = false;

  bool operator==(const PrefClass&) const = default;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Number of red agents in `room` (the ratio numerator; denominator is s).
/// Requires |room| == s and known ids.
int theta(const std::vector<std::string>& room, const Instance& instance);

bool agent_strict(const WeakOrder& order);
bool agent_dichotomous(const WeakOrder& order);
bool agent_single_peaked(const WeakOrder& order);

/// Instance-level conjunction of the per-agent predicates.
PrefClass classify(const Instance& instance);

/// Throws ValidationError unless `outcome` partitions the agent set into
/// rooms of exactly s members.
void validate_outcome(const Instance& instance, const Outcome& outcome);

// ---------------------------------------------------------------------------
// Serialization (UTF-8 JSON, the CLI/fixture wire format)
// ---------------------------------------------------------------------------

Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& instance);

Outcome parse_outcome(const std::string& text);
std::string serialize_outcome(const Outcome& outcome);

// ---------------------------------------------------------------------------
// Profile grouping (agents interchangeable under (color, preference))
// ---------------------------------------------------------------------------

struct AgentProfile {
  Color color = Color::Red;
  WeakOrder order;
  std::vector<std::string> ids;  // sorted ascending
};

/// Groups agents by (color, preference order); red groups first, orders in
/// lexicographic order, ids sorted. Deterministic for a given instance.
std::vector<AgentProfile> profile_groups(const Instance& instance);

}  // namespace roomdiv
