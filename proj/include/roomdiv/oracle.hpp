#pragma once

#include <optional>

#include "roomdiv/enumerate.hpp"
#include "roomdiv/model.hpp"
#include "roomdiv/verify.hpp"

namespace roomdiv::oracle {

/// Anonymous hedonic game: agents rank coalition sizes 1..n only.
struct AnonymousGame {
  int n = 0;
  // Per agent: indifference classes over sizes 1..n, best first.
  std::vector<std::vector<std::vector<int>>> prefs;

  static AnonymousGame make(int n, std::vector<std::vector<std::vector<int>>> prefs);

  /// 0 = best class.
  int rank(int agent, int size) const { return ranks_[agent][size - 1]; }

 private:
  std::vector<std::vector<int>> ranks_;
};

AnonymousGame parse_anonymous_game(const std::string& text);
std::string serialize_anonymous_game(const AnonymousGame& game);

enum class AnonNotion : std::uint8_t { Nash, Core };

/// Visits all set partitions of {0..n-1} as block labels (restricted growth
/// strings); the visitor returns false to stop.
void for_each_set_partition(int n, std::uint64_t budget,
                            const std::function<bool(const std::vector<int>&)>& visit);

/// Brute force over all set partitions of the agents.
bool anon_stable_exists(const AnonymousGame& game, AnonNotion notion,
                        std::uint64_t budget = kDefaultOutcomeBudget);

/// First canonically enumerated outcome satisfying `notion`, else nullopt.
std::optional<Outcome> oracle_exists(const Instance& instance, Concept notion,
                                     std::uint64_t budget = kDefaultOutcomeBudget);

}  // namespace roomdiv::oracle
