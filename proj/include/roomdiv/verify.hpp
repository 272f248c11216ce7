#pragma once

#include <optional>
#include <string>
#include <vector>

#include "roomdiv/enumerate.hpp"
#include "roomdiv/model.hpp"

namespace roomdiv {

enum class Scope : std::uint8_t { Any, SameType };

/// A coalition of j red and s-j blue agents that (weakly) blocks the outcome.
struct BlockingWitness {
  int numerator = 0;
  std::vector<std::string> red_members;
  std::vector<std::string> blue_members;
  bool weak = false;  // true: all members weakly prefer, at least one strictly
};

/// A pair of agents in different rooms with a (weak) exchange deviation.
struct SwapWitness {
  std::string a;
  std::string b;
  enum class Kind : std::uint8_t { SameType, DifferentType } kind = Kind::SameType;
  bool weak = false;  // true: a strictly gains, b only weakly
};

struct EnvyWitness {
  std::string envier;
  std::string envied;
};

/// None iff the outcome is (strongly, when strong=true) core stable.
/// The witness is the lexicographically smallest by (numerator, member ids).
std::optional<BlockingWitness> find_blocking(const Instance& instance,
                                             const Outcome& outcome, bool strong);

/// None iff no pair within `scope` has a (weak, when strong=true) exchange
/// deviation. First hit scanning ordered pairs in id order.
std::optional<SwapWitness> find_exchange_deviation(const Instance& instance,
                                                   const Outcome& outcome, Scope scope,
                                                   bool strong);

/// None iff the outcome is envy-free within `scope`. First hit in id order.
std::optional<EnvyWitness> find_envy(const Instance& instance, const Outcome& outcome,
                                     Scope scope);

/// Exhaustive search over canonical outcomes for one that makes every agent
/// weakly better off and someone strictly better off. None iff Pareto
/// optimal. Throws BudgetExceeded when the canonical outcome count exceeds
/// `budget`.
std::optional<Outcome> find_pareto_improvement(const Instance& instance,
                                               const Outcome& outcome,
                                               std::uint64_t budget = kDefaultOutcomeBudget);

// ---------------------------------------------------------------------------
// Concept dispatch
// ---------------------------------------------------------------------------

enum class Concept : std::uint8_t {
  Core,
  StrongCore,
  Exchange,
  StrongExchange,
  SameTypeExchange,
  StrongSameTypeExchange,
  EnvyFree,
  SameTypeEnvyFree,
  Pareto,
};

std::string_view to_string(Concept c);
std::optional<Concept> concept_from_string(std::string_view name);

/// True iff `outcome` satisfies `concept` on `instance`.
bool is_stable(const Instance& instance, const Outcome& outcome, Concept c,
               std::uint64_t budget = kDefaultOutcomeBudget);

}  // namespace roomdiv
