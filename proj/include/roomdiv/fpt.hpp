#pragma once

#include <optional>

#include "roomdiv/ilp.hpp"
#include "roomdiv/model.hpp"
#include "roomdiv/verify.hpp"

namespace roomdiv::fpt {

/// Agents bucketed by preference order within one color; the instance is
/// fully described by the two type lists and their multiplicities.
struct AgentType {
  WeakOrder order;
  std::vector<std::string> ids;  // sorted ascending

  int count() const { return static_cast<int>(ids.size()); }
};

struct TypeProfile {
  int s = 0;
  std::vector<AgentType> red;
  std::vector<AgentType> blue;

  static TypeProfile from_instance(const Instance& instance);
};

struct ColocateGroup {
  int numerator = 0;
  std::vector<std::string> ids;
};

/// A feasible room-count profile: how many agents of each type live in rooms
/// with j red members, plus the room counts themselves.
struct CountProfile {
  std::vector<std::vector<ilp::Value>> red_counts;   // [red type][j], j in 0..s
  std::vector<std::vector<ilp::Value>> blue_counts;  // [blue type][j], j in 0..s
  std::vector<ilp::Value> rooms;                     // n_j, j in 0..s
  std::vector<ColocateGroup> colocate;               // forced-same-room groups
};

/// A constraint system together with the data needed to map a satisfying
/// assignment back onto the instance.
struct Encoding {
  ilp::ConstraintSystem system;
  TypeProfile profile;
  bool exchange_colocate = false;
  bool strong = false;

  CountProfile decode(const ilp::Assignment& assignment) const;

  int var_n(int j) const;
  int var_red(int type, int j) const;   // j in 1..s
  int var_blue(int type, int j) const;  // j in 0..s-1
};

/// Feasible iff the instance admits a (strongly) core stable outcome.
Encoding encode_core(const TypeProfile& profile, bool strong);

/// Feasible iff the instance admits a (strongly) exchange stable outcome.
Encoding encode_exchange(const TypeProfile& profile, bool strong);

/// Feasible iff the instance admits an envy-free outcome (restricted to
/// same-type envy when scope is SameType).
Encoding encode_envy_free(const TypeProfile& profile, Scope scope);

/// Materializes a concrete outcome matching the count profile; colocate
/// groups each land in a single room. Deterministic: agents of a type are
/// spread over classes in ascending j, ids in order.
Outcome realize(const Instance& instance, const CountProfile& profile);

/// Dispatcher over the six encodable concepts; the returned outcome has been
/// re-checked against the corresponding verifier.
std::optional<Outcome> solve_existence(const Instance& instance, Concept notion);

}  // namespace roomdiv::fpt
