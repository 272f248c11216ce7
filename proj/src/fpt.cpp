#include "roomdiv/fpt.hpp"

#include <algorithm>
#include <map>

namespace roomdiv::fpt {

using ilp::LinearConstraint;
using ilp::Value;

namespace {

using Rel = LinearConstraint::Rel;

LinearConstraint with_constant(LinearConstraint expr, Value constant, Rel rel) {
  expr.constant = constant;
  expr.rel = rel;
  return expr;
}

}  // namespace

TypeProfile TypeProfile::from_instance(const Instance& instance) {
  TypeProfile profile;
  profile.s = instance.s();
  for (auto& group : profile_groups(instance)) {
    auto& side = group.color == Color::Red ? profile.red : profile.blue;
    side.push_back({std::move(group.order), std::move(group.ids)});
  }
  return profile;
}

int Encoding::var_n(int j) const { return j; }

int Encoding::var_red(int type, int j) const {
  return (profile.s + 1) + type * profile.s + (j - 1);
}

int Encoding::var_blue(int type, int j) const {
  return (profile.s + 1) + static_cast<int>(profile.red.size()) * profile.s +
         type * profile.s + j;
}

namespace {

// Shared scaffolding for the three encodings: variables n_j, r_{i,j} (reds of
// type i in rooms with j reds, j in 1..s) and b_{i,j} (j in 0..s-1), plus the
// assignment-validity constraints tying them together.
class Builder {
 public:
  Builder(const TypeProfile& profile, bool strong) {
    encoding_.profile = profile;
    encoding_.strong = strong;
    s_ = profile.s;
    auto& system = encoding_.system;
    const int k = total_agents(profile) / std::max(s_, 1);
    for (int j = 0; j <= s_; ++j)
      system.add_var("n_" + std::to_string(j), 0, k);
    for (std::size_t i = 0; i < profile.red.size(); ++i)
      for (int j = 1; j <= s_; ++j)
        system.add_var("r_" + std::to_string(i) + "_" + std::to_string(j), 0,
                       profile.red[i].count());
    for (std::size_t i = 0; i < profile.blue.size(); ++i)
      for (int j = 0; j <= s_ - 1; ++j)
        system.add_var("b_" + std::to_string(i) + "_" + std::to_string(j), 0,
                       profile.blue[i].count());

    // (1): every agent ends up in some room class.
    for (std::size_t i = 0; i < profile.red.size(); ++i) {
      LinearConstraint c;
      for (int j = 1; j <= s_; ++j) c.add_term(encoding_.var_red(i, j), 1);
      system.hard.push_back(with_constant(std::move(c), -profile.red[i].count(), Rel::EqZero));
    }
    for (std::size_t i = 0; i < profile.blue.size(); ++i) {
      LinearConstraint c;
      for (int j = 0; j <= s_ - 1; ++j) c.add_term(encoding_.var_blue(i, j), 1);
      system.hard.push_back(with_constant(std::move(c), -profile.blue[i].count(), Rel::EqZero));
    }
    // (2): class populations match the room counts.
    for (int j = 1; j <= s_; ++j) {
      LinearConstraint c;
      for (std::size_t i = 0; i < profile.red.size(); ++i)
        c.add_term(encoding_.var_red(i, j), 1);
      c.add_term(encoding_.var_n(j), -j);
      system.hard.push_back(with_constant(std::move(c), 0, Rel::EqZero));
    }
    for (int j = 0; j <= s_ - 1; ++j) {
      LinearConstraint c;
      for (std::size_t i = 0; i < profile.blue.size(); ++i)
        c.add_term(encoding_.var_blue(i, j), 1);
      c.add_term(encoding_.var_n(j), -(s_ - j));
      system.hard.push_back(with_constant(std::move(c), 0, Rel::EqZero));
    }
    // Implied room total; sharpens propagation.
    LinearConstraint total;
    for (int j = 0; j <= s_; ++j) total.add_term(encoding_.var_n(j), 1);
    system.hard.push_back(with_constant(std::move(total), -k, Rel::EqZero));
  }

  static int total_agents(const TypeProfile& profile) {
    int n = 0;
    for (const auto& t : profile.red) n += t.count();
    for (const auto& t : profile.blue) n += t.count();
    return n;
  }

  const TypeProfile& profile() const { return encoding_.profile; }
  int s() const { return s_; }

  // q^R(j): red agents strictly preferring class j to their own class.
  LinearConstraint red_wanting(int j, bool weakly) const {
    LinearConstraint expr;
    for (std::size_t i = 0; i < profile().red.size(); ++i)
      for (int ell = 1; ell <= s_; ++ell)
        if (prefers(profile().red[i].order, j, ell, weakly))
          expr.add_term(encoding_.var_red(i, ell), 1);
    return expr;
  }

  LinearConstraint blue_wanting(int j, bool weakly) const {
    LinearConstraint expr;
    for (std::size_t i = 0; i < profile().blue.size(); ++i)
      for (int ell = 0; ell <= s_ - 1; ++ell)
        if (prefers(profile().blue[i].order, j, ell, weakly))
          expr.add_term(encoding_.var_blue(i, ell), 1);
    return expr;
  }

  // c^R(j,k): red agents in class j preferring class k.
  LinearConstraint red_moving(int j, int k, bool weakly) const {
    LinearConstraint expr;
    for (std::size_t i = 0; i < profile().red.size(); ++i)
      if (prefers(profile().red[i].order, k, j, weakly))
        expr.add_term(encoding_.var_red(i, j), 1);
    return expr;
  }

  LinearConstraint blue_moving(int j, int k, bool weakly) const {
    LinearConstraint expr;
    for (std::size_t i = 0; i < profile().blue.size(); ++i)
      if (prefers(profile().blue[i].order, k, j, weakly))
        expr.add_term(encoding_.var_blue(i, j), 1);
    return expr;
  }

  static bool prefers(const WeakOrder& order, int a, int b, bool weakly) {
    return weakly ? weakly_prefers(order, a, b) : strictly_prefers(order, a, b);
  }

  // Adds a disjunction; single-branch groups become hard constraints.
  void add_group(std::vector<std::vector<LinearConstraint>> branches) {
    auto& system = encoding_.system;
    if (branches.size() == 1) {
      for (auto& c : branches.front()) system.hard.push_back(std::move(c));
      return;
    }
    system.disjunctions.push_back({std::move(branches)});
  }

  Encoding take() && { return std::move(encoding_); }

  Encoding encoding_;
  int s_ = 0;
};

LinearConstraint eq_zero(LinearConstraint expr) {
  return with_constant(std::move(expr), 0, Rel::EqZero);
}

LinearConstraint at_most(LinearConstraint expr, Value bound) {
  return with_constant(std::move(expr), -bound, Rel::LeqZero);
}

}  // namespace

Encoding encode_core(const TypeProfile& profile, bool strong) {
  Builder builder(profile, strong);
  const int s = builder.s();
  for (int j = 0; j <= s; ++j) {
    std::vector<std::vector<LinearConstraint>> branches;
    // No blocking coalition with j reds: fewer than j willing reds, or fewer
    // than s-j willing blues, or (strong mode) nobody willing strictly.
    if (j >= 1) branches.push_back({at_most(builder.red_wanting(j, strong), j - 1)});
    if (j <= s - 1)
      branches.push_back({at_most(builder.blue_wanting(j, strong), s - j - 1)});
    if (strong) {
      // The strict member must belong to the coalition: all blue at j=0,
      // all red at j=s.
      std::vector<LinearConstraint> none_strict;
      if (j >= 1) none_strict.push_back(eq_zero(builder.red_wanting(j, false)));
      if (j <= s - 1) none_strict.push_back(eq_zero(builder.blue_wanting(j, false)));
      branches.push_back(std::move(none_strict));
    }
    builder.add_group(std::move(branches));
  }
  return std::move(builder).take();
}

Encoding encode_exchange(const TypeProfile& profile, bool strong) {
  Builder builder(profile, strong);
  builder.encoding_.exchange_colocate = true;
  const int s = builder.s();

  auto pair_group = [&](LinearConstraint a, LinearConstraint b) {
    if (a.terms.empty() || b.terms.empty()) return;  // trivially satisfied
    builder.add_group({{eq_zero(std::move(a))}, {eq_zero(std::move(b))}});
  };

  // Different-type swaps, j != k-1: willing partners are always in different
  // rooms, so none may coexist.
  for (int j = 1; j <= s; ++j)
    for (int k = 1; k <= s; ++k) {
      if (j == k - 1) continue;
      pair_group(builder.red_moving(j, k, false), builder.blue_moving(k - 1, j - 1, strong));
      if (strong)
        pair_group(builder.red_moving(j, k, true), builder.blue_moving(k - 1, j - 1, false));
    }

  // j = k-1: willing partners share the class, so they may all be packed
  // into one room instead.
  for (int j = 1; j <= s - 1; ++j) {
    LinearConstraint red_strict = builder.red_moving(j, j + 1, false);
    LinearConstraint blue_strict = builder.blue_moving(j, j - 1, false);
    if (red_strict.terms.empty() && blue_strict.terms.empty()) continue;
    if (!strong) {
      if (red_strict.terms.empty() || blue_strict.terms.empty()) continue;
      builder.add_group({{eq_zero(red_strict)},
                         {eq_zero(blue_strict)},
                         {at_most(red_strict, j), at_most(blue_strict, s - j)}});
      continue;
    }
    LinearConstraint red_weak = builder.red_moving(j, j + 1, true);
    LinearConstraint blue_weak = builder.blue_moving(j, j - 1, true);
    // One strict side forces every weakly willing partner into its room.
    builder.add_group({{eq_zero(red_strict), eq_zero(blue_strict)},
                       {eq_zero(red_strict), at_most(red_weak, j), at_most(blue_strict, s - j)},
                       {eq_zero(blue_strict), at_most(red_strict, j), at_most(blue_weak, s - j)},
                       {at_most(red_weak, j), at_most(blue_weak, s - j)}});
  }

  // Same-type swaps across classes.
  for (int j = 1; j <= s; ++j)
    for (int k = j + 1; k <= s; ++k) {
      pair_group(builder.red_moving(j, k, false), builder.red_moving(k, j, strong));
      if (strong)
        pair_group(builder.red_moving(j, k, true), builder.red_moving(k, j, false));
    }
  for (int j = 0; j <= s - 1; ++j)
    for (int k = j + 1; k <= s - 1; ++k) {
      pair_group(builder.blue_moving(j, k, false), builder.blue_moving(k, j, strong));
      if (strong)
        pair_group(builder.blue_moving(j, k, true), builder.blue_moving(k, j, false));
    }
  return std::move(builder).take();
}

Encoding encode_envy_free(const TypeProfile& profile, Scope scope) {
  Builder builder(profile, false);
  const int s = builder.s();

  auto versus_rooms = [&](LinearConstraint movers, int room_class, Value room_cap) {
    if (movers.terms.empty()) return;
    LinearConstraint rooms;
    rooms.add_term(builder.encoding_.var_n(room_class), 1);
    builder.add_group(
        {{eq_zero(std::move(movers))}, {at_most(std::move(rooms), room_cap)}});
  };

  for (int j = 1; j <= s; ++j)
    for (int k = 1; k <= s; ++k) {
      if (j != k)  // (3): red envies red in a class-k room
        versus_rooms(builder.red_moving(j, k, false), k, 0);
      if (scope == Scope::Any) {
        // (4): red envies blue; taking her place turns a class k-1 room into
        // class k. Own room excluded, except when it is the only one.
        if (j != k - 1)
          versus_rooms(builder.red_moving(j, k, false), k - 1, 0);
        else
          versus_rooms(builder.red_moving(j, j + 1, false), j, 1);
      }
    }
  for (int j = 0; j <= s - 1; ++j)
    for (int k = 0; k <= s - 1; ++k) {
      if (j != k)  // (5)
        versus_rooms(builder.blue_moving(j, k, false), k, 0);
      if (scope == Scope::Any) {
        if (j != k + 1)  // (6)
          versus_rooms(builder.blue_moving(j, k, false), k + 1, 0);
        else
          versus_rooms(builder.blue_moving(j, j - 1, false), j, 1);
      }
    }
  return std::move(builder).take();
}

namespace {

// Ids of the agents of `type` that realize() places into class j, given the
// per-class counts for that type.
std::vector<std::string> class_slice(const AgentType& type,
                                     const std::vector<Value>& counts, int j) {
  std::size_t offset = 0;
  for (int ell = 0; ell < j; ++ell) offset += static_cast<std::size_t>(counts[ell]);
  const auto count = static_cast<std::size_t>(counts[j]);
  if (offset + count > type.ids.size())
    throw InternalError("class counts exceed the type's population");
  return {type.ids.begin() + offset, type.ids.begin() + offset + count};
}

}  // namespace

CountProfile Encoding::decode(const ilp::Assignment& assignment) const {
  const int s = profile.s;
  CountProfile counts;
  counts.rooms.resize(s + 1);
  for (int j = 0; j <= s; ++j) counts.rooms[j] = assignment.values[var_n(j)];
  counts.red_counts.assign(profile.red.size(), std::vector<Value>(s + 1, 0));
  for (std::size_t i = 0; i < profile.red.size(); ++i)
    for (int j = 1; j <= s; ++j)
      counts.red_counts[i][j] = assignment.values[var_red(i, j)];
  counts.blue_counts.assign(profile.blue.size(), std::vector<Value>(s + 1, 0));
  for (std::size_t i = 0; i < profile.blue.size(); ++i)
    for (int j = 0; j <= s - 1; ++j)
      counts.blue_counts[i][j] = assignment.values[var_blue(i, j)];

  if (!exchange_colocate) return counts;

  // Classes where both a red and a (weakly, in strong mode) willing blue
  // remain must keep all willing agents in one room.
  for (int j = 1; j <= s - 1; ++j) {
    Value red_strict = 0, blue_strict = 0;
    for (std::size_t i = 0; i < profile.red.size(); ++i)
      if (strictly_prefers(profile.red[i].order, j + 1, j))
        red_strict += counts.red_counts[i][j];
    for (std::size_t i = 0; i < profile.blue.size(); ++i)
      if (strictly_prefers(profile.blue[i].order, j - 1, j))
        blue_strict += counts.blue_counts[i][j];
    if (red_strict == 0 && blue_strict == 0) continue;
    if (!strong && (red_strict == 0 || blue_strict == 0)) continue;

    const bool red_weakly = strong && blue_strict > 0;
    const bool blue_weakly = strong && red_strict > 0;
    ColocateGroup group{j, {}};
    for (std::size_t i = 0; i < profile.red.size(); ++i) {
      if (!Builder::prefers(profile.red[i].order, j + 1, j, red_weakly)) continue;
      auto ids = class_slice(profile.red[i], counts.red_counts[i], j);
      group.ids.insert(group.ids.end(), ids.begin(), ids.end());
    }
    for (std::size_t i = 0; i < profile.blue.size(); ++i) {
      if (!Builder::prefers(profile.blue[i].order, j - 1, j, blue_weakly)) continue;
      auto ids = class_slice(profile.blue[i], counts.blue_counts[i], j);
      group.ids.insert(group.ids.end(), ids.begin(), ids.end());
    }
    if (!group.ids.empty()) counts.colocate.push_back(std::move(group));
  }
  return counts;
}

Outcome realize(const Instance& instance, const CountProfile& profile) {
  const int s = instance.s();
  const TypeProfile types = TypeProfile::from_instance(instance);
  if (types.red.size() != profile.red_counts.size() ||
      types.blue.size() != profile.blue_counts.size())
    throw InternalError("count profile does not match the instance's type profile");

  // Per class: agents in type order, ids ascending within a type.
  std::vector<std::vector<std::string>> reds_of(s + 1), blues_of(s + 1);
  for (std::size_t i = 0; i < types.red.size(); ++i) {
    Value total = 0;
    for (int j = 0; j <= s; ++j) {
      auto ids = class_slice(types.red[i], profile.red_counts[i], j);
      total += static_cast<Value>(ids.size());
      reds_of[j].insert(reds_of[j].end(), ids.begin(), ids.end());
    }
    if (total != types.red[i].count())
      throw InternalError("red type population does not match its class counts");
  }
  for (std::size_t i = 0; i < types.blue.size(); ++i) {
    Value total = 0;
    for (int j = 0; j <= s; ++j) {
      auto ids = class_slice(types.blue[i], profile.blue_counts[i], j);
      total += static_cast<Value>(ids.size());
      blues_of[j].insert(blues_of[j].end(), ids.begin(), ids.end());
    }
    if (total != types.blue[i].count())
      throw InternalError("blue type population does not match its class counts");
  }

  Outcome outcome;
  for (int j = 0; j <= s; ++j) {
    auto& reds = reds_of[j];
    auto& blues = blues_of[j];
    if (static_cast<Value>(reds.size()) != static_cast<Value>(j) * profile.rooms[j] ||
        static_cast<Value>(blues.size()) !=
            static_cast<Value>(s - j) * profile.rooms[j])
      throw InternalError("class population does not match room counts");
    // Colocated agents go to the first room of their class; groups sharing a
    // class must fit into that room together.
    std::vector<std::string> first_reds, first_blues;
    for (const auto& group : profile.colocate) {
      if (group.numerator != j) continue;
      for (const auto& id : group.ids) {
        auto& pool = instance.agent(id).color == Color::Red ? reds : blues;
        auto it = std::find(pool.begin(), pool.end(), id);
        if (it == pool.end())
          throw InternalError("colocated agent " + id + " is not in class " +
                              std::to_string(j));
        pool.erase(it);
        (instance.agent(id).color == Color::Red ? first_reds : first_blues)
            .push_back(id);
      }
    }
    if (static_cast<int>(first_reds.size()) > j ||
        static_cast<int>(first_blues.size()) > s - j)
      throw InternalError("colocate group does not fit in one room");
    reds.insert(reds.begin(), first_reds.begin(), first_reds.end());
    blues.insert(blues.begin(), first_blues.begin(), first_blues.end());
    for (Value t = 0; t < profile.rooms[j]; ++t) {
      std::vector<std::string> room;
      room.insert(room.end(), reds.begin() + t * j, reds.begin() + (t + 1) * j);
      room.insert(room.end(), blues.begin() + t * (s - j),
                  blues.begin() + (t + 1) * (s - j));
      outcome.rooms.push_back(std::move(room));
    }
  }
  validate_outcome(instance, outcome);
  return outcome;
}

std::optional<Outcome> solve_existence(const Instance& instance, Concept notion) {
  const TypeProfile profile = TypeProfile::from_instance(instance);
  Encoding encoding = [&] {
    switch (notion) {
      case Concept::Core: return encode_core(profile, false);
      case Concept::StrongCore: return encode_core(profile, true);
      case Concept::Exchange: return encode_exchange(profile, false);
      case Concept::StrongExchange: return encode_exchange(profile, true);
      case Concept::EnvyFree: return encode_envy_free(profile, Scope::Any);
      case Concept::SameTypeEnvyFree: return encode_envy_free(profile, Scope::SameType);
      default:
        throw UnsupportedError("concept " + std::string(to_string(notion)) +
                               " has no room-size encoding");
    }
  }();
  auto assignment = ilp::solve(encoding.system);
  if (!assignment) return std::nullopt;
  Outcome outcome = realize(instance, encoding.decode(*assignment));
  if (!is_stable(instance, outcome, notion))
    throw InternalError("realized outcome fails the " + std::string(to_string(notion)) +
                        " check");
  return outcome;
}

}  // namespace roomdiv::fpt
