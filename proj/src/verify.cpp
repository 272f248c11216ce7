#include "roomdiv/verify.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace roomdiv {

namespace {

// Positions every agent in her room and precomputes room numerators.
struct OutcomeView {
  std::vector<int> room_of;     // by agent index
  std::vector<int> numerators;  // by room index
  std::vector<std::string> sorted_ids;

  OutcomeView(const Instance& instance, const Outcome& outcome) {
    validate_outcome(instance, outcome);
    room_of.assign(instance.n(), -1);
    for (std::size_t r = 0; r < outcome.rooms.size(); ++r) {
      int reds = 0;
      for (const auto& id : outcome.rooms[r]) {
        const int idx = instance.agent_index(id);
        room_of[idx] = static_cast<int>(r);
        if (instance.agents()[idx].color == Color::Red) ++reds;
      }
      numerators.push_back(reds);
    }
    sorted_ids.reserve(instance.n());
    for (const Agent& a : instance.agents()) sorted_ids.push_back(a.id);
    std::sort(sorted_ids.begin(), sorted_ids.end());
  }

  int numerator_of(const Instance& instance, std::string_view id) const {
    return numerators[room_of[instance.agent_index(id)]];
  }
};

std::vector<std::string> all_member_ids(const BlockingWitness& w) {
  std::vector<std::string> ids = w.red_members;
  ids.insert(ids.end(), w.blue_members.begin(), w.blue_members.end());
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Smallest selection of `count` ids from `weak` (sorted) containing at least
// one member of `strict` (subset of weak, sorted), or nullopt.
std::optional<std::vector<std::string>> pick_with_strict(
    const std::vector<std::string>& weak, const std::vector<std::string>& strict,
    int count) {
  if (static_cast<int>(weak.size()) < count || strict.empty() || count == 0)
    return std::nullopt;
  std::vector<std::string> naive(weak.begin(), weak.begin() + count);
  for (const auto& id : naive)
    if (std::binary_search(strict.begin(), strict.end(), id)) return naive;
  // No strict member among the smallest `count`; all strict ids are larger,
  // so the best set is the smallest count-1 ids plus the smallest strict id.
  std::vector<std::string> forced(weak.begin(), weak.begin() + (count - 1));
  forced.push_back(strict.front());
  return forced;
}

std::vector<std::string> pick_smallest(const std::vector<std::string>& pool, int count) {
  return {pool.begin(), pool.begin() + count};
}

}  // namespace

std::optional<BlockingWitness> find_blocking(const Instance& instance,
                                             const Outcome& outcome, bool strong) {
  const OutcomeView view(instance, outcome);
  const int s = instance.s();

  for (int j = 0; j <= s; ++j) {
    std::array<std::vector<std::string>, 2> strict;  // by color
    std::array<std::vector<std::string>, 2> weak;
    for (const auto& id : view.sorted_ids) {
      const Agent& a = instance.agent(id);
      const int cur = view.numerators[view.room_of[instance.agent_index(id)]];
      const auto rel = compare(a.pref, j, cur);
      const auto c = static_cast<std::size_t>(a.color);
      if (rel == Preference::StrictlyBetter) strict[c].push_back(id);
      if (rel != Preference::StrictlyWorse) weak[c].push_back(id);
    }
    const auto& strict_r = strict[static_cast<std::size_t>(Color::Red)];
    const auto& strict_b = strict[static_cast<std::size_t>(Color::Blue)];

    if (!strong) {
      if (static_cast<int>(strict_r.size()) >= j &&
          static_cast<int>(strict_b.size()) >= s - j)
        return BlockingWitness{j, pick_smallest(strict_r, j), pick_smallest(strict_b, s - j),
                               false};
      continue;
    }

    const auto& weak_r = weak[static_cast<std::size_t>(Color::Red)];
    const auto& weak_b = weak[static_cast<std::size_t>(Color::Blue)];
    if (static_cast<int>(weak_r.size()) < j || static_cast<int>(weak_b.size()) < s - j)
      continue;
    // The strict participant must be a coalition member, so at j=0 it has to
    // be blue and at j=s it has to be red.
    std::optional<BlockingWitness> best;
    auto consider = [&](std::vector<std::string> reds, std::vector<std::string> blues) {
      BlockingWitness cand{j, std::move(reds), std::move(blues), true};
      if (!best || all_member_ids(cand) < all_member_ids(*best)) best = std::move(cand);
    };
    const std::vector<std::string> naive_r = pick_smallest(weak_r, j);
    const std::vector<std::string> naive_b = pick_smallest(weak_b, s - j);
    auto has_strict = [](const std::vector<std::string>& sel,
                         const std::vector<std::string>& str) {
      for (const auto& id : sel)
        if (std::binary_search(str.begin(), str.end(), id)) return true;
      return false;
    };
    const bool red_allowed = j > 0;
    const bool blue_allowed = j < s;
    if ((red_allowed && has_strict(naive_r, strict_r)) ||
        (blue_allowed && has_strict(naive_b, strict_b))) {
      consider(naive_r, naive_b);
    } else {
      if (red_allowed)
        if (auto reds = pick_with_strict(weak_r, strict_r, j)) consider(*reds, naive_b);
      if (blue_allowed)
        if (auto blues = pick_with_strict(weak_b, strict_b, s - j))
          consider(naive_r, *blues);
    }
    if (best) return best;
  }
  return std::nullopt;
}

namespace {

// Numerator of b's room once a takes b's place.
int post_swap_numerator(Color a, Color b, int room_b_numerator) {
  if (a == b) return room_b_numerator;
  return a == Color::Red ? room_b_numerator + 1 : room_b_numerator - 1;
}

}  // namespace

std::optional<SwapWitness> find_exchange_deviation(const Instance& instance,
                                                   const Outcome& outcome, Scope scope,
                                                   bool strong) {
  const OutcomeView view(instance, outcome);
  for (const auto& ida : view.sorted_ids) {
    const Agent& a = instance.agent(ida);
    const int room_a = view.room_of[instance.agent_index(ida)];
    for (const auto& idb : view.sorted_ids) {
      if (ida == idb) continue;
      const Agent& b = instance.agent(idb);
      const int room_b = view.room_of[instance.agent_index(idb)];
      if (room_a == room_b) continue;
      if (scope == Scope::SameType && a.color != b.color) continue;
      const int a_new = post_swap_numerator(a.color, b.color, view.numerators[room_b]);
      const int b_new = post_swap_numerator(b.color, a.color, view.numerators[room_a]);
      if (!strictly_prefers(a.pref, a_new, view.numerators[room_a])) continue;
      const bool b_strict = strictly_prefers(b.pref, b_new, view.numerators[room_b]);
      const bool b_weak = weakly_prefers(b.pref, b_new, view.numerators[room_b]);
      if (!(strong ? b_weak : b_strict)) continue;
      return SwapWitness{ida, idb,
                         a.color == b.color ? SwapWitness::Kind::SameType
                                            : SwapWitness::Kind::DifferentType,
                         !b_strict};
    }
  }
  return std::nullopt;
}

std::optional<EnvyWitness> find_envy(const Instance& instance, const Outcome& outcome,
                                     Scope scope) {
  const OutcomeView view(instance, outcome);
  for (const auto& envier : view.sorted_ids) {
    const Agent& a = instance.agent(envier);
    const int room_a = view.room_of[instance.agent_index(envier)];
    for (const auto& envied : view.sorted_ids) {
      if (envier == envied) continue;
      const Agent& b = instance.agent(envied);
      const int room_b = view.room_of[instance.agent_index(envied)];
      if (room_a == room_b) continue;
      if (scope == Scope::SameType && a.color != b.color) continue;
      const int taken = post_swap_numerator(a.color, b.color, view.numerators[room_b]);
      if (strictly_prefers(a.pref, taken, view.numerators[room_a]))
        return EnvyWitness{envier, envied};
    }
  }
  return std::nullopt;
}

namespace {

struct ProfilePlan {
  std::vector<int> old_ranks;          // sorted ascending
  std::vector<std::string> member_ids; // matching order of old_ranks
};

}  // namespace

std::optional<Outcome> find_pareto_improvement(const Instance& instance,
                                               const Outcome& outcome,
                                               std::uint64_t budget) {
  const OutcomeView view(instance, outcome);
  const auto profiles = profile_groups(instance);

  // Per profile, members sorted by (current rank, id): a candidate class of
  // outcomes admits an improving assignment iff slot ranks, sorted, are
  // pointwise <= these.
  std::vector<ProfilePlan> plans;
  for (const auto& p : profiles) {
    std::vector<std::pair<int, std::string>> members;
    for (const auto& id : p.ids) {
      const int cur = view.numerators[view.room_of[instance.agent_index(id)]];
      members.emplace_back(p.order.rank(cur), id);
    }
    std::sort(members.begin(), members.end());
    ProfilePlan plan;
    for (auto& [rank, id] : members) {
      plan.old_ranks.push_back(rank);
      plan.member_ids.push_back(std::move(id));
    }
    plans.push_back(std::move(plan));
  }

  std::optional<Outcome> improvement;
  for_each_canonical_outcome(instance, budget, [&](const Outcome& candidate) {
    // Slot ranks per profile: (rank of candidate room numerator, room index).
    std::vector<std::vector<std::pair<int, int>>> slots(profiles.size());
    std::vector<int> reds_of_room(candidate.rooms.size(), 0);
    for (std::size_t r = 0; r < candidate.rooms.size(); ++r)
      reds_of_room[r] = theta(candidate.rooms[r], instance);
    for (std::size_t r = 0; r < candidate.rooms.size(); ++r) {
      for (const auto& id : candidate.rooms[r]) {
        const Agent& a = instance.agent(id);
        for (std::size_t p = 0; p < profiles.size(); ++p) {
          if (profiles[p].color == a.color && profiles[p].order == a.pref) {
            slots[p].emplace_back(profiles[p].order.rank(reds_of_room[r]),
                                  static_cast<int>(r));
            break;
          }
        }
      }
    }
    bool weakly_better = true;
    bool strictly_somewhere = false;
    for (std::size_t p = 0; p < profiles.size() && weakly_better; ++p) {
      std::sort(slots[p].begin(), slots[p].end());
      for (std::size_t i = 0; i < slots[p].size(); ++i) {
        if (slots[p][i].first > plans[p].old_ranks[i]) {
          weakly_better = false;
          break;
        }
        if (slots[p][i].first < plans[p].old_ranks[i]) strictly_somewhere = true;
      }
    }
    if (!weakly_better || !strictly_somewhere) return true;
    // Realize the improving assignment: i-th member (by old rank) takes the
    // i-th slot (by new rank).
    Outcome result;
    result.rooms.assign(candidate.rooms.size(), {});
    for (std::size_t p = 0; p < profiles.size(); ++p)
      for (std::size_t i = 0; i < slots[p].size(); ++i)
        result.rooms[slots[p][i].second].push_back(plans[p].member_ids[i]);
    for (auto& room : result.rooms) std::sort(room.begin(), room.end());
    improvement = std::move(result);
    return false;
  });
  return improvement;
}

std::string_view to_string(Concept c) {
  switch (c) {
    case Concept::Core: return "core";
    case Concept::StrongCore: return "strong-core";
    case Concept::Exchange: return "exchange";
    case Concept::StrongExchange: return "strong-exchange";
    case Concept::SameTypeExchange: return "same-type-exchange";
    case Concept::StrongSameTypeExchange: return "strong-same-type-exchange";
    case Concept::EnvyFree: return "envy";
    case Concept::SameTypeEnvyFree: return "same-type-envy";
    case Concept::Pareto: return "pareto";
  }
  return "?";
}

std::optional<Concept> concept_from_string(std::string_view name) {
  static const std::map<std::string_view, Concept> table = {
      {"core", Concept::Core},
      {"strong-core", Concept::StrongCore},
      {"exchange", Concept::Exchange},
      {"strong-exchange", Concept::StrongExchange},
      {"same-type-exchange", Concept::SameTypeExchange},
      {"strong-same-type-exchange", Concept::StrongSameTypeExchange},
      {"envy", Concept::EnvyFree},
      {"same-type-envy", Concept::SameTypeEnvyFree},
      {"pareto", Concept::Pareto},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

bool is_stable(const Instance& instance, const Outcome& outcome, Concept c,
               std::uint64_t budget) {
  switch (c) {
    case Concept::Core: return !find_blocking(instance, outcome, false);
    case Concept::StrongCore: return !find_blocking(instance, outcome, true);
    case Concept::Exchange:
      return !find_exchange_deviation(instance, outcome, Scope::Any, false);
    case Concept::StrongExchange:
      return !find_exchange_deviation(instance, outcome, Scope::Any, true);
    case Concept::SameTypeExchange:
      return !find_exchange_deviation(instance, outcome, Scope::SameType, false);
    case Concept::StrongSameTypeExchange:
      return !find_exchange_deviation(instance, outcome, Scope::SameType, true);
    case Concept::EnvyFree: return !find_envy(instance, outcome, Scope::Any);
    case Concept::SameTypeEnvyFree:
      return !find_envy(instance, outcome, Scope::SameType);
    case Concept::Pareto: return !find_pareto_improvement(instance, outcome, budget);
  }
  throw UnsupportedError("unknown concept");
}

}  // namespace roomdiv
