#include "roomdiv/construct.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "roomdiv/enumerate.hpp"

namespace roomdiv {

namespace {

std::vector<std::string> sorted_ids_of_color(const Instance& instance, Color color) {
  std::vector<std::string> ids;
  for (const Agent& a : instance.agents())
    if (a.color == color) ids.push_back(a.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

Outcome solve_size_two(const Instance& instance) {
  if (instance.s() != 2)
    throw UnsupportedError("pairing algorithm requires room size 2");
  const int mixed = 1;
  const int pure_blue = 0;
  const int pure_red = 2;

  // Stars: agents weakly preferring a mixed pair, strict ones first.
  auto stars = [&](Color color, int pure) {
    std::vector<std::string> strict, indifferent;
    for (const auto& id : sorted_ids_of_color(instance, color)) {
      switch (compare(instance.agent(id).pref, mixed, pure)) {
        case Preference::StrictlyBetter: strict.push_back(id); break;
        case Preference::Indifferent: indifferent.push_back(id); break;
        case Preference::StrictlyWorse: break;
      }
    }
    strict.insert(strict.end(), indifferent.begin(), indifferent.end());
    return strict;
  };
  const std::vector<std::string> blue_star = stars(Color::Blue, pure_blue);
  const std::vector<std::string> red_star = stars(Color::Red, pure_red);
  const int m = static_cast<int>(std::min(blue_star.size(), red_star.size()));

  // Primes: everyone else, ordered prefer-pure, indifferent, prefer-mixed.
  auto primes = [&](Color color, int pure, const std::vector<std::string>& used_stars) {
    std::set<std::string> used(used_stars.begin(), used_stars.begin() + m);
    std::vector<std::string> tiers[3];
    for (const auto& id : sorted_ids_of_color(instance, color)) {
      if (used.count(id)) continue;
      switch (compare(instance.agent(id).pref, pure, mixed)) {
        case Preference::StrictlyBetter: tiers[0].push_back(id); break;
        case Preference::Indifferent: tiers[1].push_back(id); break;
        case Preference::StrictlyWorse: tiers[2].push_back(id); break;
      }
    }
    std::vector<std::string> result;
    for (auto& tier : tiers) result.insert(result.end(), tier.begin(), tier.end());
    return result;
  };
  const std::vector<std::string> blue_prime = primes(Color::Blue, pure_blue, blue_star);
  const std::vector<std::string> red_prime = primes(Color::Red, pure_red, red_star);
  const int p = static_cast<int>(blue_prime.size());
  const int q = static_cast<int>(red_prime.size());

  Outcome outcome;
  auto pair_up = [&](const std::vector<std::string>& pool, int upto) {
    for (int i = 0; i + 1 < upto; i += 2)
      outcome.rooms.push_back({pool[i], pool[i + 1]});
  };

  if (p % 2 == 0) {
    for (int i = 0; i < m; ++i) outcome.rooms.push_back({blue_star[i], red_star[i]});
    pair_up(blue_prime, p);
    pair_up(red_prime, q);
    return outcome;
  }

  // p (and hence q) odd. The last mixed pair is dissolved into two pure pairs
  // when both of its members weakly prefer pure; with no mixed pair to
  // dissolve the leftovers form one extra mixed pair.
  const bool dissolve =
      m >= 1 && weakly_prefers(instance.agent(blue_star[m - 1]).pref, pure_blue, mixed) &&
      weakly_prefers(instance.agent(red_star[m - 1]).pref, pure_red, mixed);
  if (dissolve) {
    for (int i = 0; i + 1 < m; ++i) outcome.rooms.push_back({blue_star[i], red_star[i]});
    pair_up(blue_prime, p - 1);
    pair_up(red_prime, q - 1);
    outcome.rooms.push_back({red_prime[q - 1], red_star[m - 1]});
    outcome.rooms.push_back({blue_prime[p - 1], blue_star[m - 1]});
  } else {
    for (int i = 0; i < m; ++i) outcome.rooms.push_back({blue_star[i], red_star[i]});
    pair_up(blue_prime, p - 1);
    pair_up(red_prime, q - 1);
    outcome.rooms.push_back({red_prime[q - 1], blue_prime[p - 1]});
  }
  return outcome;
}

namespace {

bool approves(const WeakOrder& order, int numerator) { return order.rank(numerator) == 0; }

Outcome dichotomous_greedy(const Instance& instance, const std::vector<int>& fraction_order) {
  const int s = instance.s();
  std::set<std::string> unassigned;
  for (const Agent& a : instance.agents()) unassigned.insert(a.id);

  Outcome outcome;
  for (int ell : fraction_order) {
    while (true) {
      std::vector<std::string> reds, blues;
      for (const auto& id : unassigned) {
        const Agent& a = instance.agent(id);
        if (!approves(a.pref, ell)) continue;
        auto& pool = a.color == Color::Red ? reds : blues;
        if (static_cast<int>(pool.size()) < (a.color == Color::Red ? ell : s - ell))
          pool.push_back(id);
      }
      if (static_cast<int>(reds.size()) < ell || static_cast<int>(blues.size()) < s - ell)
        break;
      std::vector<std::string> room = reds;
      room.insert(room.end(), blues.begin(), blues.end());
      for (const auto& id : room) unassigned.erase(id);
      outcome.rooms.push_back(std::move(room));
    }
  }
  std::vector<std::string> rest(unassigned.begin(), unassigned.end());
  for (std::size_t i = 0; i < rest.size(); i += s)
    outcome.rooms.emplace_back(rest.begin() + i, rest.begin() + i + s);
  return outcome;
}

}  // namespace

Outcome solve_dichotomous_core(const Instance& instance) {
  if (!classify(instance).dichotomous)
    throw UnsupportedError("core construction requires dichotomous preferences");
  const int s = instance.s();
  std::vector<int> ascending(s + 1);
  std::iota(ascending.begin(), ascending.end(), 0);
  Outcome outcome = dichotomous_greedy(instance, ascending);
  if (!find_blocking(instance, outcome, false)) return outcome;
  // Fallback: a single ascending pass failed (not expected); try every
  // fraction order for small s before giving up.
  if (s <= 6) {
    std::vector<int> order = ascending;
    while (std::next_permutation(order.begin(), order.end())) {
      Outcome retry = dichotomous_greedy(instance, order);
      if (!find_blocking(instance, retry, false)) return retry;
    }
  }
  throw InternalError("no fraction order yielded a core stable outcome");
}

Outcome local_search_same_type(const Instance& instance, const Outcome& start,
                               bool strong, int* swap_count) {
  validate_outcome(instance, start);
  Outcome current = start;
  const int swap_limit = instance.n() * instance.s();
  int swaps = 0;
  while (auto witness =
             find_exchange_deviation(instance, current, Scope::SameType, strong)) {
    if (swaps >= swap_limit)
      throw InternalError("same-type swap sequence exceeded n*s steps");
    for (auto& room : current.rooms)
      for (auto& id : room) {
        if (id == witness->a)
          id = witness->b;
        else if (id == witness->b)
          id = witness->a;
      }
    ++swaps;
  }
  if (swap_count != nullptr) *swap_count = swaps;
  return current;
}

std::optional<Outcome> solve_same_type_envy_free(const Instance& instance) {
  if (!classify(instance).strict)
    throw UnsupportedError("same-type-envy-free search requires strict preferences");
  const int s = instance.s();

  // Guesses in ascending bitmask order; the first accepted one wins.
  std::vector<std::vector<int>> guesses;
  for (unsigned mask = 1; mask < (1u << (s + 1)); ++mask) {
    std::vector<int> guess;
    for (int ell = 0; ell <= s; ++ell)
      if (mask & (1u << ell)) guess.push_back(ell);
    guesses.push_back(std::move(guess));
  }
  if (instance.n() == 0) return Outcome{};

  for (const auto& guess : guesses) {
    // Bucket every agent to her most preferred occurring fraction. An agent
    // can only sit in (and only envies) rooms holding her own color, so red
    // agents rank the guess without fraction 0 and blue without fraction s.
    std::map<int, std::vector<std::string>> reds, blues;
    bool ok = true;
    for (const auto& group : profile_groups(instance)) {
      std::vector<int> reachable;
      for (int ell : guess)
        if (group.color == Color::Red ? ell != 0 : ell != s) reachable.push_back(ell);
      if (reachable.empty()) {
        ok = false;  // this color cannot live anywhere under the guess
        break;
      }
      int best = reachable.front();
      for (int ell : reachable)
        if (strictly_prefers(group.order, ell, best)) best = ell;
      auto& buckets = group.color == Color::Red ? reds : blues;
      auto& bucket = buckets[best];
      bucket.insert(bucket.end(), group.ids.begin(), group.ids.end());
    }
    if (!ok) continue;
    ok = true;
    std::map<int, int> rooms_per_fraction;
    for (int ell : guess) {
      const int red_count = static_cast<int>(reds[ell].size());
      const int blue_count = static_cast<int>(blues[ell].size());
      int t = -1;
      if (ell == 0)
        t = red_count == 0 && blue_count % s == 0 ? blue_count / s : -1;
      else if (ell == s)
        t = blue_count == 0 && red_count % s == 0 ? red_count / s : -1;
      else if (red_count % ell == 0 && blue_count == (red_count / ell) * (s - ell))
        t = red_count / ell;
      if (t < 1) {  // every guessed fraction must actually occur
        ok = false;
        break;
      }
      rooms_per_fraction[ell] = t;
    }
    if (!ok) continue;

    Outcome outcome;
    for (int ell : guess) {
      auto& red_pool = reds[ell];
      auto& blue_pool = blues[ell];
      std::sort(red_pool.begin(), red_pool.end());
      std::sort(blue_pool.begin(), blue_pool.end());
      std::size_t ri = 0, bi = 0;
      for (int t = 0; t < rooms_per_fraction[ell]; ++t) {
        std::vector<std::string> room;
        for (int i = 0; i < ell; ++i) room.push_back(red_pool[ri++]);
        for (int i = 0; i < s - ell; ++i) room.push_back(blue_pool[bi++]);
        outcome.rooms.push_back(std::move(room));
      }
    }
    return outcome;
  }
  return std::nullopt;
}

Outcome pareto_optimal_outcome(const Instance& instance, std::uint64_t budget) {
  Outcome current;
  for_each_canonical_outcome(instance, budget, [&](const Outcome& first) {
    current = first;
    return false;
  });
  const int step_limit = instance.n() * instance.s() + 1;
  for (int step = 0; step < step_limit; ++step) {
    auto better = find_pareto_improvement(instance, current, budget);
    if (!better) return current;
    current = std::move(*better);
  }
  throw InternalError("improvement chain exceeded n*s steps");
}

}  // namespace roomdiv
