#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "roomdiv/enumerate.hpp"
#include "roomdiv/generators.hpp"
#include "roomdiv/rng.hpp"

using namespace roomdiv;

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Instance distinct_instance(int s, int n) {
  // Pairwise distinct (color, order) profiles make every agent its own
  // profile group.
  std::vector<std::vector<int>> base;
  for (int v = 0; v <= s; ++v) base.push_back({v});
  std::vector<std::vector<std::vector<int>>> orders;
  do {
    orders.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  std::vector<Agent> agents;
  for (int i = 0; i < n; ++i) {
    const bool red = i < static_cast<int>(orders.size());
    agents.push_back(
        {"a" + std::to_string(100 + i), red ? Color::Red : Color::Blue,
         WeakOrder::from_classes(orders[i % orders.size()], s)});
  }
  const auto groups = profile_groups(Instance::make(s, agents));
  REQUIRE(groups.size() == static_cast<std::size_t>(n));
  return Instance::make(s, std::move(agents));
}

}  // namespace

TEST_CASE("canonical outcome counts") {
  CHECK(count_canonical_outcomes(distinct_instance(2, 4), 1000) == 3);
  // Numerator splits (4,0), (2,2) and (3,1) with the odd red agent on either
  // side of the latter.
  CHECK(count_canonical_outcomes(fixtures::thm2_instance(), 1000) == 4);
  CHECK(count_canonical_outcomes(distinct_instance(4, 4), 1000) == 1);

  // All-distinct agents: the canonical count equals the raw multinomial.
  for (const auto& [s, n] : std::vector<std::pair<int, int>>{{2, 6}, {2, 8}, {3, 6}, {4, 8}}) {
    const int k = n / s;
    std::uint64_t expected = factorial(n);
    for (int i = 0; i < k; ++i) expected /= factorial(s);
    expected /= factorial(k);
    CHECK(count_canonical_outcomes(distinct_instance(s, n), 1'000'000) == expected);
  }
}

TEST_CASE("enumeration yields valid, distinct outcomes in a stable order") {
  const Instance inst = fixtures::thm7_instance();
  std::vector<Outcome> first_run, second_run;
  for_each_canonical_outcome(inst, 1'000'000, [&](const Outcome& o) {
    first_run.push_back(o);
    return true;
  });
  for_each_canonical_outcome(inst, 1'000'000, [&](const Outcome& o) {
    second_run.push_back(o);
    return true;
  });
  REQUIRE(first_run.size() == second_run.size());
  std::set<std::vector<std::vector<std::string>>> seen;
  for (std::size_t i = 0; i < first_run.size(); ++i) {
    CHECK_NOTHROW(validate_outcome(inst, first_run[i]));
    CHECK(normalized(first_run[i]).rooms == normalized(second_run[i]).rooms);
    CHECK(seen.insert(normalized(first_run[i]).rooms).second);
  }
}

TEST_CASE("empty instance has exactly one outcome") {
  const Instance empty = parse_instance(R"({"kind":"roommate","s":2,"agents":[]})");
  CHECK(count_canonical_outcomes(empty, 10) == 1);
}

namespace {

// Independent canonical count: enumerate raw partitions recursively and
// collapse them by per-room profile multisets.
std::uint64_t raw_canonical_count(const Instance& inst) {
  const auto groups = profile_groups(inst);
  std::vector<int> profile_of(inst.n());
  for (std::size_t p = 0; p < groups.size(); ++p)
    for (const auto& id : groups[p].ids) profile_of[inst.agent_index(id)] = static_cast<int>(p);

  std::set<std::vector<std::vector<int>>> seen;
  std::vector<int> room_of(inst.n(), -1);
  auto signature = [&]() {
    std::vector<std::vector<int>> rooms(inst.k());
    for (int i = 0; i < inst.n(); ++i) rooms[room_of[i]].push_back(profile_of[i]);
    for (auto& room : rooms) std::sort(room.begin(), room.end());
    std::sort(rooms.begin(), rooms.end());
    return rooms;
  };
  std::vector<int> fill(inst.k(), 0);
  auto recurse = [&](auto&& self, int agent) -> void {
    if (agent == inst.n()) {
      seen.insert(signature());
      return;
    }
    for (int r = 0; r < inst.k(); ++r) {
      if (fill[r] == inst.s()) continue;
      room_of[agent] = r;
      ++fill[r];
      self(self, agent + 1);
      --fill[r];
      if (fill[r] == 0) break;  // empty rooms are interchangeable
    }
  };
  recurse(recurse, 0);
  return seen.size();
}

}  // namespace

TEST_CASE("enumeration matches raw canonicalization on mixed-profile instances") {
  Rng rng(606);
  for (int trial = 0; trial < 15; ++trial) {
    const int s = rng.range(2, 3);
    const int k = rng.range(2, 3);
    const auto kind = static_cast<generators::PrefClassKind>(rng.range(0, 3));
    const Instance inst =
        generators::random_instance(s, k, kind, rng.range(0, s * k), rng.next());
    CHECK(count_canonical_outcomes(inst, 1'000'000) == raw_canonical_count(inst));
  }
  CHECK(raw_canonical_count(fixtures::thm2_instance()) == 4);
}

TEST_CASE("budget overruns raise a typed error") {
  CHECK_THROWS_AS(count_canonical_outcomes(distinct_instance(2, 8), 3), BudgetExceeded);
  // Early-stopping visitors stay within budget.
  int seen = 0;
  for_each_canonical_outcome(distinct_instance(2, 8), 3, [&](const Outcome&) {
    ++seen;
    return seen < 2;
  });
  CHECK(seen == 2);
}
