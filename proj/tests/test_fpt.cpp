#include "doctest.h"
#include "fixtures.hpp"
#include "roomdiv/fpt.hpp"
#include "roomdiv/generators.hpp"
#include "roomdiv/oracle.hpp"
#include "roomdiv/rng.hpp"

using namespace roomdiv;
using fixtures::strict_order;

namespace {

const std::vector<Concept> kEncodableConcepts = {
    Concept::Core,         Concept::StrongCore, Concept::Exchange,
    Concept::StrongExchange, Concept::EnvyFree,   Concept::SameTypeEnvyFree};

}  // namespace

TEST_CASE("paper fixtures, encoded") {
  const Instance thm2 = fixtures::thm2_instance();
  CHECK_FALSE(fpt::solve_existence(thm2, Concept::Core));
  CHECK(fpt::solve_existence(thm2, Concept::Exchange));  // oracle-confirmed below

  const Instance thm7 = fixtures::thm7_instance();
  CHECK_FALSE(fpt::solve_existence(thm7, Concept::Exchange));

  const Instance thm11 = fixtures::thm11_instance();
  CHECK_FALSE(fpt::solve_existence(thm11, Concept::EnvyFree));
  CHECK_FALSE(fpt::solve_existence(thm11, Concept::SameTypeEnvyFree));
}

TEST_CASE("degenerate shapes are feasible") {
  SUBCASE("single color") {
    std::vector<Agent> agents;
    for (int i = 1; i <= 4; ++i)
      agents.push_back({"r" + std::to_string(i), Color::Red, strict_order({2, 1, 0}, 2)});
    const Instance inst = Instance::make(2, std::move(agents));
    for (Concept c : kEncodableConcepts) CHECK(fpt::solve_existence(inst, c));
  }
  SUBCASE("all indifferent") {
    std::vector<Agent> agents;
    for (int i = 1; i <= 2; ++i)
      agents.push_back({"r" + std::to_string(i), Color::Red, WeakOrder::indifferent(3)});
    for (int i = 1; i <= 4; ++i)
      agents.push_back({"b" + std::to_string(i), Color::Blue, WeakOrder::indifferent(3)});
    const Instance inst = Instance::make(3, std::move(agents));
    for (Concept c : kEncodableConcepts) CHECK(fpt::solve_existence(inst, c));
  }
  SUBCASE("one room") {
    std::vector<Agent> agents;
    agents.push_back({"r1", Color::Red, strict_order({2, 0, 1}, 2)});
    agents.push_back({"b1", Color::Blue, strict_order({0, 2, 1}, 2)});
    const Instance inst = Instance::make(2, std::move(agents));
    CHECK(fpt::solve_existence(inst, Concept::EnvyFree));
  }
  SUBCASE("empty instance") {
    const Instance inst = parse_instance(R"({"kind":"roommate","s":3,"agents":[]})");
    for (Concept c : kEncodableConcepts) {
      const auto outcome = fpt::solve_existence(inst, c);
      REQUIRE(outcome);
      CHECK(outcome->rooms.empty());
    }
  }
}

TEST_CASE("dichotomous instances always have a core outcome") {
  Rng rng(55);
  for (int trial = 0; trial < 25; ++trial) {
    const int s = rng.range(2, 4);
    const int k = rng.range(1, 3);
    const Instance inst = generators::random_instance(
        s, k, generators::PrefClassKind::Dichotomous, rng.range(0, s * k), rng.next());
    CHECK(fpt::solve_existence(inst, Concept::Core));
  }
}

TEST_CASE("variable count is linear in s times the type count") {
  const Instance inst = fixtures::thm2_instance();
  const auto profile = fpt::TypeProfile::from_instance(inst);
  const int s = inst.s();
  const auto types = static_cast<int>(profile.red.size() + profile.blue.size());
  for (const auto& encoding :
       {fpt::encode_core(profile, false), fpt::encode_core(profile, true),
        fpt::encode_exchange(profile, false), fpt::encode_exchange(profile, true),
        fpt::encode_envy_free(profile, Scope::Any)}) {
    CHECK(static_cast<int>(encoding.system.vars.size()) == (s + 1) + types * s);
  }
}

TEST_CASE("realize places counts and colocation groups") {
  SUBCASE("balanced rooms for the empty-core fixture") {
    const Instance inst = fixtures::thm2_instance();
    fpt::CountProfile profile;
    profile.rooms = {0, 0, 2, 0, 0};
    profile.red_counts = {{0, 0, 3, 0, 0}, {0, 0, 1, 0, 0}};  // r1-r3, r4
    profile.blue_counts = {{0, 0, 4, 0, 0}};
    const Outcome outcome = fpt::realize(inst, profile);
    REQUIRE(outcome.rooms.size() == 2);
    for (const auto& room : outcome.rooms) CHECK(theta(room, inst) == 2);
  }
  SUBCASE("colocated agents share the first room of their class") {
    std::vector<Agent> agents;
    for (int i = 1; i <= 4; ++i)
      agents.push_back({"r" + std::to_string(i), Color::Red, strict_order({2, 3, 1, 0}, 3)});
    for (int i = 1; i <= 2; ++i)
      agents.push_back({"b" + std::to_string(i), Color::Blue, strict_order({0, 1, 2, 3}, 3)});
    const Instance inst = Instance::make(3, std::move(agents));
    fpt::CountProfile profile;
    profile.rooms = {0, 0, 2, 0};
    profile.red_counts = {{0, 0, 4, 0}};
    profile.blue_counts = {{0, 0, 2, 0}};
    profile.colocate.push_back({2, {"r2", "r3", "b2"}});
    const Outcome outcome = fpt::realize(inst, profile);
    int shared = -1;
    for (std::size_t r = 0; r < outcome.rooms.size(); ++r)
      for (const auto& id : outcome.rooms[r])
        if (id == "r2" || id == "r3" || id == "b2") {
          if (shared < 0) shared = static_cast<int>(r);
          CHECK(shared == static_cast<int>(r));
        }
  }
  SUBCASE("oversized colocation groups are encoder bugs") {
    std::vector<Agent> agents;
    for (int i = 1; i <= 2; ++i)
      agents.push_back({"r" + std::to_string(i), Color::Red, WeakOrder::indifferent(2)});
    for (int i = 1; i <= 2; ++i)
      agents.push_back({"b" + std::to_string(i), Color::Blue, WeakOrder::indifferent(2)});
    const Instance inst = Instance::make(2, std::move(agents));
    fpt::CountProfile profile;
    profile.rooms = {0, 2, 0};
    profile.red_counts = {{0, 2, 0}};
    profile.blue_counts = {{0, 2, 0}};
    profile.colocate.push_back({1, {"r1", "b1"}});
    CHECK_NOTHROW(fpt::realize(inst, profile));
    // Two reds cannot share a room that holds one red.
    profile.colocate.back().ids = {"r1", "r2"};
    CHECK_THROWS_AS(fpt::realize(inst, profile), InternalError);
  }
}

TEST_CASE("existence agrees with the oracle on a small corpus") {
  Rng rng(808);
  int colocation_hits = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int s = rng.range(2, 3);
    const int k = rng.range(1, s == 2 ? 4 : 3);
    const auto kind = static_cast<generators::PrefClassKind>(rng.range(0, 3));
    const Instance inst =
        generators::random_instance(s, k, kind, rng.range(0, s * k), rng.next());
    for (Concept c : kEncodableConcepts) {
      const auto mine = fpt::solve_existence(inst, c);
      const auto truth = oracle::oracle_exists(inst, c);
      CHECK_MESSAGE(mine.has_value() == truth.has_value(),
                    to_string(c), " seed trial ", trial);
      if (mine) CHECK(is_stable(inst, *mine, c));
      if (mine && (c == Concept::Exchange || c == Concept::StrongExchange)) {
        const auto profile = fpt::TypeProfile::from_instance(inst);
        auto encoding = c == Concept::Exchange ? fpt::encode_exchange(profile, false)
                                               : fpt::encode_exchange(profile, true);
        const auto assignment = ilp::solve(encoding.system);
        REQUIRE(assignment);
        if (!encoding.decode(*assignment).colocate.empty()) ++colocation_hits;
      }
    }
  }
  // The corpus must exercise the packed-into-one-room branch at least once.
  CHECK(colocation_hits > 0);
}
