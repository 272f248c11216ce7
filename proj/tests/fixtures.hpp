#pragma once

#include "roomdiv/generators.hpp"
#include "roomdiv/marriage.hpp"
#include "roomdiv/model.hpp"
#include "roomdiv/oracle.hpp"
#include "roomdiv/rng.hpp"

namespace roomdiv::fixtures {

/// Strict order from a best-to-worst numerator list.
WeakOrder strict_order(std::vector<int> ranking, int s);

/// 8 agents, s = 4, empty core.
Instance thm2_instance();

/// 9 agents, s = 3, single-peaked and strict, no exchange stable outcome.
Instance thm7_instance();

/// 1 red + 3 blue, s = 2, no (same-type-)envy-free outcome.
Instance thm11_instance();

/// 2x2 marriage instance with no exchange stable outcome.
MarriageInstance thm18_instance();

/// Seeded random marriage instance (test corpus helper).
MarriageInstance random_marriage_instance(int s, int k, std::uint64_t seed);

/// Seeded random anonymous game over sizes 1..n; strict linear orders when
/// `strict` is set, otherwise weak orders with ties.
oracle::AnonymousGame random_anonymous_game(int n, std::uint64_t seed,
                                            bool strict = false);

}  // namespace roomdiv::fixtures
