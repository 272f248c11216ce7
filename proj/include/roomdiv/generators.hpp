#pragma once

#include <array>

#include "roomdiv/model.hpp"
#include "roomdiv/oracle.hpp"

namespace roomdiv::generators {

/// Exact cover by 3-sets: ground set [m] (m divisible by 3) and a collection
/// of 3-element subsets.
struct X3CInstance {
  int m = 0;
  std::vector<std::array<int, 3>> sets;

  static X3CInstance make(int m, std::vector<std::array<int, 3>> sets);
};

X3CInstance parse_x3c(const std::string& text);
std::string serialize_x3c(const X3CInstance& x3c);

/// Core-preserving reduction from an anonymous game: one red agent per game
/// agent and s^2 blue agents per fraction, with s = n.
Instance reduce_anon_core(const oracle::AnonymousGame& game);

/// Nash-to-strong-exchange reduction: red agents as above plus n^2 - n fully
/// indifferent blue agents.
Instance reduce_anon_nash(const oracle::AnonymousGame& game);

/// Envy-freeness reduction from X3C with room size s = 5q + 1. When
/// `break_ties` is set every indifference class is linearized by ascending
/// numerator.
Instance reduce_x3c(const X3CInstance& x3c, bool break_ties = false);

/// The envy-free outcome built from an exact cover, following the forward
/// direction of the reduction. `cover` holds indices into x3c.sets.
Outcome x3c_cover_outcome(const X3CInstance& x3c, const std::vector<int>& cover,
                          bool break_ties = false);

enum class PrefClassKind : std::uint8_t {
  Unrestricted,
  Strict,
  Dichotomous,
  SinglePeaked,
};

/// Seed-deterministic random instance whose classification matches `kind`.
Instance random_instance(int s, int k, PrefClassKind kind, int red_count,
                         std::uint64_t seed);

}  // namespace roomdiv::generators
