#pragma once

#include <cstdint>
#include <functional>

#include "roomdiv/model.hpp"

namespace roomdiv {

inline constexpr std::uint64_t kDefaultOutcomeBudget = 10'000'000;

/// Visits every outcome of `instance` exactly once up to agent-profile
/// symmetry (agents sharing color and preference order are interchangeable),
/// in a fixed deterministic order. The visitor returns false to stop early.
/// Throws BudgetExceeded once more than `budget` outcomes have been visited.
void for_each_canonical_outcome(const Instance& instance, std::uint64_t budget,
                                const std::function<bool(const Outcome&)>& visit);

/// Number of canonical outcomes; throws BudgetExceeded if it exceeds `budget`.
std::uint64_t count_canonical_outcomes(const Instance& instance, std::uint64_t budget);

}  // namespace roomdiv
