#pragma once

#include <optional>

#include "roomdiv/model.hpp"
#include "roomdiv/verify.hpp"

namespace roomdiv {

/// Pairs up an s=2 instance into an outcome that is Pareto optimal, core
/// stable and exchange stable (strongly exchange stable when preferences are
/// strict). Throws UnsupportedError unless s == 2.
Outcome solve_size_two(const Instance& instance);

/// Core stable outcome for dichotomous preferences: peels maximal blocks of
/// agents approving each fraction in ascending order, then fills the rest in
/// id order. Throws UnsupportedError unless preferences are dichotomous.
Outcome solve_dichotomous_core(const Instance& instance);

/// Applies (weak, when strong=true) same-type swaps until none remains. The
/// multiset of room numerators is preserved and at most n*s swaps occur.
/// `swap_count`, when given, receives the number of executed swaps.
Outcome local_search_same_type(const Instance& instance, const Outcome& start,
                               bool strong, int* swap_count = nullptr);

/// Decides same-type-envy-freeness for strict preferences by guessing the
/// set of occurring fractions (2^(s+1) guesses); returns an outcome for the
/// lexicographically smallest accepted guess. Throws UnsupportedError unless
/// preferences are strict.
std::optional<Outcome> solve_same_type_envy_free(const Instance& instance);

/// Chains Pareto improvements from the first canonical outcome; at most n*s
/// steps. Throws BudgetExceeded when the instance exceeds the search budget.
Outcome pareto_optimal_outcome(const Instance& instance,
                               std::uint64_t budget = kDefaultOutcomeBudget);

}  // namespace roomdiv
