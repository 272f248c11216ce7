#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "roomdiv/model.hpp"

namespace roomdiv::ilp {

struct ArithmeticOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Value = std::int64_t;

struct VarDecl {
  std::string name;
  Value lower = 0;
  Value upper = 0;
};

/// sum(coeff_i * var_i) + constant  (<= 0 | == 0). Terms are kept sorted by
/// variable index with no duplicates.
struct LinearConstraint {
  enum class Rel : std::uint8_t { LeqZero, EqZero };

  std::vector<std::pair<int, Value>> terms;
  Value constant = 0;
  Rel rel = Rel::LeqZero;

  void add_term(int var, Value coeff);
};

/// Disjunction of conjunctions: at least one branch must hold in full.
struct DisjunctionGroup {
  std::vector<std::vector<LinearConstraint>> branches;
};

struct ConstraintSystem {
  std::vector<VarDecl> vars;
  std::vector<LinearConstraint> hard;
  std::vector<DisjunctionGroup> disjunctions;

  int add_var(std::string name, Value lower, Value upper);
};

struct Assignment {
  std::vector<Value> values;  // by variable index
};

/// Exact check of every hard constraint and every disjunction group.
bool satisfies(const ConstraintSystem& system, const Assignment& assignment);

/// Complete feasibility search over the bounded integer system. Returns the
/// lexicographically smallest feasible assignment (in variable declaration
/// order) or nullopt. All arithmetic is exact; overflow throws.
std::optional<Assignment> solve(const ConstraintSystem& system);

/// Plain-text rendering for inspection; not a stable format.
std::string to_text(const ConstraintSystem& system);

}  // namespace roomdiv::ilp
