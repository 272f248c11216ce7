#include <limits>

#include "doctest.h"
#include "roomdiv/ilp.hpp"
#include "roomdiv/rng.hpp"

using namespace roomdiv;
using namespace roomdiv::ilp;

namespace {

LinearConstraint make(std::vector<std::pair<int, Value>> terms, Value constant,
                      LinearConstraint::Rel rel) {
  LinearConstraint c;
  for (auto& [var, coeff] : terms) c.add_term(var, coeff);
  c.constant = constant;
  c.rel = rel;
  return c;
}

// Reference: full grid scan in declaration order; first hit is the smallest.
std::optional<Assignment> grid_solve(const ConstraintSystem& system) {
  Assignment point;
  point.values.assign(system.vars.size(), 0);
  auto recurse = [&](auto&& self, std::size_t var) -> std::optional<Assignment> {
    if (var == system.vars.size())
      return satisfies(system, point) ? std::optional(point) : std::nullopt;
    for (Value v = system.vars[var].lower; v <= system.vars[var].upper; ++v) {
      point.values[var] = v;
      if (auto hit = self(self, var + 1)) return hit;
    }
    return std::nullopt;
  };
  return recurse(recurse, 0);
}

ConstraintSystem random_system(Rng& rng) {
  ConstraintSystem system;
  const int vars = rng.range(1, 6);
  for (int v = 0; v < vars; ++v) {
    const Value lower = rng.range(0, 2);
    system.add_var("x" + std::to_string(v), lower, lower + rng.range(0, 3));
  }
  auto random_constraint = [&]() {
    LinearConstraint c;
    const int terms = rng.range(1, std::min(vars, 3));
    for (int t = 0; t < terms; ++t)
      c.add_term(rng.range(0, vars - 1), rng.range(-3, 3));
    c.constant = rng.range(-6, 6);
    c.rel = rng.coin() ? LinearConstraint::Rel::LeqZero : LinearConstraint::Rel::EqZero;
    return c;
  };
  const int hard = rng.range(0, 3);
  for (int i = 0; i < hard; ++i) system.hard.push_back(random_constraint());
  const int groups = rng.range(0, 4);
  for (int g = 0; g < groups; ++g) {
    DisjunctionGroup group;
    const int branches = rng.range(1, 3);
    for (int b = 0; b < branches; ++b) {
      std::vector<LinearConstraint> branch;
      const int size = rng.range(1, 2);
      for (int c = 0; c < size; ++c) branch.push_back(random_constraint());
      group.branches.push_back(std::move(branch));
    }
    system.disjunctions.push_back(std::move(group));
  }
  return system;
}

}  // namespace

TEST_CASE("forced equality") {
  ConstraintSystem system;
  const int x = system.add_var("x", 0, 3);
  system.hard.push_back(make({{x, 1}}, -2, LinearConstraint::Rel::EqZero));
  const auto result = solve(system);
  REQUIRE(result);
  CHECK(result->values[x] == 2);
}

TEST_CASE("disjunction with one dead branch") {
  ConstraintSystem system;
  const int x = system.add_var("x", 0, 1);
  DisjunctionGroup group;
  group.branches.push_back({make({{x, 1}}, 1, LinearConstraint::Rel::LeqZero)});  // x <= -1
  group.branches.push_back({make({{x, 1}}, -1, LinearConstraint::Rel::EqZero)});  // x == 1
  system.disjunctions.push_back(std::move(group));
  const auto result = solve(system);
  REQUIRE(result);
  CHECK(result->values[x] == 1);
}

TEST_CASE("lexicographic tie-break") {
  ConstraintSystem system;
  const int x = system.add_var("x", 0, 2);
  const int y = system.add_var("y", 0, 2);
  system.hard.push_back(make({{x, 1}, {y, 1}}, -1, LinearConstraint::Rel::EqZero));
  DisjunctionGroup group;
  group.branches.push_back({make({{x, 1}}, 0, LinearConstraint::Rel::EqZero)});
  group.branches.push_back({make({{y, 1}}, 0, LinearConstraint::Rel::EqZero)});
  system.disjunctions.push_back(std::move(group));
  const auto result = solve(system);
  REQUIRE(result);
  CHECK(result->values[x] == 0);
  CHECK(result->values[y] == 1);
}

TEST_CASE("infeasible systems return nothing") {
  ConstraintSystem system;
  const int x = system.add_var("x", 0, 5);
  system.hard.push_back(make({{x, 1}}, -7, LinearConstraint::Rel::EqZero));
  CHECK_FALSE(solve(system));

  ConstraintSystem empty_domain;
  empty_domain.add_var("x", 3, 2);
  CHECK_FALSE(solve(empty_domain));
}

TEST_CASE("random systems agree with grid enumeration") {
  Rng rng(4242);
  for (int trial = 0; trial < 400; ++trial) {
    const ConstraintSystem system = random_system(rng);
    const auto expected = grid_solve(system);
    const auto got = solve(system);
    REQUIRE(expected.has_value() == got.has_value());
    if (expected) {
      CHECK(expected->values == got->values);
      CHECK(satisfies(system, *got));
    }
  }
}

TEST_CASE("solving twice gives identical output") {
  Rng rng(7);
  const ConstraintSystem system = random_system(rng);
  const auto a = solve(system);
  const auto b = solve(system);
  REQUIRE(a.has_value() == b.has_value());
  if (a) CHECK(a->values == b->values);
}

TEST_CASE("overflow is reported, not wrapped") {
  ConstraintSystem system;
  const int x = system.add_var("x", 0, std::numeric_limits<Value>::max() / 2);
  LinearConstraint c;
  c.add_term(x, 4);
  c.constant = 0;
  c.rel = LinearConstraint::Rel::LeqZero;
  system.hard.push_back(std::move(c));
  CHECK_THROWS_AS(solve(system), ArithmeticOverflow);
}

TEST_CASE("debug rendering stays in sync with the system") {
  ConstraintSystem system;
  const int x = system.add_var("x", 0, 3);
  const int y = system.add_var("y", 1, 2);
  system.hard.push_back(make({{x, 2}, {y, -1}}, -1, LinearConstraint::Rel::LeqZero));
  DisjunctionGroup group;
  group.branches.push_back({make({{x, 1}}, 0, LinearConstraint::Rel::EqZero)});
  group.branches.push_back({make({{y, 1}}, -2, LinearConstraint::Rel::EqZero)});
  system.disjunctions.push_back(std::move(group));
  const std::string text = to_text(system);
  CHECK(text.find("0 <= x <= 3") != std::string::npos);
  CHECK(text.find("2*x") != std::string::npos);
  CHECK(text.find("or") != std::string::npos);
}
