#include "roomdiv/ilp.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace roomdiv::ilp {

namespace {

Value checked_add(Value a, Value b) {
  Value out;
  if (__builtin_add_overflow(a, b, &out))
    throw ArithmeticOverflow("integer overflow in addition");
  return out;
}

Value checked_mul(Value a, Value b) {
  Value out;
  if (__builtin_mul_overflow(a, b, &out))
    throw ArithmeticOverflow("integer overflow in multiplication");
  return out;
}

Value checked_sub(Value a, Value b) {
  Value out;
  if (__builtin_sub_overflow(a, b, &out))
    throw ArithmeticOverflow("integer overflow in subtraction");
  return out;
}

Value floor_div(Value a, Value b) {
  Value q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Value ceil_div(Value a, Value b) {
  Value q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

struct Bounds {
  std::vector<Value> lo;
  std::vector<Value> hi;
};

// Minimum and maximum of the constraint's left-hand side under `bounds`.
std::pair<Value, Value> lhs_range(const LinearConstraint& c, const Bounds& bounds) {
  Value lo = c.constant;
  Value hi = c.constant;
  for (const auto& [var, coeff] : c.terms) {
    if (coeff > 0) {
      lo = checked_add(lo, checked_mul(coeff, bounds.lo[var]));
      hi = checked_add(hi, checked_mul(coeff, bounds.hi[var]));
    } else {
      lo = checked_add(lo, checked_mul(coeff, bounds.hi[var]));
      hi = checked_add(hi, checked_mul(coeff, bounds.lo[var]));
    }
  }
  return {lo, hi};
}

bool branch_viable(const std::vector<LinearConstraint>& branch, const Bounds& bounds) {
  for (const auto& c : branch) {
    const auto [lo, hi] = lhs_range(c, bounds);
    if (lo > 0) return false;
    if (c.rel == LinearConstraint::Rel::EqZero && hi < 0) return false;
  }
  return true;
}

class Solver {
 public:
  explicit Solver(const ConstraintSystem& system) : system_(system) {}

  std::optional<Assignment> run() {
    Bounds bounds;
    for (const auto& v : system_.vars) {
      if (v.lower > v.upper) return std::nullopt;
      bounds.lo.push_back(v.lower);
      bounds.hi.push_back(v.upper);
    }
    if (!propagate(bounds)) return std::nullopt;
    Assignment result;
    if (!descend(0, bounds, result)) return std::nullopt;
    if (!satisfies(system_, result))
      throw InternalError("search produced an assignment failing verification");
    return result;
  }

 private:
  // Tightens `bounds` to a fixpoint; false on wipeout. Sound: never removes
  // a feasible point, so depth-first search in declaration order with
  // ascending values reaches the lexicographically smallest solution first.
  bool propagate(Bounds& bounds) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : system_.hard)
        if (!tighten(c, bounds, changed)) return false;
      for (const auto& group : system_.disjunctions) {
        int viable = 0;
        const std::vector<LinearConstraint>* only = nullptr;
        for (const auto& branch : group.branches) {
          if (branch_viable(branch, bounds)) {
            ++viable;
            only = &branch;
          }
        }
        if (viable == 0) return false;
        if (viable == 1) {
          for (const auto& c : *only)
            if (!tighten(c, bounds, changed)) return false;
        }
      }
    }
    return true;
  }

  // Bound tightening for one constraint; false on wipeout.
  bool tighten(const LinearConstraint& c, Bounds& bounds, bool& changed) {
    if (!tighten_leq(c, bounds, changed)) return false;
    if (c.rel == LinearConstraint::Rel::EqZero) {
      LinearConstraint negated;
      negated.constant = checked_sub(0, c.constant);
      negated.terms.reserve(c.terms.size());
      for (const auto& [var, coeff] : c.terms)
        negated.terms.emplace_back(var, checked_sub(0, coeff));
      if (!tighten_leq(negated, bounds, changed)) return false;
    }
    return true;
  }

  bool tighten_leq(const LinearConstraint& c, Bounds& bounds, bool& changed) {
    const auto [lo, hi] = lhs_range(c, bounds);
    if (lo > 0) return false;
    if (hi <= 0) return true;  // already entailed
    for (const auto& [var, coeff] : c.terms) {
      // lo minus this term's minimal contribution.
      const Value own_min =
          coeff > 0 ? checked_mul(coeff, bounds.lo[var]) : checked_mul(coeff, bounds.hi[var]);
      const Value rest_min = checked_sub(lo, own_min);
      const Value budget = checked_sub(0, rest_min);  // coeff*x <= budget
      if (coeff > 0) {
        const Value cap = floor_div(budget, coeff);
        if (cap < bounds.hi[var]) {
          bounds.hi[var] = cap;
          changed = true;
          if (bounds.lo[var] > bounds.hi[var]) return false;
        }
      } else {
        const Value floor = ceil_div(budget, coeff);
        if (floor > bounds.lo[var]) {
          bounds.lo[var] = floor;
          changed = true;
          if (bounds.lo[var] > bounds.hi[var]) return false;
        }
      }
    }
    return true;
  }

  bool descend(std::size_t var, Bounds bounds, Assignment& result) {
    while (var < bounds.lo.size() && bounds.lo[var] == bounds.hi[var]) ++var;
    if (var == bounds.lo.size()) {
      result.values.assign(bounds.lo.begin(), bounds.lo.end());
      return true;
    }
    for (Value v = bounds.lo[var]; v <= bounds.hi[var]; ++v) {
      Bounds child = bounds;
      child.lo[var] = child.hi[var] = v;
      if (!propagate(child)) continue;
      if (descend(var + 1, std::move(child), result)) return true;
    }
    return false;
  }

  const ConstraintSystem& system_;
};

Value evaluate(const LinearConstraint& c, const Assignment& assignment) {
  Value sum = c.constant;
  for (const auto& [var, coeff] : c.terms)
    sum = checked_add(sum, checked_mul(coeff, assignment.values[var]));
  return sum;
}

bool holds(const LinearConstraint& c, const Assignment& assignment) {
  const Value v = evaluate(c, assignment);
  return c.rel == LinearConstraint::Rel::EqZero ? v == 0 : v <= 0;
}

}  // namespace

void LinearConstraint::add_term(int var, Value coeff) {
  if (coeff == 0) return;
  auto it = std::lower_bound(terms.begin(), terms.end(), var,
                             [](const auto& t, int v) { return t.first < v; });
  if (it != terms.end() && it->first == var) {
    it->second = checked_add(it->second, coeff);
    if (it->second == 0) terms.erase(it);
  } else {
    terms.insert(it, {var, coeff});
  }
}

int ConstraintSystem::add_var(std::string name, Value lower, Value upper) {
  vars.push_back({std::move(name), lower, upper});
  return static_cast<int>(vars.size()) - 1;
}

bool satisfies(const ConstraintSystem& system, const Assignment& assignment) {
  if (assignment.values.size() != system.vars.size()) return false;
  for (std::size_t i = 0; i < system.vars.size(); ++i)
    if (assignment.values[i] < system.vars[i].lower ||
        assignment.values[i] > system.vars[i].upper)
      return false;
  for (const auto& c : system.hard)
    if (!holds(c, assignment)) return false;
  for (const auto& group : system.disjunctions) {
    bool any = false;
    for (const auto& branch : group.branches) {
      bool all = true;
      for (const auto& c : branch)
        if (!holds(c, assignment)) {
          all = false;
          break;
        }
      if (all) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

std::optional<Assignment> solve(const ConstraintSystem& system) {
  return Solver(system).run();
}

namespace {

void render(std::ostream& out, const LinearConstraint& c,
            const std::vector<VarDecl>& vars) {
  bool first = true;
  for (const auto& [var, coeff] : c.terms) {
    if (coeff >= 0 && !first) out << " + ";
    if (coeff < 0) out << (first ? "-" : " - ");
    const Value mag = coeff < 0 ? -coeff : coeff;
    if (mag != 1) out << mag << "*";
    out << vars[var].name;
    first = false;
  }
  if (first) out << "0";
  out << (c.rel == LinearConstraint::Rel::EqZero ? " == " : " <= ") << -c.constant;
}

}  // namespace

std::string to_text(const ConstraintSystem& system) {
  std::ostringstream out;
  out << "vars:\n";
  for (const auto& v : system.vars)
    out << "  " << v.lower << " <= " << v.name << " <= " << v.upper << "\n";
  out << "subject to:\n";
  for (const auto& c : system.hard) {
    out << "  ";
    render(out, c, system.vars);
    out << "\n";
  }
  for (const auto& group : system.disjunctions) {
    out << "  ";
    for (std::size_t b = 0; b < group.branches.size(); ++b) {
      if (b > 0) out << "  or  ";
      out << "[";
      for (std::size_t i = 0; i < group.branches[b].size(); ++i) {
        if (i > 0) out << " and ";
        render(out, group.branches[b][i], system.vars);
      }
      out << "]";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace roomdiv::ilp
