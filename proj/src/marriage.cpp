#include "roomdiv/marriage.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>
#include <set>

#include "json.hpp"

namespace roomdiv {

using ilp::LinearConstraint;
using ilp::Value;
using nlohmann::json;
using Rel = LinearConstraint::Rel;

MarriageInstance MarriageInstance::make(int s, std::vector<MarriageAgent> agents) {
  if (s < 1) throw ValidationError("dimension count must be at least 1");
  if (agents.size() % static_cast<std::size_t>(s) != 0)
    throw ValidationError("number of agents not divisible by dimension count");
  MarriageInstance inst;
  inst.s_ = s;
  inst.by_dim_.resize(s);
  const int k = static_cast<int>(agents.size()) / s;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const MarriageAgent& a = agents[i];
    if (a.id.empty()) throw ValidationError("empty agent id");
    if (a.dim < 1 || a.dim > s)
      throw ValidationError("agent " + a.id + ": dimension out of range");
    if (a.pref.domain_size() != s + 1)
      throw ValidationError("agent " + a.id + ": preference does not span [0," +
                            std::to_string(s) + "]");
    if (!inst.index_.emplace(a.id, static_cast<int>(i)).second)
      throw ValidationError("duplicate agent id: " + a.id);
    inst.by_dim_[a.dim - 1].push_back(a.id);
  }
  for (int d = 0; d < s; ++d) {
    if (static_cast<int>(inst.by_dim_[d].size()) != k)
      throw ValidationError("dimension " + std::to_string(d + 1) + " holds " +
                            std::to_string(inst.by_dim_[d].size()) + " agents, expected " +
                            std::to_string(k));
    std::sort(inst.by_dim_[d].begin(), inst.by_dim_[d].end());
  }
  inst.agents_ = std::move(agents);
  return inst;
}

int MarriageInstance::agent_index(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ValidationError("unknown agent id: " + std::string(id));
  return it->second;
}

void validate_marriage_outcome(const MarriageInstance& instance,
                               const MarriageOutcome& outcome) {
  if (static_cast<int>(outcome.rooms.size()) != instance.k())
    throw ValidationError("outcome has " + std::to_string(outcome.rooms.size()) +
                          " rooms, expected " + std::to_string(instance.k()));
  std::set<std::string> seen;
  for (const auto& room : outcome.rooms) {
    if (static_cast<int>(room.size()) != instance.s())
      throw ValidationError("room size differs from the dimension count");
    std::vector<bool> dim_used(instance.s(), false);
    for (const auto& id : room) {
      const MarriageAgent& a = instance.agent(id);
      if (dim_used[a.dim - 1])
        throw ValidationError("two agents of dimension " + std::to_string(a.dim) +
                              " share a room");
      dim_used[a.dim - 1] = true;
      if (!seen.insert(id).second) throw ValidationError("agent " + id + " placed twice");
    }
  }
}

MarriageInstance parse_marriage_instance(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("malformed JSON");
  if (j.value("kind", "") != "marriage") throw ParseError("expected \"kind\":\"marriage\"");
  if (!j.contains("s") || !j["s"].is_number_integer())
    throw ParseError("missing integer field \"s\"");
  const int s = j["s"].get<int>();
  if (!j.contains("agents") || !j["agents"].is_array())
    throw ParseError("missing array field \"agents\"");
  std::vector<MarriageAgent> agents;
  for (const auto& entry : j["agents"]) {
    MarriageAgent a;
    if (!entry.contains("id") || !entry["id"].is_string())
      throw ParseError("agent missing string field \"id\"");
    a.id = entry["id"].get<std::string>();
    if (!entry.contains("color") || !entry["color"].is_string())
      throw ParseError("agent missing string field \"color\"");
    a.color = color_from_string(entry["color"].get<std::string>());
    if (!entry.contains("dim") || !entry["dim"].is_number_integer())
      throw ParseError("agent missing integer field \"dim\"");
    a.dim = entry["dim"].get<int>();
    if (!entry.contains("pref") || !entry["pref"].is_array())
      throw ParseError("agent missing array field \"pref\"");
    std::vector<std::vector<int>> classes;
    for (const auto& cls : entry["pref"]) {
      std::vector<int> numerators;
      for (const auto& v : cls) {
        if (!v.is_number_integer()) throw ParseError("pref entries must be integers");
        numerators.push_back(v.get<int>());
      }
      classes.push_back(std::move(numerators));
    }
    try {
      a.pref = WeakOrder::from_classes(std::move(classes), s);
    } catch (const ValidationError& e) {
      throw ParseError(e.what());
    }
    agents.push_back(std::move(a));
  }
  try {
    return MarriageInstance::make(s, std::move(agents));
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_marriage_instance(const MarriageInstance& instance) {
  json agents = json::array();
  for (const MarriageAgent& a : instance.agents()) {
    json classes = json::array();
    for (const auto& cls : a.pref.classes()) classes.push_back(cls);
    agents.push_back({{"id", a.id},
                      {"color", std::string(to_string(a.color))},
                      {"dim", a.dim},
                      {"pref", std::move(classes)}});
  }
  return json{{"kind", "marriage"}, {"s", instance.s()}, {"agents", std::move(agents)}}
      .dump();
}

MarriageOutcome parse_marriage_outcome(const std::string& text) {
  Outcome o = parse_outcome(text);
  return MarriageOutcome{std::move(o.rooms)};
}

std::string serialize_marriage_outcome(const MarriageOutcome& outcome) {
  return serialize_outcome(Outcome{outcome.rooms});
}

std::string instance_kind(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("malformed JSON");
  const std::string kind = j.value("kind", "");
  if (kind != "roommate" && kind != "marriage")
    throw ParseError("unknown instance kind: \"" + kind + "\"");
  return kind;
}

namespace {

struct MarriageView {
  std::vector<int> room_of;     // by agent index
  std::vector<int> numerators;  // by room

  MarriageView(const MarriageInstance& instance, const MarriageOutcome& outcome) {
    validate_marriage_outcome(instance, outcome);
    room_of.assign(instance.n(), -1);
    for (std::size_t r = 0; r < outcome.rooms.size(); ++r) {
      int reds = 0;
      for (const auto& id : outcome.rooms[r]) {
        const int idx = instance.agent_index(id);
        room_of[idx] = static_cast<int>(r);
        if (instance.agents()[idx].color == Color::Red) ++reds;
      }
      numerators.push_back(reds);
    }
  }
};

}  // namespace

std::optional<BlockingWitness> find_blocking_marriage(const MarriageInstance& instance,
                                                      const MarriageOutcome& outcome,
                                                      bool strong) {
  const MarriageView view(instance, outcome);
  const int s = instance.s();

  for (int j = 0; j <= s; ++j) {
    // Willing agents per dimension; a blocking coalition picks one willing
    // agent from every dimension, j of them red.
    std::vector<std::vector<std::string>> weak_r(s), weak_b(s), strict_r(s), strict_b(s);
    for (int d = 1; d <= s; ++d) {
      for (const auto& id : instance.dimension(d)) {
        const MarriageAgent& a = instance.agent(id);
        const int cur = view.numerators[view.room_of[instance.agent_index(id)]];
        const auto rel = compare(a.pref, j, cur);
        if (rel == Preference::StrictlyWorse) continue;
        auto& weak = a.color == Color::Red ? weak_r : weak_b;
        weak[d - 1].push_back(id);
        if (rel == Preference::StrictlyBetter) {
          auto& strict = a.color == Color::Red ? strict_r : strict_b;
          strict[d - 1].push_back(id);
        }
      }
    }
    const auto& will_r = strong ? weak_r : strict_r;
    const auto& will_b = strong ? weak_b : strict_b;
    int g_both = 0, g_red = 0, g_blue = 0;
    for (int d = 0; d < s; ++d) {
      const bool r = !will_r[d].empty();
      const bool b = !will_b[d].empty();
      g_both += r && b;
      g_red += r && !b;
      g_blue += b && !r;
    }
    if (g_both + g_red + g_blue < s) continue;  // some dimension is unwilling
    if (j > g_red + g_both || s - j > g_blue + g_both) continue;

    // Forced dimensions take their color, the first j - g_red flexible
    // dimensions go red.
    std::vector<bool> is_red(s, false), is_flex(s, false);
    int flex_red_left = j - g_red;
    for (int d = 0; d < s; ++d) {
      const bool r = !will_r[d].empty();
      const bool b = !will_b[d].empty();
      is_flex[d] = r && b;
      if (r && !b) is_red[d] = true;
      if (is_flex[d] && flex_red_left > 0) {
        is_red[d] = true;
        --flex_red_left;
      }
    }
    std::vector<std::string> member(s);
    for (int d = 0; d < s; ++d) member[d] = (is_red[d] ? will_r : will_b)[d].front();

    if (strong) {
      // A weakly blocking coalition needs a strictly improving member.
      int pivot = -1;
      for (int d = 0; d < s && pivot < 0; ++d) {
        const auto& strict = is_red[d] ? strict_r[d] : strict_b[d];
        if (!strict.empty()) {
          member[d] = strict.front();
          pivot = d;
        }
      }
      if (pivot < 0) {
        // Flip a pair of flexible dimensions to bring a strict agent in.
        auto try_flip = [&](const std::vector<std::vector<std::string>>& strict_in,
                            const std::vector<std::vector<std::string>>& weak_out,
                            bool to_red) {
          for (int d = 0; d < s; ++d) {
            if (is_red[d] == to_red || strict_in[d].empty() || !is_flex[d]) continue;
            for (int e = 0; e < s; ++e) {
              if (e == d || is_red[e] != to_red || !is_flex[e]) continue;
              is_red[d] = to_red;
              is_red[e] = !to_red;
              member[d] = strict_in[d].front();
              member[e] = weak_out[e].front();
              return true;
            }
          }
          return false;
        };
        if (!try_flip(strict_r, weak_b, true) && !try_flip(strict_b, weak_r, false))
          continue;  // no strict participant reachable for this class
      }
    }
    BlockingWitness witness{j, {}, {}, strong};
    for (int d = 0; d < s; ++d)
      (is_red[d] ? witness.red_members : witness.blue_members).push_back(member[d]);
    std::sort(witness.red_members.begin(), witness.red_members.end());
    std::sort(witness.blue_members.begin(), witness.blue_members.end());
    return witness;
  }
  return std::nullopt;
}

std::optional<SwapWitness> find_exchange_marriage(const MarriageInstance& instance,
                                                  const MarriageOutcome& outcome,
                                                  bool strong) {
  const MarriageView view(instance, outcome);
  std::vector<std::string> ids;
  for (const MarriageAgent& a : instance.agents()) ids.push_back(a.id);
  std::sort(ids.begin(), ids.end());

  for (const auto& ida : ids) {
    const MarriageAgent& a = instance.agent(ida);
    const int room_a = view.room_of[instance.agent_index(ida)];
    for (const auto& idb : instance.dimension(a.dim)) {
      if (ida == idb) continue;
      const MarriageAgent& b = instance.agent(idb);
      const int room_b = view.room_of[instance.agent_index(idb)];
      // Same-dimension agents always occupy different rooms.
      auto post = [](Color mover, Color leaver, int numerator) {
        if (mover == leaver) return numerator;
        return mover == Color::Red ? numerator + 1 : numerator - 1;
      };
      const int a_new = post(a.color, b.color, view.numerators[room_b]);
      const int b_new = post(b.color, a.color, view.numerators[room_a]);
      if (!strictly_prefers(a.pref, a_new, view.numerators[room_a])) continue;
      const bool b_strict = strictly_prefers(b.pref, b_new, view.numerators[room_b]);
      const bool b_weak = weakly_prefers(b.pref, b_new, view.numerators[room_b]);
      if (!(strong ? b_weak : b_strict)) continue;
      return SwapWitness{ida, idb,
                         a.color == b.color ? SwapWitness::Kind::SameType
                                            : SwapWitness::Kind::DifferentType,
                         !b_strict};
    }
  }
  return std::nullopt;
}

bool is_marriage_stable(const MarriageInstance& instance, const MarriageOutcome& outcome,
                        Concept notion) {
  switch (notion) {
    case Concept::Core: return !find_blocking_marriage(instance, outcome, false);
    case Concept::StrongCore: return !find_blocking_marriage(instance, outcome, true);
    case Concept::Exchange: return !find_exchange_marriage(instance, outcome, false);
    case Concept::StrongExchange: return !find_exchange_marriage(instance, outcome, true);
    default:
      throw UnsupportedError("concept " + std::string(to_string(notion)) +
                             " is not defined for the marriage model");
  }
}

void for_each_marriage_outcome(const MarriageInstance& instance, std::uint64_t budget,
                               const std::function<bool(const MarriageOutcome&)>& visit) {
  const int s = instance.s();
  const int k = instance.k();
  if (k == 0) {
    if (budget < 1) throw BudgetExceeded("marriage outcome budget exceeded");
    visit(MarriageOutcome{});
    return;
  }
  // Dimension 1 anchors the rooms; dimensions 2..s run through permutations.
  std::vector<std::vector<int>> perm(s, std::vector<int>(k));
  for (auto& p : perm) std::iota(p.begin(), p.end(), 0);
  std::uint64_t count = 0;
  while (true) {
    if (++count > budget)
      throw BudgetExceeded("marriage outcome budget of " + std::to_string(budget) +
                           " exceeded");
    MarriageOutcome outcome;
    for (int t = 0; t < k; ++t) {
      std::vector<std::string> room;
      for (int d = 0; d < s; ++d) room.push_back(instance.dimension(d + 1)[perm[d][t]]);
      outcome.rooms.push_back(std::move(room));
    }
    if (!visit(outcome)) return;
    int d = s - 1;
    while (d >= 1 && !std::next_permutation(perm[d].begin(), perm[d].end())) --d;
    if (d < 1) return;
  }
}

MarriageOutcome realize_marriage(const MarriageInstance& instance,
                                 const MarriageCountProfile& profile) {
  const int s = instance.s();

  // Global type tables (distinct orders per color, sorted), matching the
  // count profile's row indexing.
  std::vector<WeakOrder> red_orders, blue_orders;
  for (const MarriageAgent& a : instance.agents()) {
    auto& orders = a.color == Color::Red ? red_orders : blue_orders;
    if (std::find(orders.begin(), orders.end(), a.pref) == orders.end())
      orders.push_back(a.pref);
  }
  std::sort(red_orders.begin(), red_orders.end());
  std::sort(blue_orders.begin(), blue_orders.end());
  // ids per (dimension, global type), sorted.
  std::vector<std::vector<std::vector<std::string>>> red_ids(
      s, std::vector<std::vector<std::string>>(red_orders.size()));
  std::vector<std::vector<std::vector<std::string>>> blue_ids(
      s, std::vector<std::vector<std::string>>(blue_orders.size()));
  for (const MarriageAgent& a : instance.agents()) {
    auto& orders = a.color == Color::Red ? red_orders : blue_orders;
    auto& ids = a.color == Color::Red ? red_ids : blue_ids;
    const auto type = std::find(orders.begin(), orders.end(), a.pref) - orders.begin();
    ids[a.dim - 1][type].push_back(a.id);
  }
  for (auto& per_dim : red_ids)
    for (auto& ids : per_dim) std::sort(ids.begin(), ids.end());
  for (auto& per_dim : blue_ids)
    for (auto& ids : per_dim) std::sort(ids.begin(), ids.end());
  if (profile.red_counts.size() != static_cast<std::size_t>(s) ||
      profile.blue_counts.size() != static_cast<std::size_t>(s))
    throw InternalError("count profile does not match the dimension count");

  // Per class and dimension: the red and blue agents living there, spread in
  // ascending class order within each type.
  std::vector<std::vector<std::vector<std::string>>> reds(s + 1), blues(s + 1);
  for (int j = 0; j <= s; ++j) {
    reds[j].resize(s);
    blues[j].resize(s);
  }
  auto spread = [&](const std::vector<std::string>& ids, const std::vector<Value>& counts,
                    int d, std::vector<std::vector<std::vector<std::string>>>& target) {
    std::size_t offset = 0;
    for (int j = 0; j <= s; ++j) {
      const auto count = static_cast<std::size_t>(counts[j]);
      if (offset + count > ids.size())
        throw InternalError("dimension class counts exceed the type's population");
      target[j][d].insert(target[j][d].end(), ids.begin() + offset,
                          ids.begin() + offset + count);
      offset += count;
    }
    if (offset != ids.size())
      throw InternalError("dimension class counts do not cover the type");
  };
  for (int d = 0; d < s; ++d) {
    if (profile.red_counts[d].size() != red_orders.size() ||
        profile.blue_counts[d].size() != blue_orders.size())
      throw InternalError("count profile does not match the instance's type tables");
    for (std::size_t i = 0; i < red_orders.size(); ++i)
      spread(red_ids[d][i], profile.red_counts[d][i], d, reds);
    for (std::size_t i = 0; i < blue_orders.size(); ++i)
      spread(blue_ids[d][i], profile.blue_counts[d][i], d, blues);
  }

  MarriageOutcome outcome;
  for (int j = 0; j <= s; ++j) {
    const auto rooms = static_cast<int>(profile.rooms[j]);
    if (rooms == 0) continue;
    // Red placement matrix: rows are dimensions (row sum = reds of that
    // dimension in this class), columns are rooms (column sum = j).
    std::vector<int> deficit(rooms, j);
    std::vector<std::vector<bool>> red_here(s, std::vector<bool>(rooms, false));
    for (int d = 0; d < s; ++d) {
      if (static_cast<int>(reds[j][d].size() + blues[j][d].size()) != rooms)
        throw InternalError("dimension does not contribute one agent per room");
      int need = static_cast<int>(reds[j][d].size());
      std::vector<int> order(rooms);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int x, int y) { return deficit[x] > deficit[y]; });
      for (int t = 0; t < need; ++t) {
        if (deficit[order[t]] == 0)
          throw InternalError("red placement matrix is not realizable");
        --deficit[order[t]];
        red_here[d][order[t]] = true;
      }
    }
    for (int t = 0; t < rooms; ++t)
      if (deficit[t] != 0) throw InternalError("red placement matrix is not realizable");

    std::vector<std::size_t> red_next(s, 0), blue_next(s, 0);
    for (int t = 0; t < rooms; ++t) {
      std::vector<std::string> room;
      for (int d = 0; d < s; ++d)
        room.push_back(red_here[d][t] ? reds[j][d][red_next[d]++]
                                      : blues[j][d][blue_next[d]++]);
      outcome.rooms.push_back(std::move(room));
    }
  }
  validate_marriage_outcome(instance, outcome);
  return outcome;
}

// ---------------------------------------------------------------------------
// FPT encoding (count variables per dimension, preference type and class)
// ---------------------------------------------------------------------------

namespace {

struct MarriageEncoder {
  const MarriageInstance& instance;
  int s;
  ilp::ConstraintSystem system;
  std::vector<WeakOrder> red_orders, blue_orders;
  // ids per dimension and type index (sorted); empty when the type does not
  // occur in the dimension.
  std::vector<std::vector<std::vector<std::string>>> red_ids, blue_ids;
  std::vector<int> n_var;
  // var ids by [dim][type][j]; -1 when absent.
  std::vector<std::vector<std::vector<int>>> red_var, blue_var;

  explicit MarriageEncoder(const MarriageInstance& inst) : instance(inst), s(inst.s()) {
    for (const MarriageAgent& a : inst.agents()) {
      auto& orders = a.color == Color::Red ? red_orders : blue_orders;
      if (std::find(orders.begin(), orders.end(), a.pref) == orders.end())
        orders.push_back(a.pref);
    }
    std::sort(red_orders.begin(), red_orders.end());
    std::sort(blue_orders.begin(), blue_orders.end());
    red_ids.assign(s, std::vector<std::vector<std::string>>(red_orders.size()));
    blue_ids.assign(s, std::vector<std::vector<std::string>>(blue_orders.size()));
    for (const MarriageAgent& a : inst.agents()) {
      auto& orders = a.color == Color::Red ? red_orders : blue_orders;
      auto& ids = a.color == Color::Red ? red_ids : blue_ids;
      const auto type =
          std::find(orders.begin(), orders.end(), a.pref) - orders.begin();
      ids[a.dim - 1][type].push_back(a.id);
    }
    for (auto& per_dim : red_ids)
      for (auto& ids : per_dim) std::sort(ids.begin(), ids.end());
    for (auto& per_dim : blue_ids)
      for (auto& ids : per_dim) std::sort(ids.begin(), ids.end());

    const int k = inst.k();
    for (int j = 0; j <= s; ++j)
      n_var.push_back(system.add_var("n_" + std::to_string(j), 0, k));
    red_var.assign(s, std::vector<std::vector<int>>(red_orders.size(),
                                                    std::vector<int>(s + 1, -1)));
    blue_var.assign(s, std::vector<std::vector<int>>(blue_orders.size(),
                                                     std::vector<int>(s + 1, -1)));
    for (int d = 0; d < s; ++d)
      for (std::size_t i = 0; i < red_orders.size(); ++i) {
        if (red_ids[d][i].empty()) continue;
        for (int j = 1; j <= s; ++j)
          red_var[d][i][j] = system.add_var(
              "r_" + std::to_string(d + 1) + "_" + std::to_string(i) + "_" +
                  std::to_string(j),
              0, static_cast<Value>(red_ids[d][i].size()));
      }
    for (int d = 0; d < s; ++d)
      for (std::size_t i = 0; i < blue_orders.size(); ++i) {
        if (blue_ids[d][i].empty()) continue;
        for (int j = 0; j <= s - 1; ++j)
          blue_var[d][i][j] = system.add_var(
              "b_" + std::to_string(d + 1) + "_" + std::to_string(i) + "_" +
                  std::to_string(j),
              0, static_cast<Value>(blue_ids[d][i].size()));
      }

    // (1): every agent lands in some class.
    for (int d = 0; d < s; ++d) {
      for (std::size_t i = 0; i < red_orders.size(); ++i) {
        if (red_ids[d][i].empty()) continue;
        LinearConstraint c;
        for (int j = 1; j <= s; ++j) c.add_term(red_var[d][i][j], 1);
        c.constant = -static_cast<Value>(red_ids[d][i].size());
        c.rel = Rel::EqZero;
        system.hard.push_back(std::move(c));
      }
      for (std::size_t i = 0; i < blue_orders.size(); ++i) {
        if (blue_ids[d][i].empty()) continue;
        LinearConstraint c;
        for (int j = 0; j <= s - 1; ++j) c.add_term(blue_var[d][i][j], 1);
        c.constant = -static_cast<Value>(blue_ids[d][i].size());
        c.rel = Rel::EqZero;
        system.hard.push_back(std::move(c));
      }
    }
    // (2.a): class populations match room counts.
    for (int j = 1; j <= s; ++j) {
      LinearConstraint c;
      for (int d = 0; d < s; ++d)
        for (std::size_t i = 0; i < red_orders.size(); ++i)
          if (red_var[d][i][j] >= 0) c.add_term(red_var[d][i][j], 1);
      c.add_term(n_var[j], -j);
      c.rel = Rel::EqZero;
      system.hard.push_back(std::move(c));
    }
    for (int j = 0; j <= s - 1; ++j) {
      LinearConstraint c;
      for (int d = 0; d < s; ++d)
        for (std::size_t i = 0; i < blue_orders.size(); ++i)
          if (blue_var[d][i][j] >= 0) c.add_term(blue_var[d][i][j], 1);
      c.add_term(n_var[j], -(s - j));
      c.rel = Rel::EqZero;
      system.hard.push_back(std::move(c));
    }
    // (2.b): each dimension fills exactly one seat per room of every class.
    for (int j = 0; j <= s; ++j)
      for (int d = 0; d < s; ++d) {
        LinearConstraint c;
        for (std::size_t i = 0; i < red_orders.size(); ++i)
          if (j >= 1 && red_var[d][i][j] >= 0) c.add_term(red_var[d][i][j], 1);
        for (std::size_t i = 0; i < blue_orders.size(); ++i)
          if (j <= s - 1 && blue_var[d][i][j] >= 0) c.add_term(blue_var[d][i][j], 1);
        c.add_term(n_var[j], -1);
        c.rel = Rel::EqZero;
        system.hard.push_back(std::move(c));
      }
    LinearConstraint total;
    for (int j = 0; j <= s; ++j) total.add_term(n_var[j], 1);
    total.constant = -k;
    total.rel = Rel::EqZero;
    system.hard.push_back(std::move(total));
  }

  // Count of dimension-d agents willing to move to class `target`.
  LinearConstraint willing_red(int d, int target, bool weakly) const {
    LinearConstraint expr;
    for (std::size_t i = 0; i < red_orders.size(); ++i) {
      for (int j = 1; j <= s; ++j) {
        if (red_var[d][i][j] < 0) continue;
        const bool wants = weakly ? weakly_prefers(red_orders[i], target, j)
                                  : strictly_prefers(red_orders[i], target, j);
        if (wants) expr.add_term(red_var[d][i][j], 1);
      }
    }
    return expr;
  }

  LinearConstraint willing_blue(int d, int target, bool weakly) const {
    LinearConstraint expr;
    for (std::size_t i = 0; i < blue_orders.size(); ++i)
      for (int j = 0; j <= s - 1; ++j) {
        if (blue_var[d][i][j] < 0) continue;
        const bool wants = weakly ? weakly_prefers(blue_orders[i], target, j)
                                  : strictly_prefers(blue_orders[i], target, j);
        if (wants) expr.add_term(blue_var[d][i][j], 1);
      }
    return expr;
  }

  // Movers within one dimension: class j agents preferring class k.
  LinearConstraint movers_red(int d, int j, int k, bool weakly) const {
    LinearConstraint expr;
    for (std::size_t i = 0; i < red_orders.size(); ++i) {
      if (red_var[d][i][j] < 0) continue;
      const bool wants = weakly ? weakly_prefers(red_orders[i], k, j)
                                : strictly_prefers(red_orders[i], k, j);
      if (wants) expr.add_term(red_var[d][i][j], 1);
    }
    return expr;
  }

  LinearConstraint movers_blue(int d, int j, int k, bool weakly) const {
    LinearConstraint expr;
    for (std::size_t i = 0; i < blue_orders.size(); ++i) {
      if (blue_var[d][i][j] < 0) continue;
      const bool wants = weakly ? weakly_prefers(blue_orders[i], k, j)
                                : strictly_prefers(blue_orders[i], k, j);
      if (wants) expr.add_term(blue_var[d][i][j], 1);
    }
    return expr;
  }

  // 0/1 variable pinned to [count >= 1] for the given count expression.
  int indicator(const std::string& name, LinearConstraint count, Value max_count) {
    if (count.terms.empty() || max_count == 0) return system.add_var(name, 0, 0);
    const int w = system.add_var(name, 0, 1);
    LinearConstraint lower;  // w <= count
    lower.add_term(w, 1);
    for (const auto& [var, coeff] : count.terms) lower.add_term(var, -coeff);
    system.hard.push_back(std::move(lower));
    LinearConstraint upper = std::move(count);  // count <= max_count * w
    upper.add_term(w, -max_count);
    system.hard.push_back(std::move(upper));
    return w;
  }

  // 0/1 variable pinned to x && y.
  int and_var(const std::string& name, int x, int y) {
    const int a = system.add_var(name, 0, 1);
    LinearConstraint c1;  // a <= x
    c1.add_term(a, 1);
    c1.add_term(x, -1);
    system.hard.push_back(std::move(c1));
    LinearConstraint c2;  // a <= y
    c2.add_term(a, 1);
    c2.add_term(y, -1);
    system.hard.push_back(std::move(c2));
    LinearConstraint c3;  // x + y - a <= 1
    c3.add_term(x, 1);
    c3.add_term(y, 1);
    c3.add_term(a, -1);
    c3.constant = -1;
    system.hard.push_back(std::move(c3));
    return a;
  }

  void add_group(std::vector<std::vector<LinearConstraint>> branches) {
    if (branches.empty()) throw InternalError("empty disjunction group");
    if (branches.size() == 1) {
      for (auto& c : branches.front()) system.hard.push_back(std::move(c));
      return;
    }
    system.disjunctions.push_back({std::move(branches)});
  }

  MarriageCountProfile decode(const ilp::Assignment& a) const {
    MarriageCountProfile profile;
    profile.rooms.resize(s + 1);
    for (int j = 0; j <= s; ++j) profile.rooms[j] = a.values[n_var[j]];
    profile.red_counts.assign(
        s, std::vector<std::vector<Value>>(red_orders.size(),
                                           std::vector<Value>(s + 1, 0)));
    profile.blue_counts.assign(
        s, std::vector<std::vector<Value>>(blue_orders.size(),
                                           std::vector<Value>(s + 1, 0)));
    for (int d = 0; d < s; ++d) {
      for (std::size_t i = 0; i < red_orders.size(); ++i)
        for (int j = 1; j <= s; ++j)
          if (red_var[d][i][j] >= 0)
            profile.red_counts[d][i][j] = a.values[red_var[d][i][j]];
      for (std::size_t i = 0; i < blue_orders.size(); ++i)
        for (int j = 0; j <= s - 1; ++j)
          if (blue_var[d][i][j] >= 0)
            profile.blue_counts[d][i][j] = a.values[blue_var[d][i][j]];
    }
    return profile;
  }
};

LinearConstraint eq_zero(LinearConstraint expr) {
  expr.constant = 0;
  expr.rel = Rel::EqZero;
  return expr;
}

LinearConstraint at_most(LinearConstraint expr, Value bound) {
  expr.constant = -bound;
  expr.rel = Rel::LeqZero;
  return expr;
}

void encode_marriage_core(MarriageEncoder& enc, bool strong) {
  const int s = enc.s;
  for (int j = 0; j <= s; ++j) {
    // Per dimension: does it hold a willing red / blue agent for class j?
    std::vector<int> wr(s), wb(s), both(s);
    const std::string tag = std::to_string(j);
    for (int d = 0; d < s; ++d) {
      const Value reds_in_dim = static_cast<Value>(enc.instance.k());
      wr[d] = enc.indicator("wR_" + std::to_string(d + 1) + "_" + tag,
                            enc.willing_red(d, j, strong), reds_in_dim);
      wb[d] = enc.indicator("wB_" + std::to_string(d + 1) + "_" + tag,
                            enc.willing_blue(d, j, strong), reds_in_dim);
      both[d] = enc.and_var("g_" + std::to_string(d + 1) + "_" + tag, wr[d], wb[d]);
    }
    auto sum_of = [](const std::vector<int>& vars, Value constant) {
      LinearConstraint c;
      for (int v : vars) c.add_term(v, 1);
      c.constant = constant;
      return c;
    };
    // A coalition with j reds exists iff dims with willing reds can cover j,
    // dims with willing blues can cover s-j, and every dim is willing.
    std::vector<std::vector<LinearConstraint>> branches;
    if (j >= 1) branches.push_back({at_most(sum_of(wr, 0), j - 1)});
    if (j <= s - 1) branches.push_back({at_most(sum_of(wb, 0), s - j - 1)});
    {
      LinearConstraint cover;
      for (int d = 0; d < s; ++d) {
        cover.add_term(wr[d], 1);
        cover.add_term(wb[d], 1);
        cover.add_term(both[d], -1);
      }
      branches.push_back({at_most(std::move(cover), s - 1)});
    }
    if (strong) {
      // Strong blocking also needs a strictly willing pivot that some valid
      // coalition can include.
      std::vector<int> ur(s), ub(s), srb(s), sbb(s);
      for (int d = 0; d < s; ++d) {
        const Value cap = static_cast<Value>(enc.instance.k());
        ur[d] = enc.indicator("uR_" + std::to_string(d + 1) + "_" + tag,
                              enc.willing_red(d, j, false), cap);
        ub[d] = enc.indicator("uB_" + std::to_string(d + 1) + "_" + tag,
                              enc.willing_blue(d, j, false), cap);
        srb[d] = enc.and_var("sRb_" + std::to_string(d + 1) + "_" + tag, ur[d], wb[d]);
        sbb[d] = enc.and_var("sBr_" + std::to_string(d + 1) + "_" + tag, ub[d], wr[d]);
      }
      // Red pivot unusable: no strict red at all, or every strict red sits in
      // a flexible dimension while all flexible dimensions must stay blue.
      auto unusable = [&](const std::vector<int>& strict, const std::vector<int>& mixed,
                          const std::vector<int>& own_will, Value slots) {
        std::vector<std::vector<LinearConstraint>> cases;
        cases.push_back({eq_zero(sum_of(strict, 0))});
        LinearConstraint only;  // strict agents outside flexible dims
        for (int d = 0; d < s; ++d) {
          only.add_term(strict[d], 1);
          only.add_term(mixed[d], -1);
        }
        LinearConstraint forced;  // slots <= forced own-color dims
        for (int d = 0; d < s; ++d) {
          forced.add_term(own_will[d], -1);
          forced.add_term(both[d], 1);
        }
        cases.push_back({eq_zero(std::move(only)), at_most(std::move(forced), -slots)});
        return cases;
      };
      std::vector<std::vector<LinearConstraint>> red_group = branches;
      for (auto& c : unusable(ur, srb, wr, j)) red_group.push_back(std::move(c));
      std::vector<std::vector<LinearConstraint>> blue_group = std::move(branches);
      for (auto& c : unusable(ub, sbb, wb, s - j)) blue_group.push_back(std::move(c));
      enc.add_group(std::move(red_group));
      enc.add_group(std::move(blue_group));
    } else {
      enc.add_group(std::move(branches));
    }
  }
}

void encode_marriage_exchange(MarriageEncoder& enc, bool strong) {
  const int s = enc.s;
  auto pair_group = [&](LinearConstraint a, LinearConstraint b) {
    if (a.terms.empty() || b.terms.empty()) return;
    enc.add_group({{eq_zero(std::move(a))}, {eq_zero(std::move(b))}});
  };
  for (int d = 0; d < s; ++d) {
    // Different-type swaps within the dimension; same-dimension agents are
    // always in different rooms, so every willing pair deviates.
    for (int j = 1; j <= s; ++j)
      for (int k = 1; k <= s; ++k) {
        pair_group(enc.movers_red(d, j, k, false), enc.movers_blue(d, k - 1, j - 1, strong));
        if (strong)
          pair_group(enc.movers_red(d, j, k, true), enc.movers_blue(d, k - 1, j - 1, false));
      }
    for (int j = 1; j <= s; ++j)
      for (int k = j + 1; k <= s; ++k) {
        pair_group(enc.movers_red(d, j, k, false), enc.movers_red(d, k, j, strong));
        if (strong)
          pair_group(enc.movers_red(d, j, k, true), enc.movers_red(d, k, j, false));
      }
    for (int j = 0; j <= s - 1; ++j)
      for (int k = j + 1; k <= s - 1; ++k) {
        pair_group(enc.movers_blue(d, j, k, false), enc.movers_blue(d, k, j, strong));
        if (strong)
          pair_group(enc.movers_blue(d, j, k, true), enc.movers_blue(d, k, j, false));
      }
  }
}

}  // namespace

std::optional<MarriageOutcome> solve_marriage_existence(const MarriageInstance& instance,
                                                        Concept notion) {
  MarriageEncoder enc(instance);
  switch (notion) {
    case Concept::Core: encode_marriage_core(enc, false); break;
    case Concept::StrongCore: encode_marriage_core(enc, true); break;
    case Concept::Exchange: encode_marriage_exchange(enc, false); break;
    case Concept::StrongExchange: encode_marriage_exchange(enc, true); break;
    default:
      throw UnsupportedError("concept " + std::string(to_string(notion)) +
                             " has no marriage encoding");
  }
  auto assignment = ilp::solve(enc.system);
  if (!assignment) return std::nullopt;
  MarriageOutcome outcome = realize_marriage(instance, enc.decode(*assignment));
  if (!is_marriage_stable(instance, outcome, notion)) {
#ifdef ROOMDIV_DEBUG_MARRIAGE
    std::cerr << ilp::to_text(enc.system);
    for (std::size_t v = 0; v < enc.system.vars.size(); ++v)
      if (assignment->values[v] != 0)
        std::cerr << enc.system.vars[v].name << " = " << assignment->values[v] << "\n";
    std::cerr << serialize_marriage_outcome(outcome) << "\n";
#endif
    throw InternalError("realized marriage outcome fails the " +
                        std::string(to_string(notion)) + " check");
  }
  return outcome;
}

}  // namespace roomdiv
