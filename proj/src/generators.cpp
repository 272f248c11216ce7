#include "roomdiv/generators.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "roomdiv/rng.hpp"

namespace roomdiv::generators {

using nlohmann::json;

X3CInstance X3CInstance::make(int m, std::vector<std::array<int, 3>> sets) {
  if (m < 3 || m % 3 != 0)
    throw ValidationError("ground set size must be a positive multiple of 3");
  for (const auto& set : sets) {
    std::set<int> unique(set.begin(), set.end());
    if (unique.size() != 3) throw ValidationError("sets must hold 3 distinct elements");
    for (int v : set)
      if (v < 1 || v > m)
        throw ValidationError("element " + std::to_string(v) + " outside [1," +
                              std::to_string(m) + "]");
  }
  if (sets.empty()) throw ValidationError("the collection must not be empty");
  return X3CInstance{m, std::move(sets)};
}

X3CInstance parse_x3c(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("malformed JSON");
  if (j.value("kind", "") != "x3c") throw ParseError("expected \"kind\":\"x3c\"");
  if (!j.contains("m") || !j["m"].is_number_integer())
    throw ParseError("missing integer field \"m\"");
  if (!j.contains("sets") || !j["sets"].is_array())
    throw ParseError("missing array field \"sets\"");
  std::vector<std::array<int, 3>> sets;
  for (const auto& entry : j["sets"]) {
    if (!entry.is_array() || entry.size() != 3)
      throw ParseError("each set must be an array of 3 elements");
    std::array<int, 3> set{};
    for (int t = 0; t < 3; ++t) {
      if (!entry[t].is_number_integer()) throw ParseError("elements must be integers");
      set[t] = entry[t].get<int>();
    }
    sets.push_back(set);
  }
  try {
    return X3CInstance::make(j["m"].get<int>(), std::move(sets));
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_x3c(const X3CInstance& x3c) {
  json sets = json::array();
  for (const auto& set : x3c.sets) sets.push_back(std::vector<int>(set.begin(), set.end()));
  return json{{"kind", "x3c"}, {"m", x3c.m}, {"sets", std::move(sets)}}.dump();
}

namespace {

std::string pad(int value, int width) {
  std::string text = std::to_string(value);
  while (static_cast<int>(text.size()) < width) text.insert(text.begin(), '0');
  return text;
}

int digits(int value) { return static_cast<int>(std::to_string(value).size()); }

// Classes listed best first; the remaining numerators land in one bottom
// class. Optionally linearized into singletons by ascending numerator.
WeakOrder order_with_tail(std::vector<std::vector<int>> classes, int s, bool break_ties) {
  std::set<int> used;
  for (const auto& cls : classes)
    for (int v : cls) used.insert(v);
  std::vector<int> tail;
  for (int v = 0; v <= s; ++v)
    if (!used.count(v)) tail.push_back(v);
  if (!tail.empty()) classes.push_back(std::move(tail));
  if (break_ties) {
    std::vector<std::vector<int>> strict;
    for (auto& cls : classes) {
      std::sort(cls.begin(), cls.end());
      for (int v : cls) strict.push_back({v});
    }
    classes = std::move(strict);
  }
  return WeakOrder::from_classes(std::move(classes), s);
}

// The red agents shared by both anonymous-game reductions: the game order
// over sizes 1..n becomes the order over numerators, with 0 ranked last.
std::vector<Agent> reduction_reds(const oracle::AnonymousGame& game) {
  const int s = game.n;
  std::vector<Agent> reds;
  const int width = digits(game.n);
  for (int i = 0; i < game.n; ++i) {
    std::vector<std::vector<int>> classes = game.prefs[i];
    classes.push_back({0});
    reds.push_back(
        {"r" + pad(i + 1, width), Color::Red, WeakOrder::from_classes(classes, s)});
  }
  return reds;
}

}  // namespace

Instance reduce_anon_core(const oracle::AnonymousGame& game) {
  const int s = game.n;
  std::vector<Agent> agents = reduction_reds(game);
  const int copies = s * s;
  for (int i = 1; i <= s; ++i)
    for (int copy = 1; copy <= copies; ++copy) {
      std::vector<std::vector<int>> classes{{i}};
      if (i != 0) classes.push_back({0});
      agents.push_back({"b" + pad(i, digits(s)) + "_" + pad(copy, digits(copies)),
                        Color::Blue, order_with_tail(std::move(classes), s, false)});
    }
  return Instance::make(s, std::move(agents));
}

Instance reduce_anon_nash(const oracle::AnonymousGame& game) {
  if (game.n < 2) throw ValidationError("the Nash reduction needs at least 2 agents");
  const int s = game.n;
  std::vector<Agent> agents = reduction_reds(game);
  const int blues = s * s - s;
  for (int copy = 1; copy <= blues; ++copy)
    agents.push_back(
        {"b" + pad(copy, digits(blues)), Color::Blue, WeakOrder::indifferent(s)});
  return Instance::make(s, std::move(agents));
}

namespace {

struct X3CArtifacts {
  std::vector<Agent> agents;
  std::vector<std::string> set_agents;                  // by element, 1-based at 0
  std::vector<std::vector<std::string>> redundant;      // by set index
  std::vector<std::vector<std::string>> filling;        // by set index
  std::vector<std::vector<std::string>> additional;     // by set index
  std::vector<std::string> padding;
};

X3CArtifacts build_x3c(const X3CInstance& x3c, bool break_ties) {
  const int m = x3c.m;
  const int q = static_cast<int>(x3c.sets.size());
  const int s = 5 * q + 1;

  std::vector<std::vector<int>> indices_of(m);  // J^i, 1-based set indices
  for (int j = 0; j < q; ++j)
    for (int element : x3c.sets[j]) indices_of[element - 1].push_back(j + 1);

  X3CArtifacts out;
  out.redundant.resize(q);
  out.filling.resize(q);
  out.additional.resize(q);
  const int wq = digits(q);
  const int wm = digits(m);

  for (int i = 1; i <= m; ++i) {
    std::vector<std::vector<int>> classes;
    std::vector<int> top;
    for (int j : indices_of[i - 1]) top.push_back(5 * j + 1);
    if (!top.empty()) classes.push_back(std::move(top));
    classes.push_back({1});
    const std::string id = "rset" + pad(i, wm);
    out.set_agents.push_back(id);
    out.agents.push_back({id, Color::Red, order_with_tail(std::move(classes), s, break_ties)});
  }
  for (int j = 1; j <= q; ++j) {
    const int w = digits(5 * q - 2);
    for (int p = 1; p <= 5 * j - 2; ++p) {
      const std::string id = "rred" + pad(j, wq) + "_" + pad(p, w);
      out.redundant[j - 1].push_back(id);
      out.agents.push_back(
          {id, Color::Red,
           order_with_tail({{5 * j - 2, 5 * j + 1}, {1}}, s, break_ties)});
    }
    for (int p = 1; p <= s - (5 * j + 1); ++p) {
      const std::string id = "bfill" + pad(j, wq) + "_" + pad(p, digits(s));
      out.filling[j - 1].push_back(id);
      out.agents.push_back(
          {id, Color::Blue,
           order_with_tail({{5 * j - 2, 5 * j + 1}, {0}}, s, break_ties)});
    }
    for (int p = 1; p <= 3; ++p) {
      const std::string id = "badd" + pad(j, wq) + "_" + std::to_string(p);
      out.additional[j - 1].push_back(id);
      out.agents.push_back(
          {id, Color::Blue, order_with_tail({{5 * j - 2}, {0}}, s, break_ties)});
    }
  }
  int reds = 0;
  for (const auto& a : out.agents)
    if (a.color == Color::Red) ++reds;
  // s pure-loving blue agents per red agent, then pad to divisibility.
  int extra = s * reds;
  extra += (s - (static_cast<int>(out.agents.size()) + extra) % s) % s;
  const int wpad = digits(extra);
  for (int p = 1; p <= extra; ++p) {
    const std::string id = "bpad" + pad(p, wpad);
    out.padding.push_back(id);
    out.agents.push_back({id, Color::Blue, order_with_tail({{0}}, s, break_ties)});
  }
  return out;
}

}  // namespace

Instance reduce_x3c(const X3CInstance& x3c, bool break_ties) {
  X3CArtifacts artifacts = build_x3c(x3c, break_ties);
  return Instance::make(5 * static_cast<int>(x3c.sets.size()) + 1,
                        std::move(artifacts.agents));
}

Outcome x3c_cover_outcome(const X3CInstance& x3c, const std::vector<int>& cover,
                          bool break_ties) {
  const int q = static_cast<int>(x3c.sets.size());
  const int s = 5 * q + 1;
  std::vector<bool> in_cover(q, false);
  std::vector<bool> covered(x3c.m, false);
  for (int j : cover) {
    if (j < 0 || j >= q) throw ValidationError("cover index out of range");
    in_cover[j] = true;
    for (int element : x3c.sets[j]) {
      if (covered[element - 1])
        throw ValidationError("cover sets overlap on element " + std::to_string(element));
      covered[element - 1] = true;
    }
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end())
    throw ValidationError("the given sets do not cover the ground set");

  X3CArtifacts artifacts = build_x3c(x3c, break_ties);
  Outcome outcome;
  std::vector<std::string> leftovers = artifacts.padding;
  for (int j = 0; j < q; ++j) {
    std::vector<std::string> room = artifacts.redundant[j];
    room.insert(room.end(), artifacts.filling[j].begin(), artifacts.filling[j].end());
    if (in_cover[j]) {
      for (int element : x3c.sets[j])
        room.push_back(artifacts.set_agents[element - 1]);
      leftovers.insert(leftovers.end(), artifacts.additional[j].begin(),
                       artifacts.additional[j].end());
    } else {
      room.insert(room.end(), artifacts.additional[j].begin(),
                  artifacts.additional[j].end());
    }
    outcome.rooms.push_back(std::move(room));
  }
  std::sort(leftovers.begin(), leftovers.end());
  for (std::size_t i = 0; i < leftovers.size(); i += s)
    outcome.rooms.emplace_back(leftovers.begin() + i, leftovers.begin() + i + s);
  return outcome;
}

namespace {

WeakOrder random_order(int s, PrefClassKind kind, Rng& rng) {
  switch (kind) {
    case PrefClassKind::Strict: {
      std::vector<int> values(s + 1);
      for (int v = 0; v <= s; ++v) values[v] = v;
      rng.shuffle(values);
      std::vector<std::vector<int>> classes;
      for (int v : values) classes.push_back({v});
      return WeakOrder::from_classes(std::move(classes), s);
    }
    case PrefClassKind::Unrestricted: {
      std::vector<int> values(s + 1);
      for (int v = 0; v <= s; ++v) values[v] = v;
      rng.shuffle(values);
      std::vector<std::vector<int>> classes{{values[0]}};
      for (int i = 1; i <= s; ++i) {
        if (rng.coin())
          classes.back().push_back(values[i]);
        else
          classes.push_back({values[i]});
      }
      return WeakOrder::from_classes(std::move(classes), s);
    }
    case PrefClassKind::Dichotomous: {
      const std::uint64_t mask = rng.below(1ull << (s + 1));
      std::vector<int> approved, rest;
      for (int v = 0; v <= s; ++v)
        (mask & (1ull << v) ? approved : rest).push_back(v);
      std::vector<std::vector<int>> classes;
      if (!approved.empty()) classes.push_back(std::move(approved));
      if (!rest.empty()) classes.push_back(std::move(rest));
      return WeakOrder::from_classes(std::move(classes), s);
    }
    case PrefClassKind::SinglePeaked: {
      const int peak = rng.range(0, s);
      std::vector<int> strict{peak};
      int left = peak - 1, right = peak + 1;
      while (left >= 0 || right <= s) {
        if (left < 0)
          strict.push_back(right++);
        else if (right > s)
          strict.push_back(left--);
        else if (rng.coin())
          strict.push_back(right++);
        else
          strict.push_back(left--);
      }
      // Coarsening a strict single-peaked order keeps it single-peaked.
      std::vector<std::vector<int>> classes{{strict[0]}};
      for (int i = 1; i <= s; ++i) {
        if (rng.chance(1, 4))
          classes.back().push_back(strict[i]);
        else
          classes.push_back({strict[i]});
      }
      return WeakOrder::from_classes(std::move(classes), s);
    }
  }
  throw UnsupportedError("unknown preference class");
}

}  // namespace

Instance random_instance(int s, int k, PrefClassKind kind, int red_count,
                         std::uint64_t seed) {
  if (s < 1 || k < 0) throw ValidationError("invalid instance shape");
  if (red_count < 0 || red_count > s * k)
    throw ValidationError("red count " + std::to_string(red_count) +
                          " outside [0," + std::to_string(s * k) + "]");
  Rng rng(seed);
  std::vector<Agent> agents;
  const int n = s * k;
  const int width = digits(std::max(n, 1));
  for (int i = 0; i < n; ++i) {
    const bool red = i < red_count;
    agents.push_back({(red ? "r" : "b") + pad(red ? i + 1 : i - red_count + 1, width),
                      red ? Color::Red : Color::Blue, random_order(s, kind, rng)});
  }
  return Instance::make(s, std::move(agents));
}

}  // namespace roomdiv::generators
