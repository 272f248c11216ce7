#include "roomdiv/oracle.hpp"

#include <algorithm>

#include "json.hpp"

namespace roomdiv::oracle {

using nlohmann::json;

AnonymousGame AnonymousGame::make(int n,
                                  std::vector<std::vector<std::vector<int>>> prefs) {
  if (n < 1) throw ValidationError("anonymous game needs at least one agent");
  if (static_cast<int>(prefs.size()) != n)
    throw ValidationError("expected one preference order per agent");
  AnonymousGame game;
  game.n = n;
  for (const auto& classes : prefs) {
    std::vector<int> rank(n, -1);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (classes[c].empty()) throw ValidationError("empty indifference class");
      for (int size : classes[c]) {
        if (size < 1 || size > n)
          throw ValidationError("coalition size " + std::to_string(size) +
                                " outside [1," + std::to_string(n) + "]");
        if (rank[size - 1] != -1)
          throw ValidationError("coalition size " + std::to_string(size) +
                                " listed twice");
        rank[size - 1] = static_cast<int>(c);
      }
    }
    for (int size = 1; size <= n; ++size)
      if (rank[size - 1] == -1)
        throw ValidationError("coalition size " + std::to_string(size) +
                              " missing from preference");
    game.ranks_.push_back(std::move(rank));
  }
  game.prefs = std::move(prefs);
  return game;
}

AnonymousGame parse_anonymous_game(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("malformed JSON");
  if (j.value("kind", "") != "anonymous")
    throw ParseError("expected \"kind\":\"anonymous\"");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("missing integer field \"n\"");
  if (!j.contains("prefs") || !j["prefs"].is_array())
    throw ParseError("missing array field \"prefs\"");
  std::vector<std::vector<std::vector<int>>> prefs;
  for (const auto& agent : j["prefs"]) {
    std::vector<std::vector<int>> classes;
    for (const auto& cls : agent) {
      std::vector<int> sizes;
      for (const auto& v : cls) {
        if (!v.is_number_integer()) throw ParseError("sizes must be integers");
        sizes.push_back(v.get<int>());
      }
      classes.push_back(std::move(sizes));
    }
    prefs.push_back(std::move(classes));
  }
  try {
    return AnonymousGame::make(j["n"].get<int>(), std::move(prefs));
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_anonymous_game(const AnonymousGame& game) {
  json prefs = json::array();
  for (const auto& agent : game.prefs) {
    json classes = json::array();
    for (const auto& cls : agent) classes.push_back(cls);
    prefs.push_back(std::move(classes));
  }
  return json{{"kind", "anonymous"}, {"n", game.n}, {"prefs", std::move(prefs)}}.dump();
}

void for_each_set_partition(int n, std::uint64_t budget,
                            const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> label(n, 0);
  std::uint64_t count = 0;
  while (true) {
    if (++count > budget)
      throw BudgetExceeded("set partition budget of " + std::to_string(budget) +
                           " exceeded");
    if (!visit(label)) return;
    // Next restricted growth string.
    int i = n - 1;
    for (; i > 0; --i) {
      int max_prefix = 0;
      for (int t = 0; t < i; ++t) max_prefix = std::max(max_prefix, label[t]);
      if (label[i] <= max_prefix) break;
    }
    if (i == 0) return;
    ++label[i];
    std::fill(label.begin() + i + 1, label.end(), 0);
  }
}

namespace {

bool partition_is_stable(const AnonymousGame& game, const std::vector<int>& label,
                         AnonNotion notion) {
  const int n = game.n;
  int blocks = 0;
  for (int v : label) blocks = std::max(blocks, v + 1);
  std::vector<int> size(blocks, 0);
  for (int v : label) ++size[v];

  if (notion == AnonNotion::Nash) {
    for (int agent = 0; agent < n; ++agent) {
      const int own = size[label[agent]];
      if (own > 1 && game.rank(agent, 1) < game.rank(agent, own)) return false;
      for (int b = 0; b < blocks; ++b) {
        if (b == label[agent] || size[b] == 0) continue;
        if (game.rank(agent, size[b] + 1) < game.rank(agent, own)) return false;
      }
    }
    return true;
  }
  // Core: a blocking group of j agents all strictly preferring size j.
  for (int j = 1; j <= n; ++j) {
    int willing = 0;
    for (int agent = 0; agent < n; ++agent)
      if (game.rank(agent, j) < game.rank(agent, size[label[agent]])) ++willing;
    if (willing >= j) return false;
  }
  return true;
}

}  // namespace

bool anon_stable_exists(const AnonymousGame& game, AnonNotion notion,
                        std::uint64_t budget) {
  bool found = false;
  for_each_set_partition(game.n, budget, [&](const std::vector<int>& label) {
    if (partition_is_stable(game, label, notion)) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

std::optional<Outcome> oracle_exists(const Instance& instance, Concept notion,
                                     std::uint64_t budget) {
  std::optional<Outcome> found;
  for_each_canonical_outcome(instance, budget, [&](const Outcome& outcome) {
    if (is_stable(instance, outcome, notion, budget)) {
      found = outcome;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace roomdiv::oracle
