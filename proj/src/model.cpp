#include "roomdiv/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace roomdiv {

using nlohmann::json;

std::string_view to_string(Color c) { return c == Color::Red ? "red" : "blue"; }

Color color_from_string(std::string_view s) {
  if (s == "red") return Color::Red;
  if (s == "blue") return Color::Blue;
  throw ParseError("unknown color: " + std::string(s));
}

WeakOrder WeakOrder::from_classes(std::vector<std::vector<int>> classes, int s) {
  if (s < 0) throw ValidationError("negative room size");
  WeakOrder order;
  order.rank_.assign(static_cast<std::size_t>(s) + 1, -1);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty()) throw ValidationError("empty indifference class");
    std::sort(classes[c].begin(), classes[c].end());
    for (int v : classes[c]) {
      if (v < 0 || v > s)
        throw ValidationError("numerator " + std::to_string(v) + " outside [0," +
                              std::to_string(s) + "]");
      if (order.rank_[v] != -1)
        throw ValidationError("numerator " + std::to_string(v) + " listed twice");
      order.rank_[v] = static_cast<int>(c);
    }
  }
  for (int v = 0; v <= s; ++v)
    if (order.rank_[v] == -1)
      throw ValidationError("numerator " + std::to_string(v) + " missing from preference");
  order.classes_ = std::move(classes);
  return order;
}

WeakOrder WeakOrder::indifferent(int s) {
  std::vector<int> all;
  for (int v = 0; v <= s; ++v) all.push_back(v);
  return from_classes({all}, s);
}

int WeakOrder::rank(int numerator) const {
  if (numerator < 0 || numerator >= static_cast<int>(rank_.size()))
    throw ValidationError("numerator " + std::to_string(numerator) + " out of range");
  return rank_[numerator];
}

Preference compare(const WeakOrder& order, int a, int c) {
  const int ra = order.rank(a);
  const int rc = order.rank(c);
  if (ra < rc) return Preference::StrictlyBetter;
  if (ra > rc) return Preference::StrictlyWorse;
  return Preference::Indifferent;
}

Instance Instance::make(int s, std::vector<Agent> agents) {
  if (s < 1) throw ValidationError("room size must be at least 1");
  if (agents.size() % static_cast<std::size_t>(s) != 0)
    throw ValidationError("number of agents (" + std::to_string(agents.size()) +
                          ") not divisible by room size " + std::to_string(s));
  Instance inst;
  inst.s_ = s;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const Agent& a = agents[i];
    if (a.id.empty()) throw ValidationError("empty agent id");
    if (a.pref.domain_size() != s + 1)
      throw ValidationError("agent " + a.id + ": preference does not span [0," +
                            std::to_string(s) + "]");
    if (!inst.index_.emplace(a.id, static_cast<int>(i)).second)
      throw ValidationError("duplicate agent id: " + a.id);
    if (a.color == Color::Red) ++inst.red_count_;
  }
  inst.agents_ = std::move(agents);
  return inst;
}

bool Instance::has_agent(std::string_view id) const {
  return index_.find(id) != index_.end();
}

int Instance::agent_index(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ValidationError("unknown agent id: " + std::string(id));
  return it->second;
}

Outcome normalized(Outcome outcome) {
  for (auto& room : outcome.rooms) std::sort(room.begin(), room.end());
  std::sort(outcome.rooms.begin(), outcome.rooms.end());
  return outcome;
}

int theta(const std::vector<std::string>& room, const Instance& instance) {
  if (static_cast<int>(room.size()) != instance.s())
    throw ValidationError("room has " + std::to_string(room.size()) +
                          " members, expected " + std::to_string(instance.s()));
  int reds = 0;
  for (const auto& id : room)
    if (instance.agent(id).color == Color::Red) ++reds;
  return reds;
}

bool agent_strict(const WeakOrder& order) {
  for (const auto& cls : order.classes())
    if (cls.size() > 1) return false;
  return true;
}

bool agent_dichotomous(const WeakOrder& order) { return order.classes().size() <= 2; }

bool agent_single_peaked(const WeakOrder& order) {
  const int s = order.domain_size() - 1;
  for (int peak = 0; peak <= s; ++peak) {
    bool ok = true;
    // Walking away from the peak on either side may never improve the rank.
    for (int a = peak; a + 1 <= s && ok; ++a)
      if (order.rank(a) > order.rank(a + 1)) ok = false;
    for (int a = peak; a - 1 >= 0 && ok; --a)
      if (order.rank(a) > order.rank(a - 1)) ok = false;
    if (ok) return true;
  }
  return false;
}

PrefClass classify(const Instance& instance) {
  PrefClass result{true, true, true};
  for (const Agent& a : instance.agents()) {
    result.strict = result.strict && agent_strict(a.pref);
    result.dichotomous = result.dichotomous && agent_dichotomous(a.pref);
    result.single_peaked = result.single_peaked && agent_single_peaked(a.pref);
  }
  return result;
}

void validate_outcome(const Instance& instance, const Outcome& outcome) {
  if (static_cast<int>(outcome.rooms.size()) != instance.k())
    throw ValidationError("outcome has " + std::to_string(outcome.rooms.size()) +
                          " rooms, expected " + std::to_string(instance.k()));
  std::set<std::string> seen;
  for (const auto& room : outcome.rooms) {
    if (static_cast<int>(room.size()) != instance.s())
      throw ValidationError("room has " + std::to_string(room.size()) +
                            " members, expected " + std::to_string(instance.s()));
    for (const auto& id : room) {
      if (!instance.has_agent(id)) throw ValidationError("unknown agent id: " + id);
      if (!seen.insert(id).second) throw ValidationError("agent " + id + " placed twice");
    }
  }
  // seen.size() == n follows from k rooms of size s with no duplicates.
}

namespace {

json order_to_json(const WeakOrder& order) {
  json classes = json::array();
  for (const auto& cls : order.classes()) classes.push_back(cls);
  return classes;
}

WeakOrder order_from_json(const json& j, int s) {
  if (!j.is_array()) throw ParseError("pref must be an array of arrays");
  std::vector<std::vector<int>> classes;
  for (const auto& cls : j) {
    if (!cls.is_array()) throw ParseError("pref class must be an array");
    std::vector<int> numerators;
    for (const auto& v : cls) {
      if (!v.is_number_integer()) throw ParseError("pref entries must be integers");
      numerators.push_back(v.get<int>());
    }
    classes.push_back(std::move(numerators));
  }
  try {
    return WeakOrder::from_classes(std::move(classes), s);
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  if (j.value("kind", "") != "roommate")
    throw ParseError("expected \"kind\":\"roommate\"");
  if (!j.contains("s") || !j["s"].is_number_integer())
    throw ParseError("missing integer field \"s\"");
  const int s = j["s"].get<int>();
  if (!j.contains("agents") || !j["agents"].is_array())
    throw ParseError("missing array field \"agents\"");
  std::vector<Agent> agents;
  for (const auto& entry : j["agents"]) {
    Agent a;
    if (!entry.contains("id") || !entry["id"].is_string())
      throw ParseError("agent missing string field \"id\"");
    a.id = entry["id"].get<std::string>();
    if (!entry.contains("color") || !entry["color"].is_string())
      throw ParseError("agent missing string field \"color\"");
    a.color = color_from_string(entry["color"].get<std::string>());
    if (!entry.contains("pref")) throw ParseError("agent missing field \"pref\"");
    a.pref = order_from_json(entry["pref"], s);
    agents.push_back(std::move(a));
  }
  try {
    return Instance::make(s, std::move(agents));
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_instance(const Instance& instance) {
  json agents = json::array();
  for (const Agent& a : instance.agents()) {
    agents.push_back({{"id", a.id},
                      {"color", std::string(to_string(a.color))},
                      {"pref", order_to_json(a.pref)}});
  }
  json j{{"kind", "roommate"}, {"s", instance.s()}, {"agents", std::move(agents)}};
  return j.dump();
}

Outcome parse_outcome(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object() || !j.contains("rooms") || !j["rooms"].is_array())
    throw ParseError("outcome must be an object with array field \"rooms\"");
  Outcome outcome;
  for (const auto& room : j["rooms"]) {
    if (!room.is_array()) throw ParseError("room must be an array of agent ids");
    std::vector<std::string> ids;
    for (const auto& id : room) {
      if (!id.is_string()) throw ParseError("agent id must be a string");
      ids.push_back(id.get<std::string>());
    }
    outcome.rooms.push_back(std::move(ids));
  }
  return outcome;
}

std::string serialize_outcome(const Outcome& outcome) {
  json rooms = json::array();
  for (const auto& room : outcome.rooms) rooms.push_back(room);
  return json{{"rooms", std::move(rooms)}}.dump();
}

std::vector<AgentProfile> profile_groups(const Instance& instance) {
  std::map<std::pair<int, WeakOrder>, std::vector<std::string>> groups;
  for (const Agent& a : instance.agents())
    groups[{a.color == Color::Red ? 0 : 1, a.pref}].push_back(a.id);
  std::vector<AgentProfile> result;
  for (auto& [key, ids] : groups) {
    std::sort(ids.begin(), ids.end());
    result.push_back({key.first == 0 ? Color::Red : Color::Blue, key.second, std::move(ids)});
  }
  return result;
}

}  // namespace roomdiv
