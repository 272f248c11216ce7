#include "fixtures.hpp"

namespace roomdiv::fixtures {

WeakOrder strict_order(std::vector<int> ranking, int s) {
  std::vector<std::vector<int>> classes;
  for (int v : ranking) classes.push_back({v});
  return WeakOrder::from_classes(std::move(classes), s);
}

Instance thm2_instance() {
  const int s = 4;
  const WeakOrder majority = strict_order({2, 4, 3, 1, 0}, s);
  const WeakOrder outlier = strict_order({4, 1, 2, 3, 0}, s);
  const WeakOrder blue = strict_order({1, 2, 3, 0, 4}, s);
  std::vector<Agent> agents;
  for (int i = 1; i <= 3; ++i)
    agents.push_back({"r" + std::to_string(i), Color::Red, majority});
  agents.push_back({"r4", Color::Red, outlier});
  for (int i = 1; i <= 4; ++i)
    agents.push_back({"b" + std::to_string(i), Color::Blue, blue});
  return Instance::make(s, std::move(agents));
}

Instance thm7_instance() {
  const int s = 3;
  const WeakOrder red_high = strict_order({3, 2, 1, 0}, s);
  const WeakOrder red_mid = strict_order({2, 1, 3, 0}, s);
  const WeakOrder blue_pure = strict_order({0, 1, 2, 3}, s);
  const WeakOrder blue_mixed = strict_order({1, 2, 0, 3}, s);
  std::vector<Agent> agents;
  for (int i = 1; i <= 2; ++i)
    agents.push_back({"r" + std::to_string(i), Color::Red, red_high});
  for (int i = 3; i <= 5; ++i)
    agents.push_back({"r" + std::to_string(i), Color::Red, red_mid});
  agents.push_back({"b1", Color::Blue, blue_pure});
  for (int i = 2; i <= 4; ++i)
    agents.push_back({"b" + std::to_string(i), Color::Blue, blue_mixed});
  return Instance::make(s, std::move(agents));
}

Instance thm11_instance() {
  const int s = 2;
  std::vector<Agent> agents;
  agents.push_back({"r1", Color::Red, strict_order({2, 1, 0}, s)});
  for (int i = 1; i <= 3; ++i)
    agents.push_back({"b" + std::to_string(i), Color::Blue, strict_order({0, 1, 2}, s)});
  return Instance::make(s, std::move(agents));
}

MarriageInstance thm18_instance() {
  const int s = 2;
  std::vector<MarriageAgent> agents;
  agents.push_back({"r1", Color::Red, 1, strict_order({2, 1, 0}, s)});
  agents.push_back({"r2", Color::Red, 2, strict_order({1, 2, 0}, s)});
  agents.push_back({"b1", Color::Blue, 1, strict_order({0, 1, 2}, s)});
  agents.push_back({"b2", Color::Blue, 2, strict_order({1, 0, 2}, s)});
  return MarriageInstance::make(s, std::move(agents));
}

MarriageInstance random_marriage_instance(int s, int k, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<MarriageAgent> agents;
  int counter = 0;
  for (int d = 1; d <= s; ++d)
    for (int t = 0; t < k; ++t) {
      const bool red = rng.coin();
      std::vector<int> values(s + 1);
      for (int v = 0; v <= s; ++v) values[v] = v;
      rng.shuffle(values);
      std::vector<std::vector<int>> classes{{values[0]}};
      for (int i = 1; i <= s; ++i) {
        if (rng.chance(1, 3))
          classes.back().push_back(values[i]);
        else
          classes.push_back({values[i]});
      }
      ++counter;
      agents.push_back({(red ? "r" : "b") + std::to_string(100 + counter),
                        red ? Color::Red : Color::Blue, d,
                        WeakOrder::from_classes(std::move(classes), s)});
    }
  return MarriageInstance::make(s, std::move(agents));
}

oracle::AnonymousGame random_anonymous_game(int n, std::uint64_t seed, bool strict) {
  Rng rng(seed);
  std::vector<std::vector<std::vector<int>>> prefs;
  for (int agent = 0; agent < n; ++agent) {
    std::vector<int> sizes(n);
    for (int v = 0; v < n; ++v) sizes[v] = v + 1;
    rng.shuffle(sizes);
    std::vector<std::vector<int>> classes{{sizes[0]}};
    for (int i = 1; i < n; ++i) {
      if (!strict && rng.coin())
        classes.back().push_back(sizes[i]);
      else
        classes.push_back({sizes[i]});
    }
    prefs.push_back(std::move(classes));
  }
  return oracle::AnonymousGame::make(n, std::move(prefs));
}

}  // namespace roomdiv::fixtures
