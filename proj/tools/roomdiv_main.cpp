#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "roomdiv/construct.hpp"
#include "roomdiv/fpt.hpp"
#include "roomdiv/generators.hpp"
#include "roomdiv/marriage.hpp"
#include "roomdiv/oracle.hpp"
#include "roomdiv/verify.hpp"

namespace {

using nlohmann::json;
using namespace roomdiv;

constexpr int kExitStable = 0;
constexpr int kExitUnstable = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json rooms_json(const std::vector<std::vector<std::string>>& rooms) {
  json out = json::array();
  for (const auto& room : rooms) out.push_back(room);
  return out;
}

json witness_json(const BlockingWitness& w) {
  return {{"type", "blocking"},
          {"numerator", w.numerator},
          {"red", w.red_members},
          {"blue", w.blue_members},
          {"weak", w.weak}};
}

json witness_json(const SwapWitness& w) {
  return {{"type", "swap"},
          {"a", w.a},
          {"b", w.b},
          {"kind", w.kind == SwapWitness::Kind::SameType ? "same_type" : "different_type"},
          {"weak", w.weak}};
}

json witness_json(const EnvyWitness& w) {
  return {{"type", "envy"}, {"envier", w.envier}, {"envied", w.envied}};
}

Concept parse_concept(const std::string& name) {
  auto notion = concept_from_string(name);
  if (!notion) throw UnsupportedError("unknown concept: " + name);
  return *notion;
}

int report_check(std::optional<json> witness) {
  if (witness) {
    std::cout << json{{"stable", false}, {"witness", *witness}}.dump() << "\n";
    return kExitUnstable;
  }
  std::cout << json{{"stable", true}}.dump() << "\n";
  return kExitStable;
}

int cmd_check(const std::string& instance_path, const std::string& outcome_path,
              const std::string& concept_name, std::uint64_t budget) {
  const Concept notion = parse_concept(concept_name);
  const std::string text = read_file(instance_path);
  const std::string outcome_text = read_file(outcome_path);
  if (instance_kind(text) == "marriage") {
    const MarriageInstance instance = parse_marriage_instance(text);
    const MarriageOutcome outcome = parse_marriage_outcome(outcome_text);
    switch (notion) {
      case Concept::Core:
      case Concept::StrongCore: {
        auto w = find_blocking_marriage(instance, outcome, notion == Concept::StrongCore);
        return report_check(w ? std::optional<json>(witness_json(*w)) : std::nullopt);
      }
      case Concept::Exchange:
      case Concept::StrongExchange: {
        auto w = find_exchange_marriage(instance, outcome, notion == Concept::StrongExchange);
        return report_check(w ? std::optional<json>(witness_json(*w)) : std::nullopt);
      }
      default:
        throw UnsupportedError("concept " + concept_name +
                               " is not defined for the marriage model");
    }
  }
  const Instance instance = parse_instance(text);
  const Outcome outcome = parse_outcome(outcome_text);
  switch (notion) {
    case Concept::Core:
    case Concept::StrongCore: {
      auto w = find_blocking(instance, outcome, notion == Concept::StrongCore);
      return report_check(w ? std::optional<json>(witness_json(*w)) : std::nullopt);
    }
    case Concept::Exchange:
    case Concept::StrongExchange: {
      auto w = find_exchange_deviation(instance, outcome, Scope::Any,
                                       notion == Concept::StrongExchange);
      return report_check(w ? std::optional<json>(witness_json(*w)) : std::nullopt);
    }
    case Concept::SameTypeExchange:
    case Concept::StrongSameTypeExchange: {
      auto w = find_exchange_deviation(instance, outcome, Scope::SameType,
                                       notion == Concept::StrongSameTypeExchange);
      return report_check(w ? std::optional<json>(witness_json(*w)) : std::nullopt);
    }
    case Concept::EnvyFree:
    case Concept::SameTypeEnvyFree: {
      auto w = find_envy(instance, outcome,
                         notion == Concept::SameTypeEnvyFree ? Scope::SameType : Scope::Any);
      return report_check(w ? std::optional<json>(witness_json(*w)) : std::nullopt);
    }
    case Concept::Pareto: {
      auto better = find_pareto_improvement(instance, outcome, budget);
      return report_check(better ? std::optional<json>(json{{"type", "pareto_improvement"},
                                                            {"rooms", rooms_json(better->rooms)}})
                                 : std::nullopt);
    }
  }
  throw UnsupportedError("unknown concept");
}

int report_solve(const std::optional<std::vector<std::vector<std::string>>>& rooms) {
  if (rooms) {
    std::cout << json{{"exists", true}, {"rooms", rooms_json(*rooms)}}.dump() << "\n";
    return kExitStable;
  }
  std::cout << json{{"exists", false}}.dump() << "\n";
  return kExitUnstable;
}

std::optional<Outcome> solve_by_construction(const Instance& instance, Concept notion,
                                             std::uint64_t budget) {
  switch (notion) {
    case Concept::Core:
      if (instance.s() == 2) return solve_size_two(instance);
      if (classify(instance).dichotomous) return solve_dichotomous_core(instance);
      throw UnsupportedError(
          "constructive core solving needs room size 2 or dichotomous preferences");
    case Concept::Exchange:
      if (instance.s() == 2) return solve_size_two(instance);
      throw UnsupportedError("constructive exchange solving needs room size 2");
    case Concept::SameTypeExchange:
    case Concept::StrongSameTypeExchange: {
      std::vector<std::string> ids;
      for (const Agent& a : instance.agents()) ids.push_back(a.id);
      std::sort(ids.begin(), ids.end());
      Outcome start;
      for (int i = 0; i < instance.k(); ++i)
        start.rooms.emplace_back(ids.begin() + i * instance.s(),
                                 ids.begin() + (i + 1) * instance.s());
      return local_search_same_type(instance, start,
                                    notion == Concept::StrongSameTypeExchange);
    }
    case Concept::SameTypeEnvyFree: return solve_same_type_envy_free(instance);
    case Concept::Pareto: return pareto_optimal_outcome(instance, budget);
    default:
      throw UnsupportedError("no constructive algorithm for concept " +
                             std::string(to_string(notion)));
  }
}

bool construction_applies(const Instance& instance, Concept notion) {
  switch (notion) {
    case Concept::Core:
      return instance.s() == 2 || classify(instance).dichotomous;
    case Concept::Exchange: return instance.s() == 2;
    case Concept::SameTypeExchange:
    case Concept::StrongSameTypeExchange:
    case Concept::Pareto: return true;
    case Concept::SameTypeEnvyFree: return classify(instance).strict;
    default: return false;
  }
}

int cmd_solve(const std::string& instance_path, const std::string& concept_name,
              const std::string& method, std::uint64_t budget) {
  const Concept notion = parse_concept(concept_name);
  const std::string text = read_file(instance_path);
  if (instance_kind(text) == "marriage") {
    const MarriageInstance instance = parse_marriage_instance(text);
    if (method == "construct")
      throw UnsupportedError("no constructive algorithm for the marriage model");
    if (method == "oracle") {
      std::optional<MarriageOutcome> found;
      for_each_marriage_outcome(instance, budget, [&](const MarriageOutcome& outcome) {
        if (is_marriage_stable(instance, outcome, notion)) {
          found = outcome;
          return false;
        }
        return true;
      });
      return report_solve(found ? std::optional(found->rooms) : std::nullopt);
    }
    auto outcome = solve_marriage_existence(instance, notion);
    return report_solve(outcome ? std::optional(outcome->rooms) : std::nullopt);
  }

  const Instance instance = parse_instance(text);
  std::optional<Outcome> outcome;
  if (method == "oracle") {
    outcome = oracle::oracle_exists(instance, notion, budget);
  } else if (method == "construct") {
    outcome = solve_by_construction(instance, notion, budget);
  } else if (method == "ilp") {
    outcome = fpt::solve_existence(instance, notion);
  } else {  // auto
    if (construction_applies(instance, notion))
      outcome = solve_by_construction(instance, notion, budget);
    else
      outcome = fpt::solve_existence(instance, notion);
  }
  return report_solve(outcome ? std::optional(outcome->rooms) : std::nullopt);
}

int cmd_enumerate(const std::string& instance_path, std::uint64_t budget) {
  const std::string text = read_file(instance_path);
  if (instance_kind(text) == "marriage") {
    const MarriageInstance instance = parse_marriage_instance(text);
    for_each_marriage_outcome(instance, budget, [](const MarriageOutcome& outcome) {
      std::cout << json{{"rooms", rooms_json(outcome.rooms)}}.dump() << "\n";
      return true;
    });
    return kExitStable;
  }
  const Instance instance = parse_instance(text);
  for_each_canonical_outcome(instance, budget, [](const Outcome& outcome) {
    std::cout << json{{"rooms", rooms_json(outcome.rooms)}}.dump() << "\n";
    return true;
  });
  return kExitStable;
}

int cmd_classify(const std::string& instance_path) {
  const Instance instance = parse_instance(read_file(instance_path));
  const PrefClass result = classify(instance);
  std::cout << json{{"strict", result.strict},
                    {"dichotomous", result.dichotomous},
                    {"single_peaked", result.single_peaked}}
                   .dump()
            << "\n";
  return kExitStable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver toolkit for roommate and marriage diversity problems"};
  app.require_subcommand(1);

  std::string instance_path, outcome_path, concept_name, method = "auto";
  std::uint64_t budget = kDefaultOutcomeBudget;

  auto* check = app.add_subcommand("check", "Verify an outcome against a notion");
  check->add_option("--instance", instance_path)->required();
  check->add_option("--outcome", outcome_path)->required();
  check->add_option("--notion", concept_name)->required();
  check->add_option("--max-outcomes", budget);

  auto* solve = app.add_subcommand("solve", "Decide existence and produce an outcome");
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--notion", concept_name)->required();
  solve->add_option("--method", method)
      ->check(CLI::IsMember({"auto", "ilp", "oracle", "construct"}));
  solve->add_option("--max-outcomes", budget);

  auto* enumerate = app.add_subcommand("enumerate", "List canonical outcomes");
  enumerate->add_option("--instance", instance_path)->required();
  enumerate->add_option("--max-outcomes", budget);

  auto* classify_cmd = app.add_subcommand("classify", "Report preference restrictions");
  classify_cmd->add_option("--instance", instance_path)->required();

  auto* generate = app.add_subcommand("generate", "Produce instances");
  generate->require_subcommand(1);
  std::string game_path, x3c_path;
  bool break_ties = false;
  int gen_s = 2, gen_k = 1, gen_red = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_class = "unrestricted";

  auto* anon_core = generate->add_subcommand("anon-core", "Core-hardness reduction");
  anon_core->add_option("--game", game_path)->required();
  auto* anon_nash = generate->add_subcommand("anon-nash", "Nash-hardness reduction");
  anon_nash->add_option("--game", game_path)->required();
  auto* x3c = generate->add_subcommand("x3c", "Envy-hardness reduction");
  x3c->add_option("--input", x3c_path)->required();
  x3c->add_flag("--break-ties", break_ties);
  auto* random = generate->add_subcommand("random", "Seeded random instance");
  random->add_option("--s", gen_s)->required();
  random->add_option("--k", gen_k)->required();
  random->add_option("--red", gen_red)->required();
  random->add_option("--seed", gen_seed)->required();
  random->add_option("--class", gen_class)
      ->check(CLI::IsMember({"unrestricted", "strict", "dichotomous", "single_peaked"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(instance_path, outcome_path, concept_name, budget);
    if (solve->parsed()) return cmd_solve(instance_path, concept_name, method, budget);
    if (enumerate->parsed()) return cmd_enumerate(instance_path, budget);
    if (classify_cmd->parsed()) return cmd_classify(instance_path);
    if (generate->parsed()) {
      if (anon_core->parsed()) {
        const auto game = oracle::parse_anonymous_game(read_file(game_path));
        std::cout << serialize_instance(generators::reduce_anon_core(game)) << "\n";
      } else if (anon_nash->parsed()) {
        const auto game = oracle::parse_anonymous_game(read_file(game_path));
        std::cout << serialize_instance(generators::reduce_anon_nash(game)) << "\n";
      } else if (x3c->parsed()) {
        const auto input = generators::parse_x3c(read_file(x3c_path));
        std::cout << serialize_instance(generators::reduce_x3c(input, break_ties)) << "\n";
      } else if (random->parsed()) {
        static const std::map<std::string, generators::PrefClassKind> kinds = {
            {"unrestricted", generators::PrefClassKind::Unrestricted},
            {"strict", generators::PrefClassKind::Strict},
            {"dichotomous", generators::PrefClassKind::Dichotomous},
            {"single_peaked", generators::PrefClassKind::SinglePeaked}};
        std::cout << serialize_instance(generators::random_instance(
                         gen_s, gen_k, kinds.at(gen_class), gen_red, gen_seed))
                  << "\n";
      }
      return kExitStable;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
