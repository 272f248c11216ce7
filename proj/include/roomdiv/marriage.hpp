#pragma once

#include <functional>
#include <optional>

#include "roomdiv/enumerate.hpp"
#include "roomdiv/ilp.hpp"
#include "roomdiv/model.hpp"
#include "roomdiv/verify.hpp"

namespace roomdiv {

struct MarriageAgent {
  std::string id;
  Color color = Color::Red;
  int dim = 1;  // 1..s
  WeakOrder pref;
};

/// The s-dimensional marriage variant: s dimensions of k agents each; every
/// room takes exactly one agent per dimension.
class MarriageInstance {
 public:
  static MarriageInstance make(int s, std::vector<MarriageAgent> agents);

  int s() const { return s_; }
  const std::vector<MarriageAgent>& agents() const { return agents_; }
  int n() const { return static_cast<int>(agents_.size()); }
  int k() const { return s_ == 0 ? 0 : n() / s_; }
  int agent_index(std::string_view id) const;
  const MarriageAgent& agent(std::string_view id) const { return agents_[agent_index(id)]; }

  /// Ids in dimension `dim`, sorted.
  const std::vector<std::string>& dimension(int dim) const { return by_dim_[dim - 1]; }

 private:
  int s_ = 0;
  std::vector<MarriageAgent> agents_;
  std::vector<std::vector<std::string>> by_dim_;
  std::map<std::string, int, std::less<>> index_;
};

struct MarriageOutcome {
  std::vector<std::vector<std::string>> rooms;
};

void validate_marriage_outcome(const MarriageInstance& instance,
                               const MarriageOutcome& outcome);

MarriageInstance parse_marriage_instance(const std::string& text);
std::string serialize_marriage_instance(const MarriageInstance& instance);
MarriageOutcome parse_marriage_outcome(const std::string& text);
std::string serialize_marriage_outcome(const MarriageOutcome& outcome);

/// "roommate" or "marriage", from the file's kind field.
std::string instance_kind(const std::string& text);

/// None iff no coalition with one agent per dimension (weakly) blocks.
std::optional<BlockingWitness> find_blocking_marriage(const MarriageInstance& instance,
                                                      const MarriageOutcome& outcome,
                                                      bool strong);

/// None iff no same-dimension pair has a (weak) exchange deviation.
std::optional<SwapWitness> find_exchange_marriage(const MarriageInstance& instance,
                                                  const MarriageOutcome& outcome,
                                                  bool strong);

bool is_marriage_stable(const MarriageInstance& instance, const MarriageOutcome& outcome,
                        Concept notion);

/// Visits all outcomes up to room relabeling (dimension 1 fixed, the other
/// dimensions permuted), (k!)^(s-1) in total. Budgeted like the roommate
/// enumerator.
void for_each_marriage_outcome(const MarriageInstance& instance, std::uint64_t budget,
                               const std::function<bool(const MarriageOutcome&)>& visit);

/// Red placements for one room class: rooms[t] holds the dimensions whose
/// agent in room t is red.
struct MarriageCountProfile {
  std::vector<ilp::Value> rooms;  // n_j
  // [dim-1][type][j]: agents of that dimension and preference type in class j.
  std::vector<std::vector<std::vector<ilp::Value>>> red_counts;
  std::vector<std::vector<std::vector<ilp::Value>>> blue_counts;
};

/// Builds a concrete outcome from a feasible count profile; the per-class
/// dimensions-by-rooms red placement matrix is realized greedily
/// (Gale-Ryser). Throws InternalError if the profile is not realizable.
MarriageOutcome realize_marriage(const MarriageInstance& instance,
                                 const MarriageCountProfile& profile);

/// FPT existence via the count encoding, for core, strong-core, exchange and
/// strong-exchange. The returned outcome has been re-checked.
std::optional<MarriageOutcome> solve_marriage_existence(const MarriageInstance& instance,
                                                        Concept notion);

}  // namespace roomdiv
