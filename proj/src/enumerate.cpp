#include "roomdiv/enumerate.hpp"

#include <algorithm>
#include <vector>

namespace roomdiv {

namespace {

// Rooms are described by composition vectors over the profile groups. The
// recursion emits rooms in non-decreasing lexicographic composition order,
// so each multiset of rooms appears exactly once.
class Enumerator {
 public:
  Enumerator(const Instance& instance, std::uint64_t budget,
             const std::function<bool(const Outcome&)>* visit)
      : instance_(instance), budget_(budget), visit_(visit) {
    profiles_ = profile_groups(instance);
    remaining_.reserve(profiles_.size());
    for (const auto& p : profiles_) remaining_.push_back(static_cast<int>(p.ids.size()));
    rooms_.reserve(instance.k());
  }

  std::uint64_t run() {
    if (instance_.k() == 0) {
      emit();
      return count_;
    }
    std::vector<int> none(profiles_.size(), 0);
    recurse(instance_.k(), none);
    return count_;
  }

 private:
  // Builds the next room composition, at least `minimum` lexicographically.
  void recurse(int rooms_left, const std::vector<int>& minimum) {
    if (stop_) return;
    if (rooms_left == 0) {
      emit();
      return;
    }
    std::vector<int> room(profiles_.size(), 0);
    build_room(0, instance_.s(), true, minimum, room, rooms_left);
  }

  void build_room(std::size_t p, int slots, bool tied_to_minimum,
                  const std::vector<int>& minimum, std::vector<int>& room,
                  int rooms_left) {
    if (stop_) return;
    if (slots == 0) {
      rooms_.push_back(room);
      recurse(rooms_left - 1, room);
      rooms_.pop_back();
      return;
    }
    if (p == profiles_.size()) return;
    const int low = tied_to_minimum ? minimum[p] : 0;
    const int high = std::min(remaining_[p], slots);
    // Descending count keeps compositions ordered: a larger count in an
    // earlier profile is lexicographically larger.
    for (int c = high; c >= low; --c) {
      room[p] = c;
      remaining_[p] -= c;
      build_room(p + 1, slots - c, tied_to_minimum && c == minimum[p], minimum, room,
                 rooms_left);
      remaining_[p] += c;
      room[p] = 0;
      if (stop_) return;
    }
  }

  void emit() {
    if (++count_ > budget_)
      throw BudgetExceeded("canonical outcome budget of " + std::to_string(budget_) +
                           " exceeded");
    if (visit_ == nullptr) return;
    Outcome outcome;
    std::vector<int> used(profiles_.size(), 0);
    for (const auto& room : rooms_) {
      std::vector<std::string> members;
      for (std::size_t p = 0; p < profiles_.size(); ++p)
        for (int c = 0; c < room[p]; ++c) members.push_back(profiles_[p].ids[used[p]++]);
      outcome.rooms.push_back(std::move(members));
    }
    if (!(*visit_)(outcome)) stop_ = true;
  }

  const Instance& instance_;
  std::uint64_t budget_;
  const std::function<bool(const Outcome&)>* visit_;
  std::vector<AgentProfile> profiles_;
  std::vector<int> remaining_;
  std::vector<std::vector<int>> rooms_;
  std::uint64_t count_ = 0;
  bool stop_ = false;
};

}  // namespace

void for_each_canonical_outcome(const Instance& instance, std::uint64_t budget,
                                const std::function<bool(const Outcome&)>& visit) {
  Enumerator(instance, budget, &visit).run();
}

std::uint64_t count_canonical_outcomes(const Instance& instance, std::uint64_t budget) {
  return Enumerator(instance, budget, nullptr).run();
}

}  // namespace roomdiv
