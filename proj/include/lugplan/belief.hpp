#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lugplan/domain.hpp"
#include "lugplan/formula.hpp"

namespace lugplan {

/// A satisfiable formula over the task's fluents; its models are the possible worlds.
class BeliefState {
 public:
  /// Throws std::invalid_argument on ⊥.
  explicit BeliefState(Formula formula);

  const Formula& formula() const { return formula_; }

  friend bool operator==(const BeliefState& a, const BeliefState& b) { return a.formula_ == b.formula_; }

 private:
  Formula formula_;
};

class BeliefError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool applicable(const Task& task, const BeliefState& bs, std::size_t action);

/// Image of bs under a causative action. Throws BeliefError if inapplicable.
BeliefState progress(const Task& task, const BeliefState& bs, std::size_t action);

/// One (outcome index, child belief) per outcome consistent with bs. Throws BeliefError if
/// the action is inapplicable or no outcome is consistent.
std::vector<std::pair<std::size_t, BeliefState>> observe(const Task& task, const BeliefState& bs,
                                                         std::size_t action);

bool satisfies_goal(const Task& task, const BeliefState& bs, std::span<const Literal> goal);
inline bool satisfies_goal(const Task& task, const BeliefState& bs) {
  return satisfies_goal(task, bs, task.problem().goal);
}

}  // namespace lugplan
