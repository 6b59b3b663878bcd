#include "lugplan/belief.hpp"

namespace lugplan {

BeliefState::BeliefState(Formula formula) : formula_(formula) {
  if (formula.is_false()) throw std::invalid_argument("a belief state cannot be empty");
}

bool applicable(const Task& task, const BeliefState& bs, std::size_t action) {
  return task.engine().entails(bs.formula(), task.precondition(action));
}

BeliefState progress(const Task& task, const BeliefState& bs, std::size_t action) {
  const Action& a = task.action(action);
  if (!a.is_causative()) throw BeliefError("progress needs a causative action, got " + a.name);
  if (!applicable(task, bs, action)) throw BeliefError("action " + a.name + " is not applicable");
  FormulaEngine& engine = task.engine();
  Formula image = engine.bottom();
  for (const State& s : engine.models(bs.formula())) {
    image = engine.disj(image, engine.from_state(successor(s, a)));
  }
  return BeliefState(image);
}

std::vector<std::pair<std::size_t, BeliefState>> observe(const Task& task, const BeliefState& bs,
                                                         std::size_t action) {
  const Action& a = task.action(action);
  if (!a.is_sensory()) throw BeliefError("observe needs a sensory action, got " + a.name);
  if (!applicable(task, bs, action)) throw BeliefError("action " + a.name + " is not applicable");
  std::vector<std::pair<std::size_t, BeliefState>> out;
  const auto& outcomes = task.outcomes(action);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    Formula child = task.engine().conj(bs.formula(), outcomes[i]);
    if (!child.is_false()) out.emplace_back(i, BeliefState(child));
  }
  if (out.empty()) throw BeliefError("no outcome of " + a.name + " is consistent with the belief");
  return out;
}

bool satisfies_goal(const Task& task, const BeliefState& bs, std::span<const Literal> goal) {
  return task.engine().entails(bs.formula(), task.engine().cube(goal));
}

}  // namespace lugplan
