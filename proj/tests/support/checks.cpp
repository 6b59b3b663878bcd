#include "checks.hpp"

#include "oracles.hpp"

namespace checks {

using namespace lugplan;

namespace {

std::size_t slot_of(const PlanningGraph& g, std::size_t e) {
  const Action& a = g.graph_action(g.effect_action(e));
  return static_cast<std::size_t>(&g.effect_definition(e) - a.effects.data());
}

std::string where(std::size_t k, const std::string& what) { return "level " + std::to_string(k) + ": " + what; }

}  // namespace

std::string single_world_agreement(const Problem& problem) {
  Task task(problem);
  PlanningGraph g = build_graph(task, BeliefState(task.init()), GraphOptions{GraphMode::kLug, 0});
  FormulaEngine& e = task.engine();
  const std::size_t na = problem.actions.size();
  const std::size_t last = g.num_levels() - 1;
  for (const State& s : oracle::init_states(problem)) {
    oracle::ClassicalGraph cg = oracle::classical_graph(problem, s, last);
    for (std::size_t k = 0; k <= last; ++k) {
      for (std::size_t i = 0; i < g.num_literals(); ++i) {
        bool in_lug = e.evaluate(g.level(k).literals[i].label, s);
        if (in_lug != (cg.literals[k].count(i) > 0)) {
          return where(k, "literal " + problem.literal_name(Literal::from_index(i)) + " in " + task.state_name(s));
        }
      }
      if (k == last) break;
      for (std::size_t a = 0; a < g.num_actions(); ++a) {
        bool in_lug = e.evaluate(g.level(k).actions[a].label, s);
        bool in_classical = a < na ? cg.actions[k].count(a) > 0 : cg.literals[k].count(a - na) > 0;
        if (in_lug != in_classical) return where(k, "action " + g.graph_action(a).name + " in " + task.state_name(s));
      }
      for (std::size_t x = 0; x < g.num_effects(); ++x) {
        std::size_t a = g.effect_action(x);
        bool in_lug = e.evaluate(g.level(k).effects[x].label, s);
        bool in_classical =
            a < na ? cg.effects[k].count({a, slot_of(g, x)}) > 0 : cg.literals[k].count(a - na) > 0;
        if (in_lug != in_classical) return where(k, "effect of " + g.graph_action(a).name + " in " + task.state_name(s));
      }
    }
  }
  return {};
}

std::string single_world_costs(const Problem& problem) {
  Task task(problem);
  std::vector<State> init = oracle::init_states(problem);
  if (init.size() != 1) return "initial belief is not a single state";
  const State& s = init.front();
  PlanningGraph g = build_graph(task, BeliefState(task.init()), GraphOptions{GraphMode::kClug, 0});
  const std::size_t na = problem.actions.size();
  const std::size_t last = g.num_levels() - 1;
  oracle::SumCosts oc = oracle::sum_costs(problem, s, last);
  auto compare = [&](std::size_t k, const Vertex& v, const std::optional<Rational>& expect,
                     const std::string& name) -> std::string {
    if (v.present() != expect.has_value()) return where(k, name + " presence differs");
    if (!v.present()) return {};
    if (v.cost.size() != 1) return where(k, name + " has " + std::to_string(v.cost.size()) + " cells");
    if (v.cost[0].cost != *expect) {
      return where(k, name + " costs " + to_string(v.cost[0].cost) + ", expected " + to_string(*expect));
    }
    return {};
  };
  for (std::size_t k = 0; k <= last; ++k) {
    for (std::size_t i = 0; i < g.num_literals(); ++i) {
      auto err = compare(k, g.level(k).literals[i], oc.literals[k][i],
                         "literal " + problem.literal_name(Literal::from_index(i)));
      if (!err.empty()) return err;
    }
    if (k == last) break;
    for (std::size_t a = 0; a < g.num_actions(); ++a) {
      // a persistence costs what its literal costs
      std::optional<Rational> expect = a < na ? oc.actions[k][a] : oc.literals[k][a - na];
      auto err = compare(k, g.level(k).actions[a], expect, "action " + g.graph_action(a).name);
      if (!err.empty()) return err;
    }
    for (std::size_t x = 0; x < g.num_effects(); ++x) {
      std::size_t a = g.effect_action(x);
      std::optional<Rational> expect = a < na ? oc.effects[k][a][slot_of(g, x)] : oc.literals[k][a - na];
      auto err = compare(k, g.level(k).effects[x], expect, "effect of " + g.graph_action(a).name);
      if (!err.empty()) return err;
    }
  }
  return {};
}

std::string graph_invariants(const PlanningGraph& g) {
  FormulaEngine& e = g.task().engine();
  Formula source = g.source().formula();
  auto check_vertex = [&](std::size_t k, const Vertex* prev, const Vertex& v, const std::string& name) -> std::string {
    if (!v.label.entails(source)) return where(k, name + " label leaves the source");
    if (prev != nullptr && !prev->label.entails(v.label)) return where(k, name + " label shrank");
    if (g.mode() != GraphMode::kClug || !v.present()) return {};
    Formula all = e.bottom();
    for (std::size_t i = 0; i < v.cost.size(); ++i) {
      if (v.cost[i].worlds.is_false()) return where(k, name + " has an empty cell");
      if (!(all & v.cost[i].worlds).is_false()) return where(k, name + " cells overlap");
      all = all | v.cost[i].worlds;
      if (v.cost[i].cost < 0) return where(k, name + " has a negative cell");
    }
    if (all != v.label) return where(k, name + " cells do not partition the label");
    if (v.cost.size() > k + 1) return where(k, name + " has more cells than levels");
    if (prev != nullptr && prev->present()) {
      for (std::size_t i = 0; i < prev->cost.size(); ++i) {
        if (prev->cost[i].worlds != v.cost[i].worlds) return where(k, name + " cell moved");
        if (prev->cost[i].cost < v.cost[i].cost) return where(k, name + " cell cost rose");
      }
    }
    return {};
  };
  for (std::size_t k = 0; k < g.num_levels(); ++k) {
    const GraphLevel& level = g.level(k);
    const GraphLevel* prev = k > 0 ? &g.level(k - 1) : nullptr;
    for (std::size_t i = 0; i < level.literals.size(); ++i) {
      auto err = check_vertex(k, prev ? &prev->literals[i] : nullptr, level.literals[i], "literal");
      if (!err.empty()) return err;
    }
    bool has_next = k + 1 < g.num_levels();
    if (!has_next) break;
    bool prev_has_actions = prev != nullptr && !prev->actions.empty();
    for (std::size_t a = 0; a < level.actions.size(); ++a) {
      auto err = check_vertex(k, prev_has_actions ? &prev->actions[a] : nullptr, level.actions[a], "action " + g.graph_action(a).name);
      if (!err.empty()) return err;
    }
    for (std::size_t x = 0; x < level.effects.size(); ++x) {
      auto err = check_vertex(k, prev_has_actions ? &prev->effects[x] : nullptr, level.effects[x], "effect");
      if (!err.empty()) return err;
    }
  }
  return {};
}

}  // namespace checks
