#include "lugplan/relaxed_plan.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lugplan {

namespace {

bool goal_reachable(const PlanningGraph& graph, std::span<const Literal> goal, std::size_t k) {
  FormulaEngine& engine = graph.task().engine();
  Formula f = graph.source().formula();
  for (Literal l : goal) f = engine.conj(f, graph.literal(k, l).label);
  return f == graph.source().formula();
}

void add_label(std::map<std::size_t, Formula>& layer, std::size_t key, Formula label) {
  auto [it, inserted] = layer.emplace(key, label);
  if (!inserted) it->second = it->second | label;
}

/// Greedy choice of supporting effects for one literal at graph level k.
void support_literal(const PlanningGraph& graph, std::size_t k, Literal l, Formula needed,
                     RelaxedPlanLevel& below) {
  const GraphLevel& level = graph.level(k);
  const bool by_cost = graph.mode() == GraphMode::kClug;
  Formula uncovered = needed;
  while (!uncovered.is_false()) {
    constexpr std::size_t npos = PlanningGraph::npos;
    std::size_t best = npos;
    std::size_t best_new = 0;
    Rational best_cost{0};
    Formula best_worlds;
    for (std::size_t e : graph.supporters(l)) {
      if (!level.effects[e].present()) continue;
      Formula fresh = level.effects[e].label & uncovered;
      if (fresh.is_false()) continue;
      std::size_t n = graph.mask(fresh).count();
      Rational c = by_cost ? graph.effect_support_cost(k, e, graph.mask(fresh)) : Rational(0);
      bool tie_on_primary = by_cost ? c == best_cost && n == best_new : n == best_new;
      bool better = best == npos || (by_cost ? (c < best_cost || (c == best_cost && n > best_new)) : n > best_new) ||
                    (tie_on_primary && graph.tie_rank(graph.effect_action(e)) < graph.tie_rank(graph.effect_action(best)));
      if (better) {
        best = e;
        best_new = n;
        best_cost = c;
        best_worlds = fresh;
      }
    }
    if (best == npos) {
      throw CoverError("relaxed plan: no effect supports " + graph.task().problem().literal_name(l) +
                       " at level " + std::to_string(k + 1));
    }
    add_label(below.effects, best, best_worlds);
    uncovered = uncovered.minus(best_worlds);
  }
}

}  // namespace

std::optional<Rational> goal_cost(const PlanningGraph& graph, std::span<const Literal> goal, std::size_t k) {
  if (graph.mode() != GraphMode::kClug) throw std::logic_error("goal_cost needs a CLUG");
  if (!goal_reachable(graph, goal, k)) return std::nullopt;
  WorldMask all = graph.mask(graph.source().formula());
  Rational total{0};
  for (Literal l : goal) total += graph.cover_cells(all, graph.literal(k, l).cost);
  return total;
}

std::optional<std::size_t> select_level_b(const PlanningGraph& graph, std::span<const Literal> goal) {
  if (graph.mode() == GraphMode::kLug) {
    for (std::size_t k = 0; k < graph.num_levels(); ++k) {
      if (goal_reachable(graph, goal, k)) return k;
    }
    return std::nullopt;
  }
  std::optional<std::size_t> best;
  Rational best_cost{0};
  for (std::size_t k = 0; k < graph.num_levels(); ++k) {
    auto c = goal_cost(graph, goal, k);
    if (!c) continue;
    if (!best || *c < best_cost) {
      best = k;
      best_cost = *c;
    }
  }
  return best;
}

std::optional<RelaxedPlan> extract(const PlanningGraph& graph, std::span<const Literal> goal) {
  auto b = select_level_b(graph, goal);
  if (!b) return std::nullopt;
  RelaxedPlan plan;
  plan.b = *b;
  plan.levels.resize(*b + 1);
  Formula source = graph.source().formula();
  for (Literal l : goal) add_label(plan.levels[*b].literals, l.index(), graph.literal(*b, l).label & source);

  for (std::size_t k = *b; k >= 1; --k) {
    RelaxedPlanLevel& below = plan.levels[k - 1];
    for (const auto& [index, label] : plan.levels[k].literals) {
      support_literal(graph, k - 1, Literal::from_index(index), label, below);
    }
    for (const auto& [e, label] : below.effects) add_label(below.actions, graph.effect_action(e), label);
    for (const auto& [a, label] : below.actions) {
      for (Literal l : graph.graph_action(a).precondition) add_label(below.literals, l.index(), label);
    }
    for (const auto& [e, label] : below.effects) {
      for (Literal l : graph.effect_definition(e).antecedent) add_label(below.literals, l.index(), label);
    }
  }
  return plan;
}

Rational heuristic_value(const PlanningGraph& graph, const RelaxedPlan& plan) {
  Rational total{0};
  for (const RelaxedPlanLevel& level : plan.levels) {
    for (const auto& [a, label] : level.actions) {
      if (!graph.is_persistence(a)) total += graph.action_cost(a);
    }
  }
  return total;
}

CostEstimate relaxed_plan_heuristic(const PlanningGraph& graph, std::span<const Literal> goal) {
  auto plan = extract(graph, goal);
  if (!plan) return CostEstimate::infinity();
  return heuristic_value(graph, *plan);
}

std::set<std::string> action_names(const PlanningGraph& graph, const RelaxedPlan& plan) {
  std::set<std::string> names;
  for (const RelaxedPlanLevel& level : plan.levels) {
    for (const auto& [a, label] : level.actions) {
      if (!graph.is_persistence(a)) names.insert(graph.graph_action(a).name);
    }
  }
  return names;
}

std::optional<std::string> check_support(const PlanningGraph& graph, const RelaxedPlan& plan) {
  FormulaEngine& engine = graph.task().engine();
  const Problem& problem = graph.task().problem();
  for (std::size_t k = 1; k < plan.levels.size(); ++k) {
    const RelaxedPlanLevel& below = plan.levels[k - 1];
    for (const auto& [index, label] : plan.levels[k].literals) {
      Formula support = engine.bottom();
      for (const auto& [e, elabel] : below.effects) {
        const auto& consequent = graph.effect_definition(e).consequent;
        if (std::find(consequent.begin(), consequent.end(), Literal::from_index(index)) != consequent.end()) {
          support = support | elabel;
        }
      }
      if (!label.entails(support)) {
        return "literal " + problem.literal_name(Literal::from_index(index)) + " unsupported at level " +
               std::to_string(k);
      }
    }
    for (const auto& [e, elabel] : below.effects) {
      auto it = below.actions.find(graph.effect_action(e));
      if (it == below.actions.end() || !elabel.entails(it->second)) {
        return "effect of " + graph.graph_action(graph.effect_action(e)).name + " lacks its action at level " +
               std::to_string(k - 1);
      }
    }
  }
  return std::nullopt;
}

std::string dump(const PlanningGraph& graph, const RelaxedPlan& plan) {
  const Problem& problem = graph.task().problem();
  std::ostringstream os;
  for (std::size_t k = 0; k < plan.levels.size(); ++k) {
    const RelaxedPlanLevel& level = plan.levels[k];
    for (const auto& [i, label] : level.literals) {
      os << k << " literal " << problem.literal_name(Literal::from_index(i)) << ' ' << graph.label_string(label) << '\n';
    }
    for (const auto& [a, label] : level.actions) {
      os << k << " action " << graph.graph_action(a).name << ' ' << graph.label_string(label) << '\n';
    }
    for (const auto& [e, label] : level.effects) {
      os << k << " effect " << graph.graph_action(graph.effect_action(e)).name << ' ' << graph.label_string(label)
         << '\n';
    }
  }
  return os.str();
}

}  // namespace lugplan
