#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lugplan/lug.hpp"

namespace lugplan {

/// Labelled vertices of one relaxed-plan level, keyed by literal index, graph action id
/// and graph effect id.
struct RelaxedPlanLevel {
  std::map<std::size_t, Formula> literals;
  std::map<std::size_t, Formula> actions;
  std::map<std::size_t, Formula> effects;
};

struct RelaxedPlan {
  std::size_t b = 0;
  /// levels[0..b]; the action and effect layers of levels[b] are empty.
  std::vector<RelaxedPlanLevel> levels;
};

/// Goal cost at level k in CLUG mode: sum over goal literals of the cover of the source
/// worlds by the literal's cost vector. nullopt when the goal is not reachable at k.
/// Throws std::logic_error on a LUG.
std::optional<Rational> goal_cost(const PlanningGraph& graph, std::span<const Literal> goal, std::size_t k);

/// LUG: first level where the goal is reachable. CLUG: earliest level of minimum goal
/// cost among the reachable levels. nullopt when unreachable.
std::optional<std::size_t> select_level_b(const PlanningGraph& graph, std::span<const Literal> goal);

/// Backward greedy support of the goal from level b down to level 1. nullopt when the
/// goal is unreachable. Throws CoverError if some literal cannot be supported.
std::optional<RelaxedPlan> extract(const PlanningGraph& graph, std::span<const Literal> goal);

/// Sum of non-persistence action costs, counted once per level occurrence.
Rational heuristic_value(const PlanningGraph& graph, const RelaxedPlan& plan);

/// Value of the relaxed-plan heuristic for the graph's source belief.
CostEstimate relaxed_plan_heuristic(const PlanningGraph& graph, std::span<const Literal> goal);

/// Names of the non-persistence actions used anywhere in the plan.
std::set<std::string> action_names(const PlanningGraph& graph, const RelaxedPlan& plan);

/// Checks the support condition at every level; returns a description of the first
/// violation, or nullopt.
std::optional<std::string> check_support(const PlanningGraph& graph, const RelaxedPlan& plan);

std::string dump(const PlanningGraph& graph, const RelaxedPlan& plan);

}  // namespace lugplan
