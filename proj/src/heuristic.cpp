#include "lugplan/heuristic.hpp"

#include "lugplan/lug.hpp"
#include "lugplan/relaxed_plan.hpp"

namespace lugplan {

std::string_view to_string(HeuristicKind kind) {
  switch (kind) {
    case HeuristicKind::kClugRp: return "clug-rp";
    case HeuristicKind::kLugRp: return "lug-rp";
    case HeuristicKind::kCardinality: return "cardinality";
    case HeuristicKind::kZero: return "zero";
  }
  return "?";
}

std::optional<HeuristicKind> parse_heuristic(std::string_view text) {
  for (HeuristicKind k : {HeuristicKind::kClugRp, HeuristicKind::kLugRp, HeuristicKind::kCardinality,
                          HeuristicKind::kZero}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

CostEstimate Heuristic::operator()(const Task& task, const BeliefState& bs) {
  ++counters_.calls;
  switch (kind_) {
    case HeuristicKind::kZero:
      return Rational(0);
    case HeuristicKind::kCardinality:
      return Rational(static_cast<std::int64_t>(task.engine().model_count(bs.formula())));
    case HeuristicKind::kClugRp:
    case HeuristicKind::kLugRp: {
      GraphMode mode = kind_ == HeuristicKind::kClugRp ? GraphMode::kClug : GraphMode::kLug;
      PlanningGraph graph = build_graph(task, bs, GraphOptions{mode, max_levels_});
      counters_.levels_built += graph.num_levels() - 1;
      return relaxed_plan_heuristic(graph, task.problem().goal);
    }
  }
  return Rational(0);
}

}  // namespace lugplan
