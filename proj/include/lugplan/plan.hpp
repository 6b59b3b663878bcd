#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lugplan/domain.hpp"
#include "lugplan/formula.hpp"

namespace lugplan {

struct PlanNode {
  Formula belief;
  /// Task action index; nullopt marks a leaf.
  std::optional<std::size_t> action;
};

struct PlanEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  /// Outcome index for sensory actions, nullopt for causative ones.
  std::optional<std::size_t> outcome;

  friend bool operator==(const PlanEdge&, const PlanEdge&) = default;
};

/// Contingent plan as a DAG over belief-labelled nodes.
struct PlanDag {
  std::vector<PlanNode> nodes;
  std::vector<PlanEdge> edges;
  std::size_t root = 0;
  /// 0-based cost model the plan was computed under.
  std::size_t cost_model = 0;

  std::vector<std::size_t> out_edges(std::size_t node) const;
};

class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dangling edges, a missing root, or a cycle. Throws PlanError.
void check_structure(const PlanDag& plan);

/// Nodes in topological order from the root. Throws PlanError on a cycle.
std::vector<std::size_t> topological_order(const PlanDag& plan);

/// JSON document: cost_model (1-based), root, nodes (id, belief as sorted models,
/// action name or "goal"), edges (from, to, outcome index or null).
std::string plan_to_json(const Task& task, const PlanDag& plan);

/// Inverse of plan_to_json against the same problem. Throws PlanError.
PlanDag plan_from_json(const Task& task, std::string_view text);

/// A belief as its sorted models, each model a list of literal names.
std::vector<std::vector<std::string>> belief_models(const Task& task, Formula belief);

}  // namespace lugplan
