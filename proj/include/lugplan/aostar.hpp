#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lugplan/belief.hpp"
#include "lugplan/heuristic.hpp"
#include "lugplan/plan.hpp"

namespace lugplan {

/// Hyper-edge for one applicable action. Causative actions have one child; sensory
/// actions one child per consistent outcome.
struct Connector {
  std::size_t action = 0;
  std::vector<std::size_t> children;
  /// Outcome index per child (sensory only).
  std::vector<std::size_t> outcomes;
};

struct SearchNode {
  BeliefState belief;
  CostEstimate f;
  std::optional<std::size_t> best;
  bool solved = false;
  bool expanded = false;
  bool goal = false;
  std::vector<Connector> connectors;
  std::vector<std::size_t> parents;
};

struct SearchLimits {
  /// Seconds; zero or negative disables the check.
  double time_limit = 1200.0;
  /// Expansions; zero disables the check.
  std::size_t max_expansions = 0;
};

struct SearchStats {
  std::size_t nodes_expanded = 0;
  std::size_t heuristic_calls = 0;
  std::size_t levels_built = 0;
  std::size_t revisions = 0;
  std::size_t peak_open = 0;
  std::size_t graph_nodes = 0;
  double time_ms = 0;
};

enum class SearchFailure { kTimeout, kExpansionLimit, kExhausted };

std::string_view to_string(SearchFailure failure);

struct SearchResult {
  std::optional<PlanDag> plan;
  CostEstimate root_f;
  SearchStats stats;
  std::optional<SearchFailure> failure;
};

/// Explicit AND/OR graph over belief states. Nodes are deduplicated by their canonical
/// belief formula and never removed.
class AoStar {
 public:
  AoStar(const Task& task, Heuristic& heuristic);

  std::size_t root() const { return 0; }
  const SearchNode& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t size() const { return nodes_.size(); }
  std::optional<std::size_t> find(Formula belief) const;

  /// First unexpanded node reached from the root along best connectors, if any.
  std::optional<std::size_t> select_tip() const;
  /// Generates one connector per applicable action. Self-loop and uninformative
  /// connectors are dropped. Returns the ids of newly created nodes.
  std::vector<std::size_t> expand(std::size_t node);
  /// Dynamic-programming update from the given nodes up through their ancestors.
  void revise(std::vector<std::size_t> changed);
  /// Connector cost: c(a) + mean child f, or infinity.
  CostEstimate connector_cost(std::size_t node, const Connector& c) const;
  /// Follows best connectors from the root. Throws std::logic_error if unsolved.
  PlanDag extract_plan() const;

  SearchResult run(const SearchLimits& limits);
  const SearchStats& stats() const { return stats_; }

 private:
  std::size_t intern(const BeliefState& belief);
  bool closes_cycle(std::size_t node, const Connector& c) const;
  bool update(std::size_t node);

  const Task* task_;
  Heuristic* heuristic_;
  std::size_t calls_at_start_;
  std::size_t levels_at_start_;
  std::vector<SearchNode> nodes_;
  std::unordered_map<std::uint32_t, std::size_t> index_;
  std::vector<bool> blocked_;
  std::size_t open_ = 0;
  SearchStats stats_;
};

/// Runs AO* from the initial belief of the task under its active cost model.
SearchResult search(const Task& task, Heuristic& heuristic, const SearchLimits& limits = {});

}  // namespace lugplan
