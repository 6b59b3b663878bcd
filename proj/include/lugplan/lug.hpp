#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "lugplan/belief.hpp"
#include "lugplan/domain.hpp"
#include "lugplan/formula.hpp"
#include "lugplan/rational.hpp"

namespace lugplan {

/// One cell of a cost vector: the worlds it covers and the estimated cost of reaching
/// the vertex from them.
struct CostCell {
  Formula worlds;
  Rational cost;

  friend bool operator==(const CostCell&, const CostCell&) = default;
};

/// Cells partition the vertex label; one cell per level at which new worlds arrived.
using CostVector = std::vector<CostCell>;

class CoverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CoverResult {
  Rational cost{0};
  std::vector<std::size_t> selected;
};

/// Greedy weighted cover of the models of `target` by formula-cost pairs. Each step takes
/// the cheapest pair covering at least one uncovered model; ties go to the pair covering
/// more new models, then to the lower index. Throws CoverError if the pairs cannot cover.
CoverResult cover(FormulaEngine& engine, Formula target, std::span<const CostCell> pairs);

using WorldMask = boost::dynamic_bitset<>;

/// Same greedy rule over explicit world sets.
std::optional<CoverResult> greedy_cover(const WorldMask& target, std::span<const WorldMask> sets,
                                        std::span<const Rational> costs);

enum class GraphMode { kLug, kClug };

struct GraphOptions {
  GraphMode mode = GraphMode::kClug;
  /// 0 selects the default of 2*|F| + 2.
  std::size_t max_levels = 0;
};

struct Vertex {
  Formula label;
  /// CLUG only.
  CostVector cost;

  bool present() const { return !label.is_false(); }
};

/// Layers of one graph level. Action and effect layers of the final level are empty.
struct GraphLevel {
  std::vector<Vertex> literals;
  std::vector<Vertex> actions;
  std::vector<Vertex> effects;
};

/// Labelled (and, in CLUG mode, cost-annotated) planning graph built from a source
/// belief. Sensory actions are ignored. Graph actions are the task's actions followed by
/// one persistence per literal (id = num task actions + literal index).
class PlanningGraph {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  const Task& task() const { return *task_; }
  const BeliefState& source() const { return source_; }
  GraphMode mode() const { return mode_; }
  /// Number of literal layers built.
  std::size_t num_levels() const { return levels_.size(); }
  const GraphLevel& level(std::size_t k) const { return levels_.at(k); }
  /// First k with L_k equal to L_{k-1}, if construction reached a fixpoint.
  std::optional<std::size_t> leveled_at() const { return leveled_at_; }

  const Vertex& literal(std::size_t k, Literal l) const { return levels_.at(k).literals.at(l.index()); }
  const Vertex& action(std::size_t k, std::size_t a) const { return levels_.at(k).actions.at(a); }
  const Vertex& effect(std::size_t k, std::size_t e) const { return levels_.at(k).effects.at(e); }

  std::size_t num_literals() const { return 2 * task_->problem().fluents.size(); }
  std::size_t num_actions() const { return actions_.size(); }
  std::size_t num_effects() const { return effect_action_.size(); }
  const Action& graph_action(std::size_t a) const { return actions_[a]; }
  bool is_persistence(std::size_t a) const { return a >= task_->num_actions(); }
  /// Index in the task, or npos for persistences.
  std::size_t task_action(std::size_t a) const { return is_persistence(a) ? npos : a; }
  std::optional<std::size_t> find_action(std::string_view name) const;
  std::size_t effect_action(std::size_t e) const { return effect_action_[e]; }
  const ConditionalEffect& effect_definition(std::size_t e) const {
    return actions_[effect_action_[e]].effects[effect_slot_[e]];
  }
  /// Effects whose consequent contains l.
  const std::vector<std::size_t>& supporters(Literal l) const { return supporters_[l.index()]; }
  /// Cost under the task's active cost model; zero for persistences.
  const Rational& action_cost(std::size_t a) const;
  /// Tie-break order: persistences first, then task actions in declaration order.
  std::size_t tie_rank(std::size_t a) const;

  /// Models of the source belief; masks index into this list.
  const std::vector<State>& worlds() const { return worlds_; }
  WorldMask mask(Formula f) const;
  /// Formula for a subset of the source worlds.
  Formula formula_of(const WorldMask& m) const;

  /// Cost of covering the worlds with the cells of a cost vector (cells intersecting them).
  Rational cover_cells(const WorldMask& worlds, const CostVector& cells) const;
  /// Estimated cost of supporting `worlds` with effect e at level k: the action cost is
  /// charged once, plus the covers of the action and antecedent cost vectors, or the sum
  /// of the effect's own intersecting cells if that is cheaper.
  Rational effect_support_cost(std::size_t k, std::size_t e, const WorldMask& worlds) const;

  /// One line per present vertex per level: level, kind, name, label models, cost cells.
  std::string dump() const;
  std::string label_string(Formula f) const;

 private:
  friend PlanningGraph build_graph(const Task& task, const BeliefState& bs, const GraphOptions& options);

  PlanningGraph(const Task& task, const BeliefState& bs, GraphMode mode);

  void build_initial_layer();
  void build_action_layer(std::size_t k);
  void build_effect_layer(std::size_t k);
  void build_next_literal_layer(std::size_t k);
  bool literal_layers_equal(std::size_t k1, std::size_t k2) const;
  Formula extended_conjunction(std::size_t k, std::span<const Literal> literals) const;
  /// Cells of `prev` extended with label ∧ ¬prev.label; costs left from prev or zero.
  CostVector extend_partition(const Vertex* prev, Formula label) const;
  Rational literal_support_cost(std::size_t k, Literal l, const WorldMask& worlds) const;

  const Task* task_;
  BeliefState source_;
  GraphMode mode_;
  std::vector<Action> actions_;
  std::vector<std::size_t> effect_action_;
  std::vector<std::size_t> effect_slot_;
  std::vector<std::vector<std::size_t>> action_effects_;
  std::vector<std::vector<std::size_t>> supporters_;
  std::vector<GraphLevel> levels_;
  std::optional<std::size_t> leveled_at_;
  std::vector<State> worlds_;
  mutable std::unordered_map<std::uint32_t, WorldMask> mask_cache_;
};

/// Builds levels until the literal layer (and, for CLUG, its cost vectors) stops
/// changing or max_levels literal layers past the initial one exist.
PlanningGraph build_graph(const Task& task, const BeliefState& bs, const GraphOptions& options);

/// Level at which construction reached a fixpoint, if it did.
std::optional<std::size_t> level_off(const PlanningGraph& graph);

/// Whether an NNF formula over literals is reachable from the source after k steps.
bool reachable(const PlanningGraph& graph, std::size_t k, const FormulaTree& formula);

/// Extended label of an NNF formula at level k.
Formula extended_label(const PlanningGraph& graph, std::size_t k, const FormulaTree& formula);

}  // namespace lugplan
