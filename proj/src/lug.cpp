#include "lugplan/lug.hpp"

#include <algorithm>
#include <sstream>

namespace lugplan {

std::optional<CoverResult> greedy_cover(const WorldMask& target, std::span<const WorldMask> sets,
                                        std::span<const Rational> costs) {
  CoverResult result;
  WorldMask uncovered = target;
  while (uncovered.any()) {
    std::size_t best = sets.size();
    std::size_t best_new = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::size_t fresh = (sets[i] & uncovered).count();
      if (fresh == 0) continue;
      if (best == sets.size() || costs[i] < costs[best] ||
          (costs[i] == costs[best] && fresh > best_new)) {
        best = i;
        best_new = fresh;
      }
    }
    if (best == sets.size()) return std::nullopt;
    result.selected.push_back(best);
    result.cost += costs[best];
    uncovered -= sets[best];
  }
  return result;
}

CoverResult cover(FormulaEngine& engine, Formula target, std::span<const CostCell> pairs) {
  std::vector<State> worlds = engine.models(target);
  WorldMask all(worlds.size());
  all.set();
  std::vector<WorldMask> sets;
  std::vector<Rational> costs;
  for (const CostCell& p : pairs) {
    WorldMask m(worlds.size());
    for (std::size_t i = 0; i < worlds.size(); ++i) m[i] = engine.evaluate(p.worlds, worlds[i]);
    sets.push_back(std::move(m));
    costs.push_back(p.cost);
  }
  auto result = greedy_cover(all, sets, costs);
  if (!result) throw CoverError("formula-cost pairs do not cover the target");
  return *result;
}

PlanningGraph::PlanningGraph(const Task& task, const BeliefState& bs, GraphMode mode)
    : task_(&task), source_(bs), mode_(mode) {
  const Problem& problem = task.problem();
  actions_ = problem.actions;
  for (std::size_t i = 0; i < 2 * problem.fluents.size(); ++i) {
    actions_.push_back(persistence(problem, Literal::from_index(i)));
  }
  action_effects_.resize(actions_.size());
  supporters_.resize(2 * problem.fluents.size());
  for (std::size_t a = 0; a < actions_.size(); ++a) {
    if (!actions_[a].is_causative()) continue;
    for (std::size_t j = 0; j < actions_[a].effects.size(); ++j) {
      std::size_t e = effect_action_.size();
      effect_action_.push_back(a);
      effect_slot_.push_back(j);
      action_effects_[a].push_back(e);
      for (Literal l : actions_[a].effects[j].consequent) supporters_[l.index()].push_back(e);
    }
  }
  worlds_ = task.engine().models(bs.formula());
}

std::optional<std::size_t> PlanningGraph::find_action(std::string_view name) const {
  for (std::size_t a = 0; a < actions_.size(); ++a) {
    if (actions_[a].name == name) return a;
  }
  return std::nullopt;
}

const Rational& PlanningGraph::action_cost(std::size_t a) const {
  return task_->problem().cost(actions_[a]);
}

std::size_t PlanningGraph::tie_rank(std::size_t a) const {
  std::size_t n = task_->num_actions();
  return is_persistence(a) ? a - n : a + (actions_.size() - n);
}

WorldMask PlanningGraph::mask(Formula f) const {
  auto it = mask_cache_.find(f.id());
  if (it != mask_cache_.end()) return it->second;
  WorldMask m(worlds_.size());
  for (std::size_t i = 0; i < worlds_.size(); ++i) m[i] = task_->engine().evaluate(f, worlds_[i]);
  mask_cache_.emplace(f.id(), m);
  return m;
}

Formula PlanningGraph::formula_of(const WorldMask& m) const {
  FormulaEngine& engine = task_->engine();
  Formula f = engine.bottom();
  for (std::size_t i = m.find_first(); i != WorldMask::npos; i = m.find_next(i)) {
    f = engine.disj(f, engine.from_state(worlds_[i]));
  }
  return f;
}

Rational PlanningGraph::cover_cells(const WorldMask& worlds, const CostVector& cells) const {
  // cells are disjoint, so the only cover is every cell that meets the target
  Rational total{0};
  WorldMask uncovered = worlds;
  for (const CostCell& cell : cells) {
    WorldMask m = mask(cell.worlds);
    if (!m.intersects(worlds)) continue;
    total += cell.cost;
    uncovered -= m;
  }
  if (uncovered.any()) throw CoverError("cost vector does not cover the requested worlds");
  return total;
}

Rational PlanningGraph::effect_support_cost(std::size_t k, std::size_t e, const WorldMask& worlds) const {
  std::size_t a = effect_action_[e];
  Rational cells = cover_cells(worlds, effect(k, e).cost);
  Rational joint = action_cost(a) + cover_cells(worlds, action(k, a).cost);
  for (Literal l : effect_definition(e).antecedent) joint += cover_cells(worlds, literal(k, l).cost);
  return std::min(cells, joint);
}

Rational PlanningGraph::literal_support_cost(std::size_t k, Literal l, const WorldMask& worlds) const {
  const GraphLevel& level = levels_[k];
  Rational total{0};
  WorldMask uncovered = worlds;
  while (uncovered.any()) {
    std::size_t best = npos;
    Rational best_cost{0};
    std::size_t best_new = 0;
    WorldMask best_mask;
    for (std::size_t e : supporters_[l.index()]) {
      if (!level.effects[e].present()) continue;
      WorldMask fresh = mask(level.effects[e].label) & uncovered;
      std::size_t n = fresh.count();
      if (n == 0) continue;
      Rational c = effect_support_cost(k, e, fresh);
      bool better = best == npos || c < best_cost || (c == best_cost && n > best_new) ||
                    (c == best_cost && n == best_new &&
                     tie_rank(effect_action_[e]) < tie_rank(effect_action_[best]));
      if (better) {
        best = e;
        best_cost = c;
        best_new = n;
        best_mask = std::move(fresh);
      }
    }
    if (best == npos) throw CoverError("literal label is not supported by its effects");
    total += best_cost;
    uncovered -= best_mask;
  }
  return total;
}

Formula PlanningGraph::extended_conjunction(std::size_t k, std::span<const Literal> literals) const {
  if (literals.empty()) return source_.formula();
  FormulaEngine& engine = task_->engine();
  Formula f = engine.top();
  for (Literal l : literals) {
    f = engine.conj(f, literal(k, l).label);
    if (f.is_false()) break;
  }
  return f;
}

CostVector PlanningGraph::extend_partition(const Vertex* prev, Formula label) const {
  CostVector cells;
  Formula fresh = label;
  if (prev != nullptr) {
    cells = prev->cost;
    fresh = label.minus(prev->label);
  }
  if (!fresh.is_false()) cells.push_back(CostCell{fresh, Rational(0)});
  return cells;
}

void PlanningGraph::build_initial_layer() {
  FormulaEngine& engine = task_->engine();
  GraphLevel level;
  level.literals.resize(num_literals());
  for (std::size_t i = 0; i < num_literals(); ++i) {
    Vertex& v = level.literals[i];
    v.label = engine.conj(engine.literal(Literal::from_index(i)), source_.formula());
    if (mode_ == GraphMode::kClug && v.present()) v.cost = {CostCell{v.label, Rational(0)}};
  }
  levels_.push_back(std::move(level));
}

void PlanningGraph::build_action_layer(std::size_t k) {
  FormulaEngine& engine = task_->engine();
  std::vector<Vertex> layer(actions_.size());
  for (std::size_t a = 0; a < actions_.size(); ++a) {
    Vertex& v = layer[a];
    const Action& act = actions_[a];
    v.label = act.is_causative() ? extended_conjunction(k, act.precondition) : engine.bottom();
    if (mode_ != GraphMode::kClug || !v.present()) continue;
    const Vertex* prev = k > 0 ? &levels_[k - 1].actions[a] : nullptr;
    std::size_t old_cells = prev != nullptr ? prev->cost.size() : 0;
    v.cost = extend_partition(prev, v.label);
    for (std::size_t i = 0; i < v.cost.size(); ++i) {
      WorldMask worlds = mask(v.cost[i].worlds);
      Rational fresh{0};
      for (Literal l : act.precondition) fresh += cover_cells(worlds, literal(k, l).cost);
      v.cost[i].cost = i < old_cells ? std::min(v.cost[i].cost, fresh) : fresh;
    }
  }
  levels_[k].actions = std::move(layer);
}

void PlanningGraph::build_effect_layer(std::size_t k) {
  FormulaEngine& engine = task_->engine();
  std::vector<Vertex> layer(effect_action_.size());
  for (std::size_t e = 0; e < effect_action_.size(); ++e) {
    Vertex& v = layer[e];
    std::size_t a = effect_action_[e];
    const Vertex& av = levels_[k].actions[a];
    const ConditionalEffect& def = effect_definition(e);
    v.label = av.present() ? engine.conj(extended_conjunction(k, def.antecedent), av.label) : engine.bottom();
    if (mode_ != GraphMode::kClug || !v.present()) continue;
    const Vertex* prev = k > 0 ? &levels_[k - 1].effects[e] : nullptr;
    std::size_t old_cells = prev != nullptr ? prev->cost.size() : 0;
    v.cost = extend_partition(prev, v.label);
    for (std::size_t i = 0; i < v.cost.size(); ++i) {
      WorldMask worlds = mask(v.cost[i].worlds);
      Rational fresh = action_cost(a) + cover_cells(worlds, av.cost);
      for (Literal l : def.antecedent) fresh += cover_cells(worlds, literal(k, l).cost);
      v.cost[i].cost = i < old_cells ? std::min(v.cost[i].cost, fresh) : fresh;
    }
  }
  levels_[k].effects = std::move(layer);
}

void PlanningGraph::build_next_literal_layer(std::size_t k) {
  FormulaEngine& engine = task_->engine();
  GraphLevel next;
  next.literals.resize(num_literals());
  for (std::size_t i = 0; i < num_literals(); ++i) {
    Formula label = engine.bottom();
    for (std::size_t e : supporters_[i]) label = engine.disj(label, levels_[k].effects[e].label);
    next.literals[i].label = label;
  }
  levels_.push_back(std::move(next));
  if (mode_ != GraphMode::kClug) return;

  for (std::size_t i = 0; i < num_literals(); ++i) {
    Vertex& v = levels_[k + 1].literals[i];
    if (!v.present()) continue;
    const Vertex* prev = &levels_[k].literals[i];
    std::size_t old_cells = prev->cost.size();
    v.cost = extend_partition(prev, v.label);
    for (std::size_t c = 0; c < v.cost.size(); ++c) {
      Rational fresh = literal_support_cost(k, Literal::from_index(i), mask(v.cost[c].worlds));
      v.cost[c].cost = c < old_cells ? std::min(v.cost[c].cost, fresh) : fresh;
    }
  }
}

bool PlanningGraph::literal_layers_equal(std::size_t k1, std::size_t k2) const {
  const auto& a = levels_[k1].literals;
  const auto& b = levels_[k2].literals;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].label != b[i].label) return false;
    if (mode_ == GraphMode::kClug && a[i].cost != b[i].cost) return false;
  }
  return true;
}

std::string PlanningGraph::label_string(Formula f) const {
  std::vector<State> models = task_->engine().models(f);
  std::string out = "[";
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (i) out += ';';
    out += task_->state_name(models[i]);
  }
  return out + "]";
}

std::string PlanningGraph::dump() const {
  const Problem& problem = task_->problem();
  std::ostringstream os;
  auto line = [&](std::size_t k, const char* kind, const std::string& name, const Vertex& v) {
    os << k << ' ' << kind << ' ' << name << ' ' << label_string(v.label);
    for (const CostCell& cell : v.cost) os << ' ' << label_string(cell.worlds) << '=' << to_string(cell.cost);
    os << '\n';
  };
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    const GraphLevel& level = levels_[k];
    for (std::size_t i = 0; i < level.literals.size(); ++i) {
      if (level.literals[i].present()) line(k, "literal", problem.literal_name(Literal::from_index(i)), level.literals[i]);
    }
    for (std::size_t a = 0; a < level.actions.size(); ++a) {
      if (level.actions[a].present()) line(k, "action", actions_[a].name, level.actions[a]);
    }
    for (std::size_t e = 0; e < level.effects.size(); ++e) {
      if (!level.effects[e].present()) continue;
      line(k, "effect", actions_[effect_action_[e]].name + "/" + std::to_string(effect_slot_[e]), level.effects[e]);
    }
  }
  return os.str();
}

PlanningGraph build_graph(const Task& task, const BeliefState& bs, const GraphOptions& options) {
  PlanningGraph graph(task, bs, options.mode);
  std::size_t max_levels = options.max_levels != 0 ? options.max_levels : 2 * task.problem().fluents.size() + 2;
  graph.build_initial_layer();
  for (std::size_t k = 0;; ++k) {
    graph.build_action_layer(k);
    graph.build_effect_layer(k);
    graph.build_next_literal_layer(k);
    if (graph.literal_layers_equal(k + 1, k)) {
      graph.leveled_at_ = k + 1;
      break;
    }
    if (k + 1 >= max_levels) break;
  }
  return graph;
}

std::optional<std::size_t> level_off(const PlanningGraph& graph) { return graph.leveled_at(); }

Formula extended_label(const PlanningGraph& graph, std::size_t k, const FormulaTree& formula) {
  return substitute_literals(
      graph.task().engine(), formula, [&](Literal l) { return graph.literal(k, l).label; },
      graph.source().formula());
}

bool reachable(const PlanningGraph& graph, std::size_t k, const FormulaTree& formula) {
  return graph.source().formula().entails(extended_label(graph, k, formula));
}

}  // namespace lugplan
