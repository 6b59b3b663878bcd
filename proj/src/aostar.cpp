#include "lugplan/aostar.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace lugplan {

std::string_view to_string(SearchFailure failure) {
  switch (failure) {
    case SearchFailure::kTimeout: return "timeout";
    case SearchFailure::kExpansionLimit: return "expansion limit";
    case SearchFailure::kExhausted: return "exhausted";
  }
  return "?";
}

AoStar::AoStar(const Task& task, Heuristic& heuristic)
    : task_(&task),
      heuristic_(&heuristic),
      calls_at_start_(heuristic.counters().calls),
      levels_at_start_(heuristic.counters().levels_built) {
  intern(BeliefState(task.init()));
}

std::optional<std::size_t> AoStar::find(Formula belief) const {
  auto it = index_.find(belief.id());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t AoStar::intern(const BeliefState& belief) {
  auto [it, inserted] = index_.emplace(belief.formula().id(), nodes_.size());
  if (!inserted) return it->second;
  SearchNode n{belief, Rational(0), std::nullopt, false, false, false, {}, {}};
  if (satisfies_goal(*task_, belief)) {
    n.goal = n.solved = n.expanded = true;
  } else {
    n.f = (*heuristic_)(*task_, belief);
    ++open_;
    stats_.peak_open = std::max(stats_.peak_open, open_);
  }
  nodes_.push_back(std::move(n));
  blocked_.push_back(false);
  return it->second;
}

std::optional<std::size_t> AoStar::select_tip() const {
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<std::size_t> stack{root()};
  while (!stack.empty()) {
    std::size_t n = stack.back();
    stack.pop_back();
    if (seen[n] || nodes_[n].solved) continue;
    seen[n] = true;
    const SearchNode& node = nodes_[n];
    if (!node.expanded) return n;
    if (!node.best) continue;
    const auto& children = node.connectors[*node.best].children;
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
  }
  return std::nullopt;
}

std::vector<std::size_t> AoStar::expand(std::size_t n) {
  if (nodes_.at(n).expanded) return {};
  std::size_t before = nodes_.size();
  const BeliefState belief = nodes_[n].belief;
  std::vector<Connector> connectors;
  for (std::size_t a = 0; a < task_->num_actions(); ++a) {
    if (!applicable(*task_, belief, a)) continue;
    Connector c{a, {}, {}};
    bool loops = false;
    if (task_->action(a).is_causative()) {
      BeliefState child = progress(*task_, belief, a);
      loops = child == belief;
      if (!loops) c.children.push_back(intern(child));
    } else {
      for (auto& [outcome, child] : observe(*task_, belief, a)) {
        if (child == belief) {
          loops = true;
          break;
        }
        c.outcomes.push_back(outcome);
        c.children.push_back(intern(child));
      }
    }
    if (!loops) connectors.push_back(std::move(c));
  }
  SearchNode& node = nodes_[n];
  node.expanded = true;
  --open_;
  ++stats_.nodes_expanded;
  for (const Connector& c : connectors) {
    for (std::size_t child : c.children) {
      auto& parents = nodes_[child].parents;
      if (std::find(parents.begin(), parents.end(), n) == parents.end()) parents.push_back(n);
    }
  }
  node.connectors = std::move(connectors);
  stats_.graph_nodes = nodes_.size();
  std::vector<std::size_t> fresh;
  for (std::size_t i = before; i < nodes_.size(); ++i) fresh.push_back(i);
  return fresh;
}

CostEstimate AoStar::connector_cost(std::size_t, const Connector& c) const {
  Rational sum{0};
  for (std::size_t child : c.children) {
    const CostEstimate& f = nodes_[child].f;
    if (f.is_infinite()) return CostEstimate::infinity();
    sum += f.value();
  }
  return task_->cost(c.action) + sum / static_cast<std::int64_t>(c.children.size());
}

bool AoStar::closes_cycle(std::size_t n, const Connector& c) const {
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<std::size_t> stack(c.children.begin(), c.children.end());
  while (!stack.empty()) {
    std::size_t m = stack.back();
    stack.pop_back();
    if (m == n) return true;
    if (seen[m] || nodes_[m].solved) continue;
    seen[m] = true;
    const SearchNode& node = nodes_[m];
    if (!node.best) continue;
    for (std::size_t child : node.connectors[*node.best].children) stack.push_back(child);
  }
  return false;
}

// Recomputes f, best and solved for an expanded, unsolved node. Returns whether the best
// connector changed; f and solved changes are reported through the caller's comparison.
bool AoStar::update(std::size_t n) {
  SearchNode& node = nodes_[n];
  std::optional<std::size_t> best;
  CostEstimate best_f = CostEstimate::infinity();
  bool blocked = false;
  for (std::size_t i = 0; i < node.connectors.size(); ++i) {
    const Connector& c = node.connectors[i];
    CostEstimate f = connector_cost(n, c);
    if (f.is_finite() && closes_cycle(n, c)) {
      blocked = true;
      continue;
    }
    if (f < best_f) {
      best = i;
      best_f = f;
    }
  }
  blocked_[n] = blocked;
  bool changed = best != node.best;
  node.best = best;
  node.f = best_f;
  if (best) {
    const auto& children = node.connectors[*best].children;
    node.solved = std::all_of(children.begin(), children.end(), [&](std::size_t c) { return nodes_[c].solved; });
  }
  return changed;
}

void AoStar::revise(std::vector<std::size_t> changed) {
  std::deque<std::size_t> queue;
  std::vector<bool> queued(nodes_.size(), false);
  auto push = [&](std::size_t m) {
    if (!queued[m] && !nodes_[m].solved && nodes_[m].expanded) {
      queued[m] = true;
      queue.push_back(m);
    }
  };
  for (std::size_t m : changed) push(m);
  // guards against oscillation between cycle-blocked alternatives
  std::size_t budget = 64 * nodes_.size() + 64;
  while (!queue.empty() && budget-- > 0) {
    std::size_t n = queue.front();
    queue.pop_front();
    queued[n] = false;
    ++stats_.revisions;
    CostEstimate old_f = nodes_[n].f;
    bool best_changed = update(n);
    if (!best_changed && old_f == nodes_[n].f && !nodes_[n].solved) continue;
    for (std::size_t p : nodes_[n].parents) push(p);
    if (best_changed) {
      for (std::size_t m = 0; m < nodes_.size(); ++m) {
        if (blocked_[m]) push(m);
      }
    }
  }
}

PlanDag AoStar::extract_plan() const {
  if (!nodes_[root()].solved) throw std::logic_error("extract_plan: root is not solved");
  PlanDag plan;
  plan.cost_model = task_->problem().cost_model;
  std::unordered_map<std::size_t, std::size_t> id;
  std::deque<std::size_t> queue{root()};
  id[root()] = 0;
  plan.nodes.push_back(PlanNode{nodes_[root()].belief.formula(), std::nullopt});
  while (!queue.empty()) {
    std::size_t n = queue.front();
    queue.pop_front();
    const SearchNode& node = nodes_[n];
    if (node.goal) continue;
    const Connector& c = node.connectors.at(*node.best);
    plan.nodes[id[n]].action = c.action;
    for (std::size_t i = 0; i < c.children.size(); ++i) {
      std::size_t child = c.children[i];
      auto [it, inserted] = id.emplace(child, plan.nodes.size());
      if (inserted) {
        plan.nodes.push_back(PlanNode{nodes_[child].belief.formula(), std::nullopt});
        queue.push_back(child);
      }
      std::optional<std::size_t> outcome;
      if (!c.outcomes.empty()) outcome = c.outcomes[i];
      plan.edges.push_back(PlanEdge{id[n], it->second, outcome});
    }
  }
  check_structure(plan);
  return plan;
}

SearchResult AoStar::run(const SearchLimits& limits) {
  using clock = std::chrono::steady_clock;
  auto start = clock::now();
  SearchResult result;
  auto finish = [&](std::optional<SearchFailure> failure) {
    stats_.heuristic_calls = heuristic_->counters().calls - calls_at_start_;
    stats_.levels_built = heuristic_->counters().levels_built - levels_at_start_;
    stats_.graph_nodes = nodes_.size();
    stats_.time_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    result.failure = failure;
    result.root_f = nodes_[root()].f;
    if (!failure) result.plan = extract_plan();
    result.stats = stats_;
    return result;
  };
  while (!nodes_[root()].solved) {
    if (nodes_[root()].f.is_infinite()) return finish(SearchFailure::kExhausted);
    if (limits.max_expansions != 0 && stats_.nodes_expanded >= limits.max_expansions) {
      return finish(SearchFailure::kExpansionLimit);
    }
    if (limits.time_limit > 0 &&
        std::chrono::duration<double>(clock::now() - start).count() > limits.time_limit) {
      return finish(SearchFailure::kTimeout);
    }
    auto tip = select_tip();
    if (!tip) return finish(SearchFailure::kExhausted);
    expand(*tip);
    revise({*tip});
  }
  return finish(std::nullopt);
}

SearchResult search(const Task& task, Heuristic& heuristic, const SearchLimits& limits) {
  AoStar graph(task, heuristic);
  return graph.run(limits);
}

}  // namespace lugplan
