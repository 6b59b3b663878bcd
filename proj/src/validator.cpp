#include "lugplan/validator.hpp"

#include <stdexcept>

#include <json.hpp>

namespace lugplan {

namespace {

std::string edge_summary(const Task& task, const PlanDag& plan, std::size_t n) {
  return "node " + std::to_string(n) + " (" + task.action(*plan.nodes[n].action).name + ")";
}

}  // namespace

ValidationReport validate_plan(const Task& task, const PlanDag& plan) {
  check_structure(plan);
  const Problem& problem = task.problem();
  FormulaEngine& engine = task.engine();
  ValidationReport report;
  report.strong = true;

  std::vector<std::vector<std::size_t>> out(plan.nodes.size());
  for (std::size_t i = 0; i < plan.edges.size(); ++i) out[plan.edges[i].from].push_back(i);

  for (std::size_t n = 0; n < plan.nodes.size(); ++n) {
    const PlanNode& node = plan.nodes[n];
    if (!node.action) {
      if (!out[n].empty()) report.diagnostics.push_back("leaf node " + std::to_string(n) + " has outgoing edges");
      continue;
    }
    const Action& a = task.action(*node.action);
    std::size_t expected = a.is_causative() ? 1 : a.outcomes.size();
    if (a.is_causative() && out[n].size() != 1) {
      report.diagnostics.push_back(edge_summary(task, plan, n) + " needs exactly one edge");
    }
    if (a.is_sensory() && (out[n].empty() || out[n].size() > expected)) {
      report.diagnostics.push_back(edge_summary(task, plan, n) + " has " + std::to_string(out[n].size()) +
                                   " outcome edges");
    }
  }

  for (const State& init : engine.models(task.init())) {
    InitialStateRun run{init, {}, init, Rational(0), false};
    std::string name = task.state_name(init);
    State s = init;
    std::size_t n = plan.root;
    // the DAG is acyclic, so every walk ends within |nodes| steps
    for (std::size_t step = 0; step <= plan.nodes.size(); ++step) {
      const PlanNode& node = plan.nodes[n];
      if (!engine.evaluate(node.belief, s)) {
        report.diagnostics.push_back("from " + name + ": state " + task.state_name(s) + " is outside node " +
                                     std::to_string(n) + "'s belief");
      }
      if (!node.action) {
        run.reached_goal = s.holds_all(problem.goal);
        break;
      }
      const Action& a = task.action(*node.action);
      if (!s.holds_all(a.precondition)) {
        report.diagnostics.push_back("from " + name + ": " + a.name + " is not executable in " + task.state_name(s));
        break;
      }
      run.actions.push_back(a.name);
      run.cost += problem.cost(a);
      std::optional<std::size_t> next;
      if (a.is_causative()) {
        s = successor(s, a);
        if (!out[n].empty()) next = plan.edges[out[n].front()].to;
      } else {
        std::vector<std::size_t> holding;
        const auto& outcomes = task.outcomes(*node.action);
        for (std::size_t o = 0; o < outcomes.size(); ++o) {
          if (engine.evaluate(outcomes[o], s)) holding.push_back(o);
        }
        if (holding.empty()) {
          report.diagnostics.push_back("from " + name + ": no outcome of " + a.name + " holds");
        } else if (holding.size() > 1) {
          report.diagnostics.push_back("from " + name + ": several outcomes of " + a.name + " hold; taking the first");
        }
        for (std::size_t o : holding) {
          for (std::size_t e : out[n]) {
            if (plan.edges[e].outcome == o && !next) next = plan.edges[e].to;
          }
          if (next) break;
        }
      }
      if (!next) {
        report.diagnostics.push_back("from " + name + ": no edge to follow after " + edge_summary(task, plan, n));
        break;
      }
      n = *next;
    }
    run.terminal = s;
    if (!run.reached_goal) report.strong = false;
    report.per_initial_state.push_back(std::move(run));
  }

  // Paths and the recursive mean, bottom-up in reverse topological order.
  std::vector<std::size_t> order = topological_order(plan);
  std::vector<Rational> value(plan.nodes.size(), Rational(0));
  std::vector<std::vector<PathRecord>> paths(plan.nodes.size());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::size_t n = *it;
    const PlanNode& node = plan.nodes[n];
    if (!node.action || out[n].empty()) {
      paths[n] = {PathRecord{}};
      continue;
    }
    const Action& a = task.action(*node.action);
    Rational c = problem.cost(a);
    Rational sum{0};
    for (std::size_t e : out[n]) {
      std::size_t child = plan.edges[e].to;
      sum += value[child];
      for (const PathRecord& tail : paths[child]) {
        PathRecord p{{a.name}, c + tail.cost};
        p.actions.insert(p.actions.end(), tail.actions.begin(), tail.actions.end());
        paths[n].push_back(std::move(p));
      }
    }
    value[n] = c + sum / static_cast<std::int64_t>(out[n].size());
  }
  report.mean_path_cost = value[plan.root];
  report.per_path = paths[plan.root];
  Rational total{0};
  for (const PathRecord& p : report.per_path) total += p.cost;
  report.path_average = total / static_cast<std::int64_t>(report.per_path.size());
  Rational expected{0};
  for (const InitialStateRun& r : report.per_initial_state) expected += r.cost;
  if (!report.per_initial_state.empty()) {
    report.expected_cost_over_initial_states =
        expected / static_cast<std::int64_t>(report.per_initial_state.size());
  }
  return report;
}

std::pair<Rational, Rational> metrics(const ValidationReport& report) {
  if (!report.strong) throw std::logic_error("metrics are undefined for a plan that is not strong");
  return {report.mean_path_cost, report.expected_cost_over_initial_states};
}

std::string report_to_json(const Task& task, const ValidationReport& report) {
  using nlohmann::json;
  json runs = json::array();
  for (const InitialStateRun& r : report.per_initial_state) {
    runs.push_back({{"initial", task.state_name(r.initial)},
                    {"path", r.actions},
                    {"terminal", task.state_name(r.terminal)},
                    {"cost", to_string(r.cost)},
                    {"reached_goal", r.reached_goal}});
  }
  json paths = json::array();
  for (const PathRecord& p : report.per_path) paths.push_back({{"actions", p.actions}, {"cost", to_string(p.cost)}});
  json doc{{"strong", report.strong},
           {"mean_path_cost", to_string(report.mean_path_cost)},
           {"path_average", to_string(report.path_average)},
           {"expected_cost_over_initial_states", to_string(report.expected_cost_over_initial_states)},
           {"per_initial_state", runs},
           {"per_path", paths},
           {"diagnostics", report.diagnostics}};
  return doc.dump(2);
}

}  // namespace lugplan
