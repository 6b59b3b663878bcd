#include "lugplan/plan.hpp"

#include <json.hpp>

namespace lugplan {

using nlohmann::json;

std::vector<std::size_t> PlanDag::out_edges(std::size_t node) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].from == node) out.push_back(i);
  }
  return out;
}

void check_structure(const PlanDag& plan) {
  if (plan.root >= plan.nodes.size()) throw PlanError("plan root is not a node");
  for (const PlanEdge& e : plan.edges) {
    if (e.from >= plan.nodes.size() || e.to >= plan.nodes.size()) {
      throw PlanError("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) + " is dangling");
    }
  }
  topological_order(plan);
}

std::vector<std::size_t> topological_order(const PlanDag& plan) {
  std::vector<std::vector<std::size_t>> succ(plan.nodes.size());
  for (const PlanEdge& e : plan.edges) succ.at(e.from).push_back(e.to);
  // 0 unvisited, 1 on stack, 2 done
  std::vector<int> mark(plan.nodes.size(), 0);
  std::vector<std::size_t> post;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{plan.root, 0}};
  mark.at(plan.root) = 1;
  while (!stack.empty()) {
    auto& [n, i] = stack.back();
    if (i < succ[n].size()) {
      std::size_t m = succ[n][i++];
      if (mark[m] == 1) throw PlanError("plan has a cycle through node " + std::to_string(m));
      if (mark[m] == 0) {
        mark[m] = 1;
        stack.emplace_back(m, 0);
      }
    } else {
      mark[n] = 2;
      post.push_back(n);
      stack.pop_back();
    }
  }
  return {post.rbegin(), post.rend()};
}

std::vector<std::vector<std::string>> belief_models(const Task& task, Formula belief) {
  const Problem& p = task.problem();
  std::vector<std::vector<std::string>> out;
  for (const State& s : task.engine().models(belief)) {
    std::vector<std::string> model;
    for (const Fluent& f : p.fluents) model.push_back(p.literal_name(Literal{f.id, s.values[f.id]}));
    out.push_back(std::move(model));
  }
  return out;
}

std::string plan_to_json(const Task& task, const PlanDag& plan) {
  json nodes = json::array();
  for (std::size_t i = 0; i < plan.nodes.size(); ++i) {
    const PlanNode& n = plan.nodes[i];
    nodes.push_back({{"id", i},
                     {"belief", belief_models(task, n.belief)},
                     {"action", n.action ? task.action(*n.action).name : std::string("goal")}});
  }
  json edges = json::array();
  for (const PlanEdge& e : plan.edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"outcome", e.outcome ? json(*e.outcome) : json(nullptr)}});
  }
  json doc{{"cost_model", plan.cost_model + 1}, {"root", plan.root}, {"nodes", nodes}, {"edges", edges}};
  return doc.dump(2);
}

PlanDag plan_from_json(const Task& task, std::string_view text) {
  const Problem& p = task.problem();
  FormulaEngine& engine = task.engine();
  PlanDag plan;
  try {
    json doc = json::parse(text.begin(), text.end());
    plan.cost_model = doc.value("cost_model", std::size_t{1});
    if (plan.cost_model == 0) throw PlanError("cost_model is 1-based");
    --plan.cost_model;
    plan.root = doc.value("root", std::size_t{0});
    const json& nodes = doc.at("nodes");
    plan.nodes.resize(nodes.size());
    for (const json& n : nodes) {
      std::size_t id = n.at("id").get<std::size_t>();
      if (id >= plan.nodes.size()) throw PlanError("node id " + std::to_string(id) + " out of range");
      std::vector<State> models;
      for (const json& m : n.at("belief")) {
        State s{std::vector<bool>(p.fluents.size(), false)};
        for (const json& lit : m) {
          Literal l = parse_literal(p, lit.get<std::string>());
          s.values[l.fluent] = l.positive;
        }
        models.push_back(std::move(s));
      }
      plan.nodes[id].belief = engine.from_models(models);
      std::string action = n.at("action").get<std::string>();
      if (action != "goal") {
        auto a = p.find_action(action);
        if (!a) throw PlanError("unknown action '" + action + "'");
        plan.nodes[id].action = *a;
      }
    }
    for (const json& e : doc.at("edges")) {
      PlanEdge edge{e.at("from").get<std::size_t>(), e.at("to").get<std::size_t>(), std::nullopt};
      if (e.contains("outcome") && !e["outcome"].is_null()) edge.outcome = e["outcome"].get<std::size_t>();
      plan.edges.push_back(edge);
    }
  } catch (const json::exception& e) {
    throw PlanError(std::string("malformed plan: ") + e.what());
  } catch (const ProblemError& e) {
    throw PlanError(std::string("malformed plan: ") + e.what());
  }
  check_structure(plan);
  return plan;
}

}  // namespace lugplan
