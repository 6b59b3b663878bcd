#include <charconv>

#include <json.hpp>

#include "lugplan/domain.hpp"

namespace lugplan {

using nlohmann::json;

namespace {

[[noreturn]] void syntax(const std::string& what) { throw ProblemError(DiagnosticKind::kSyntax, what); }

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) syntax(where + ": missing key \"" + key + "\"");
  return *it;
}

std::vector<Literal> literal_list(const Problem& p, const json& node, const std::string& where) {
  if (!node.is_array()) syntax(where + ": expected an array of literal strings");
  std::vector<Literal> out;
  for (const json& item : node) {
    if (!item.is_string()) syntax(where + ": expected a literal string");
    out.push_back(parse_literal(p, item.get<std::string>()));
  }
  return out;
}

FormulaTree formula_node(const Problem& p, const json& node, const std::string& where) {
  if (node.is_string()) return FormulaTree::lit(parse_literal(p, node.get<std::string>()));
  if (node.is_boolean()) return node.get<bool>() ? FormulaTree::truth() : FormulaTree::falsity();
  if (!node.is_object() || node.size() != 1) syntax(where + ": expected a literal or a single-key and/or/not object");
  auto [key, value] = *node.items().begin();
  if (key == "not") return FormulaTree::negation(formula_node(p, value, where + ".not"));
  if (key != "and" && key != "or") syntax(where + ": unknown connective \"" + key + "\"");
  if (!value.is_array()) syntax(where + "." + key + ": expected an array");
  std::vector<FormulaTree> children;
  for (std::size_t i = 0; i < value.size(); ++i) {
    children.push_back(formula_node(p, value[i], where + "." + key + "[" + std::to_string(i) + "]"));
  }
  return key == "and" ? FormulaTree::all_of(std::move(children)) : FormulaTree::any_of(std::move(children));
}

Rational cost_value(const json& node, const std::string& where) {
  try {
    if (node.is_number_integer()) return Rational(node.get<std::int64_t>());
    if (node.is_string()) return parse_rational(node.get<std::string>());
  } catch (const std::exception& e) {
    syntax(where + ": " + e.what());
  }
  syntax(where + ": cost must be an integer or a \"p/q\" string");
}

json literals_json(const Problem& p, std::span<const Literal> ls) {
  json out = json::array();
  for (Literal l : ls) out.push_back(p.literal_name(l));
  return out;
}

json formula_json(const Problem& p, const FormulaTree& t) {
  using K = FormulaTree::Kind;
  switch (t.kind) {
    case K::kTrue: return json{{"and", json::array()}};
    case K::kFalse: return json{{"or", json::array()}};
    case K::kLiteral: return p.literal_name(t.literal);
    case K::kNot: return json{{"not", formula_json(p, t.children.front())}};
    case K::kAnd:
    case K::kOr: {
      json arr = json::array();
      for (const FormulaTree& c : t.children) arr.push_back(formula_json(p, c));
      return json{{t.kind == K::kAnd ? "and" : "or", arr}};
    }
  }
  return nullptr;
}

json cost_json(const Rational& r) {
  if (r.denominator() == 1) return r.numerator();
  return to_string(r);
}

}  // namespace

Literal parse_literal(const Problem& problem, std::string_view text) {
  bool positive = true;
  if (!text.empty() && text.front() == '!') {
    positive = false;
    text.remove_prefix(1);
  }
  auto id = problem.find_fluent(text);
  if (!id) throw ProblemError(DiagnosticKind::kUnknownFluent, "unknown fluent '" + std::string(text) + "'");
  return Literal{*id, positive};
}

Problem parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ProblemError(DiagnosticKind::kSyntax, "syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) syntax("problem: expected a JSON object");

  Problem p;
  const json& fluents = require(doc, "fluents", "problem");
  if (!fluents.is_array()) syntax("fluents: expected an array of strings");
  for (const json& f : fluents) {
    if (!f.is_string()) syntax("fluents: expected an array of strings");
    p.fluents.push_back(Fluent{static_cast<FluentId>(p.fluents.size()), f.get<std::string>()});
  }

  const json& actions = require(doc, "actions", "problem");
  if (!actions.is_array()) syntax("actions: expected an array");
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const json& node = actions[i];
    std::string where = "actions[" + std::to_string(i) + "]";
    if (!node.is_object()) syntax(where + ": expected an object");
    Action a;
    const json& name = require(node, "name", where);
    if (!name.is_string()) syntax(where + ".name: expected a string");
    a.name = name.get<std::string>();
    std::string type = node.value("type", std::string("causative"));
    if (type == "causative") {
      a.kind = ActionKind::kCausative;
    } else if (type == "sensory") {
      a.kind = ActionKind::kSensory;
    } else {
      syntax(where + ".type: expected \"causative\" or \"sensory\"");
    }
    if (node.contains("precond")) a.precondition = literal_list(p, node["precond"], where + ".precond");
    if (node.contains("effects")) {
      const json& effects = node["effects"];
      if (!effects.is_array()) syntax(where + ".effects: expected an array");
      for (std::size_t j = 0; j < effects.size(); ++j) {
        std::string ew = where + ".effects[" + std::to_string(j) + "]";
        if (!effects[j].is_object()) syntax(ew + ": expected an object");
        ConditionalEffect e;
        if (effects[j].contains("when")) e.antecedent = literal_list(p, effects[j]["when"], ew + ".when");
        e.consequent = literal_list(p, require(effects[j], "then", ew), ew + ".then");
        a.effects.push_back(std::move(e));
      }
    }
    if (node.contains("outcomes")) {
      const json& outcomes = node["outcomes"];
      if (!outcomes.is_array()) syntax(where + ".outcomes: expected an array");
      for (std::size_t j = 0; j < outcomes.size(); ++j) {
        a.outcomes.push_back(to_nnf(formula_node(p, outcomes[j], where + ".outcomes[" + std::to_string(j) + "]")));
      }
    }
    const json& costs = require(node, "cost", where);
    if (costs.is_array()) {
      for (std::size_t j = 0; j < costs.size(); ++j) {
        a.costs.push_back(cost_value(costs[j], where + ".cost[" + std::to_string(j) + "]"));
      }
    } else {
      a.costs.push_back(cost_value(costs, where + ".cost"));
    }
    p.actions.push_back(std::move(a));
  }

  p.init = to_nnf(formula_node(p, require(doc, "init", "problem"), "init"));

  const json& goal = require(doc, "goal", "problem");
  if (goal.is_array()) {
    p.goal = literal_list(p, goal, "goal");
  } else if (goal.is_string()) {
    p.goal = {parse_literal(p, goal.get<std::string>())};
  } else if (goal.is_object() && goal.size() == 1 && goal.contains("and")) {
    FormulaTree t = to_nnf(formula_node(p, goal, "goal"));
    if (!t.is_literal_conjunction()) {
      throw ProblemError(DiagnosticKind::kNonConjunctiveGoal, "goal must be a conjunction of literals");
    }
    for (const FormulaTree& c : t.children) p.goal.push_back(c.literal);
  } else {
    throw ProblemError(DiagnosticKind::kNonConjunctiveGoal, "goal must be a conjunction of literals");
  }

  if (doc.contains("cost_model_count")) {
    const json& n = doc["cost_model_count"];
    if (!n.is_number_unsigned()) syntax("cost_model_count: expected a positive integer");
    p.cost_model_count = n.get<std::size_t>();
  } else {
    p.cost_model_count = p.actions.empty() ? 1 : p.actions.front().costs.size();
  }

  auto diagnostics = validate(p);
  if (!diagnostics.empty()) {
    std::string message;
    for (const Diagnostic& d : diagnostics) {
      if (!message.empty()) message += "; ";
      message += std::string(to_string(d.kind)) + ": " + d.message;
    }
    throw ProblemError(diagnostics.front().kind, message);
  }
  return p;
}

std::string serialize_problem(const Problem& p) {
  json doc;
  json fluents = json::array();
  for (const Fluent& f : p.fluents) fluents.push_back(f.name);
  doc["fluents"] = fluents;
  doc["cost_model_count"] = p.cost_model_count;

  json actions = json::array();
  for (const Action& a : p.actions) {
    json node;
    node["name"] = a.name;
    node["type"] = a.is_causative() ? "causative" : "sensory";
    node["precond"] = literals_json(p, a.precondition);
    if (a.is_causative()) {
      json effects = json::array();
      for (const ConditionalEffect& e : a.effects) {
        effects.push_back(json{{"when", literals_json(p, e.antecedent)}, {"then", literals_json(p, e.consequent)}});
      }
      node["effects"] = effects;
    } else {
      json outcomes = json::array();
      for (const FormulaTree& o : a.outcomes) outcomes.push_back(formula_json(p, o));
      node["outcomes"] = outcomes;
    }
    json costs = json::array();
    for (const Rational& c : a.costs) costs.push_back(cost_json(c));
    node["cost"] = costs;
    actions.push_back(node);
  }
  doc["actions"] = actions;
  doc["init"] = formula_json(p, p.init);
  doc["goal"] = literals_json(p, p.goal);
  return doc.dump(2);
}

}  // namespace lugplan
