#include "lugplan/domain.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace lugplan {

namespace {

bool consistent(std::span<const Literal> a, std::span<const Literal> b = {}) {
  std::set<std::size_t> seen;
  for (auto part : {a, b}) {
    for (Literal l : part) seen.insert(l.index());
  }
  return std::none_of(seen.begin(), seen.end(), [&](std::size_t i) {
    return i % 2 == 0 && seen.count(i + 1) > 0;
  });
}

bool literals_in_range(const Problem& p, std::span<const Literal> ls) {
  return std::all_of(ls.begin(), ls.end(), [&](Literal l) { return l.fluent < p.fluents.size(); });
}

bool tree_in_range(const Problem& p, const FormulaTree& t) {
  if (t.kind == FormulaTree::Kind::kLiteral) return t.literal.fluent < p.fluents.size();
  return std::all_of(t.children.begin(), t.children.end(),
                     [&](const FormulaTree& c) { return tree_in_range(p, c); });
}

}  // namespace

std::string_view to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::kSyntax: return "syntax";
    case DiagnosticKind::kUnknownFluent: return "unknown-fluent";
    case DiagnosticKind::kDuplicateName: return "duplicate-name";
    case DiagnosticKind::kCostMismatch: return "cost-mismatch";
    case DiagnosticKind::kNegativeCost: return "negative-cost";
    case DiagnosticKind::kUnsatisfiableInit: return "unsatisfiable-init";
    case DiagnosticKind::kNonConjunctiveGoal: return "non-conjunctive-goal";
    case DiagnosticKind::kEmptyGoal: return "empty-goal";
    case DiagnosticKind::kInconsistentConsequent: return "inconsistent-consequent";
    case DiagnosticKind::kNondeterministicEffects: return "nondeterministic-effects";
    case DiagnosticKind::kActionArity: return "action-arity";
    case DiagnosticKind::kMixedAction: return "mixed-action";
    case DiagnosticKind::kBadCostModel: return "bad-cost-model";
  }
  return "unknown";
}

std::optional<FluentId> Problem::find_fluent(std::string_view name) const {
  for (const Fluent& f : fluents) {
    if (f.name == name) return f.id;
  }
  return std::nullopt;
}

std::optional<std::size_t> Problem::find_action(std::string_view name) const {
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].name == name) return i;
  }
  return std::nullopt;
}

std::string Problem::literal_name(Literal l) const {
  return (l.positive ? "" : "!") + fluents.at(l.fluent).name;
}

std::vector<Diagnostic> validate(const Problem& p) {
  std::vector<Diagnostic> out;
  auto report = [&](DiagnosticKind kind, std::string message) {
    out.push_back(Diagnostic{kind, std::move(message)});
  };

  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < p.fluents.size(); ++i) {
    const Fluent& f = p.fluents[i];
    if (f.id != i) report(DiagnosticKind::kDuplicateName, "fluent ids must be dense, got " + f.name);
    if (f.name.empty() || f.name.front() == '!') {
      report(DiagnosticKind::kSyntax, "invalid fluent name '" + f.name + "'");
    }
    if (!names.insert(f.name).second) report(DiagnosticKind::kDuplicateName, "duplicate fluent " + f.name);
  }

  if (p.cost_model_count == 0) report(DiagnosticKind::kBadCostModel, "cost_model_count must be positive");
  if (p.cost_model >= std::max<std::size_t>(p.cost_model_count, 1)) {
    report(DiagnosticKind::kBadCostModel, "active cost model out of range");
  }

  std::unordered_set<std::string> action_names;
  for (const Action& a : p.actions) {
    const std::string where = "action " + a.name + ": ";
    if (!action_names.insert(a.name).second) report(DiagnosticKind::kDuplicateName, "duplicate action " + a.name);
    if (a.costs.size() != p.cost_model_count) {
      report(DiagnosticKind::kCostMismatch, where + "has " + std::to_string(a.costs.size()) +
                                                " costs, expected " + std::to_string(p.cost_model_count));
    }
    for (const Rational& c : a.costs) {
      if (c < 0) report(DiagnosticKind::kNegativeCost, where + "negative cost " + to_string(c));
    }
    if (!literals_in_range(p, a.precondition)) report(DiagnosticKind::kUnknownFluent, where + "precondition");

    if (a.is_causative()) {
      if (!a.outcomes.empty()) report(DiagnosticKind::kMixedAction, where + "causative action with outcomes");
      if (a.effects.empty()) report(DiagnosticKind::kActionArity, where + "causative action needs an effect");
      for (const ConditionalEffect& e : a.effects) {
        if (!literals_in_range(p, e.antecedent) || !literals_in_range(p, e.consequent)) {
          report(DiagnosticKind::kUnknownFluent, where + "effect literal");
          continue;
        }
        if (e.consequent.empty()) report(DiagnosticKind::kActionArity, where + "empty consequent");
        if (!consistent(e.consequent)) {
          report(DiagnosticKind::kInconsistentConsequent, where + "consequent contains a complementary pair");
        }
      }
      for (std::size_t i = 0; i < a.effects.size(); ++i) {
        for (std::size_t j = i + 1; j < a.effects.size(); ++j) {
          const auto& e1 = a.effects[i];
          const auto& e2 = a.effects[j];
          if (!literals_in_range(p, e1.antecedent) || !literals_in_range(p, e2.antecedent)) continue;
          if (consistent(e1.antecedent, e2.antecedent) && consistent(e1.antecedent) &&
              consistent(e2.antecedent) && !consistent(e1.consequent, e2.consequent)) {
            report(DiagnosticKind::kNondeterministicEffects,
                   where + "effects " + std::to_string(i) + " and " + std::to_string(j) +
                       " can fire together with conflicting consequents");
          }
        }
      }
    } else {
      if (!a.effects.empty()) report(DiagnosticKind::kMixedAction, where + "sensory action with effects");
      if (a.outcomes.size() < 2) report(DiagnosticKind::kActionArity, where + "sensory action needs >= 2 outcomes");
      for (const FormulaTree& o : a.outcomes) {
        if (!tree_in_range(p, o)) report(DiagnosticKind::kUnknownFluent, where + "outcome literal");
      }
    }
  }

  if (p.goal.empty()) report(DiagnosticKind::kEmptyGoal, "goal must be a nonempty conjunction");
  if (!literals_in_range(p, p.goal)) {
    report(DiagnosticKind::kUnknownFluent, "goal literal");
  } else if (!consistent(p.goal)) {
    report(DiagnosticKind::kNonConjunctiveGoal, "goal contains a complementary pair");
  }

  if (!tree_in_range(p, p.init)) {
    report(DiagnosticKind::kUnknownFluent, "init literal");
  } else {
    FormulaEngine engine(p.fluents.size());
    if (build(engine, p.init).is_false()) report(DiagnosticKind::kUnsatisfiableInit, "init is unsatisfiable");
  }
  return out;
}

Action persistence(const Problem& problem, Literal l) {
  Action a;
  a.name = "noop(" + problem.literal_name(l) + ")";
  a.kind = ActionKind::kCausative;
  a.precondition = {l};
  a.effects = {ConditionalEffect{{}, {l}}};
  a.costs.assign(problem.cost_model_count, Rational(0));
  return a;
}

State successor(const State& s, const Action& action) {
  State next = s;
  for (const ConditionalEffect& e : action.effects) {
    if (!s.holds_all(e.antecedent)) continue;
    for (Literal l : e.consequent) next.values[l.fluent] = l.positive;
  }
  return next;
}

Task::Task(Problem problem)
    : problem_(std::move(problem)),
      engine_(std::make_unique<FormulaEngine>(problem_.fluents.size())) {
  init_ = build(*engine_, problem_.init);
  goal_ = engine_->cube(problem_.goal);
  for (const Action& a : problem_.actions) {
    preconditions_.push_back(engine_->cube(a.precondition));
    std::vector<Formula> outs;
    for (const FormulaTree& o : a.outcomes) outs.push_back(build(*engine_, o));
    outcomes_.push_back(std::move(outs));
  }
}

std::string Task::state_name(const State& s) const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (i) os << ',';
    os << problem_.literal_name(Literal{static_cast<FluentId>(i), static_cast<bool>(s.values[i])});
  }
  os << ')';
  return os.str();
}

}  // namespace lugplan
