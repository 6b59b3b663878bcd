#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lugplan/formula.hpp"
#include "lugplan/rational.hpp"

namespace lugplan {

/// antecedent ⟹ consequent, both conjunctions of literals. Empty antecedent is ⊤.
struct ConditionalEffect {
  std::vector<Literal> antecedent;
  std::vector<Literal> consequent;

  friend bool operator==(const ConditionalEffect&, const ConditionalEffect&) = default;
};

enum class ActionKind { kCausative, kSensory };

struct Action {
  std::string name;
  ActionKind kind = ActionKind::kCausative;
  /// Execution precondition; empty is ⊤.
  std::vector<Literal> precondition;
  /// Causative actions only.
  std::vector<ConditionalEffect> effects;
  /// Sensory actions only, each in negation normal form.
  std::vector<FormulaTree> outcomes;
  /// One entry per cost model.
  std::vector<Rational> costs;

  bool is_causative() const { return kind == ActionKind::kCausative; }
  bool is_sensory() const { return kind == ActionKind::kSensory; }

  friend bool operator==(const Action&, const Action&) = default;
};

struct Problem {
  std::vector<Fluent> fluents;
  std::vector<Action> actions;
  /// Initial belief, in negation normal form.
  FormulaTree init;
  /// Conjunctive goal.
  std::vector<Literal> goal;
  std::size_t cost_model_count = 1;
  /// Active cost model (0-based).
  std::size_t cost_model = 0;

  const Rational& cost(const Action& a) const { return a.costs.at(cost_model); }
  std::optional<FluentId> find_fluent(std::string_view name) const;
  std::optional<std::size_t> find_action(std::string_view name) const;
  std::string literal_name(Literal l) const;

  friend bool operator==(const Problem&, const Problem&) = default;
};

enum class DiagnosticKind {
  kSyntax,
  kUnknownFluent,
  kDuplicateName,
  kCostMismatch,
  kNegativeCost,
  kUnsatisfiableInit,
  kNonConjunctiveGoal,
  kEmptyGoal,
  kInconsistentConsequent,
  kNondeterministicEffects,
  kActionArity,
  kMixedAction,
  kBadCostModel,
};

std::string_view to_string(DiagnosticKind kind);

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
};

class ProblemError : public std::runtime_error {
 public:
  ProblemError(DiagnosticKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  DiagnosticKind kind() const { return kind_; }

 private:
  DiagnosticKind kind_;
};

/// Checks every Action/Problem invariant; one diagnostic per violation.
std::vector<Diagnostic> validate(const Problem& problem);

/// Parses and validates a JSON problem document. Throws ProblemError.
Problem parse_problem(std::string_view text);

/// Canonical JSON document for a problem; parse_problem(serialize_problem(p)) == p.
std::string serialize_problem(const Problem& problem);

/// Frame action for a literal: precondition l, single effect ⊤ ⟹ l, zero cost in every model.
Action persistence(const Problem& problem, Literal l);

/// "x" or "!x" into a literal; throws ProblemError(kUnknownFluent).
Literal parse_literal(const Problem& problem, std::string_view text);

/// A problem bound to a formula engine, with formulas for the init belief and
/// sensor outcomes. Owns the engine; formulas handed out stay valid for its lifetime.
class Task {
 public:
  explicit Task(Problem problem);

  Task(Task&&) noexcept = default;
  Task& operator=(Task&&) noexcept = default;

  const Problem& problem() const { return problem_; }
  FormulaEngine& engine() const { return *engine_; }
  Formula init() const { return init_; }
  Formula precondition(std::size_t action) const { return preconditions_[action]; }
  Formula goal() const { return goal_; }
  const std::vector<Formula>& outcomes(std::size_t action) const { return outcomes_[action]; }
  const Action& action(std::size_t i) const { return problem_.actions[i]; }
  std::size_t num_actions() const { return problem_.actions.size(); }
  const Rational& cost(std::size_t action) const { return problem_.cost(problem_.actions[action]); }

  /// Literal-by-literal rendering of a state, e.g. "(s,!r)".
  std::string state_name(const State& s) const;

 private:
  Problem problem_;
  std::unique_ptr<FormulaEngine> engine_;
  Formula init_;
  Formula goal_;
  std::vector<Formula> preconditions_;
  std::vector<std::vector<Formula>> outcomes_;
};

/// Successor of a state under a causative action (effects evaluated against s).
State successor(const State& s, const Action& action);

}  // namespace lugplan
