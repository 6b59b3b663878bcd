#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace lugplan {

using FluentId = std::uint32_t;

struct Fluent {
  FluentId id = 0;
  std::string name;

  friend bool operator==(const Fluent&, const Fluent&) = default;
};

/// A fluent with a polarity. Literals index densely as 2*fluent + (negated ? 1 : 0).
struct Literal {
  FluentId fluent = 0;
  bool positive = true;

  Literal negated() const { return Literal{fluent, !positive}; }
  std::size_t index() const { return 2 * static_cast<std::size_t>(fluent) + (positive ? 0 : 1); }
  static Literal from_index(std::size_t index) {
    return Literal{static_cast<FluentId>(index / 2), index % 2 == 0};
  }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal& a, const Literal& b) { return a.index() <=> b.index(); }
};

/// Complete interpretation over the fluents of one engine.
struct State {
  std::vector<bool> values;

  bool holds(Literal l) const { return values[l.fluent] == l.positive; }
  bool holds_all(std::span<const Literal> conjunction) const;

  friend bool operator==(const State&, const State&) = default;
  friend auto operator<=>(const State& a, const State& b) { return a.values <=> b.values; }
};

class FormulaEngine;

/// Handle to a canonical formula owned by a FormulaEngine. Two formulas from the same
/// engine are logically equivalent iff they compare equal.
class Formula {
 public:
  Formula() = default;

  bool is_true() const { return id_ == 1; }
  bool is_false() const { return id_ == 0; }
  std::uint32_t id() const { return id_; }
  FormulaEngine* engine() const { return engine_; }

  Formula operator&(const Formula& other) const;
  Formula operator|(const Formula& other) const;
  Formula operator~() const;
  /// this ∧ ¬other
  Formula minus(const Formula& other) const;
  bool entails(const Formula& other) const;

  friend bool operator==(const Formula& a, const Formula& b) { return a.id_ == b.id_; }

 private:
  friend class FormulaEngine;
  Formula(FormulaEngine* engine, std::uint32_t id) : engine_(engine), id_(id) {}

  FormulaEngine* engine_ = nullptr;
  std::uint32_t id_ = 0;
};

/// Reduced ordered BDD manager. Variable order is fluent id order.
///
/// Not thread-safe: one engine per thread, or external locking.
class FormulaEngine {
 public:
  explicit FormulaEngine(std::size_t num_fluents);

  FormulaEngine(const FormulaEngine&) = delete;
  FormulaEngine& operator=(const FormulaEngine&) = delete;

  std::size_t num_fluents() const { return num_vars_; }

  Formula top() { return Formula(this, 1); }
  Formula bottom() { return Formula(this, 0); }
  Formula literal(Literal l);
  /// Conjunction of literals; ⊤ when empty.
  Formula cube(std::span<const Literal> literals);
  Formula from_state(const State& s);
  Formula from_models(std::span<const State> states);

  Formula conj(Formula a, Formula b);
  Formula disj(Formula a, Formula b);
  Formula neg(Formula a);
  bool entails(Formula a, Formula b);

  bool evaluate(Formula f, const State& s) const;
  /// All satisfying total assignments, sorted ascending.
  std::vector<State> models(Formula f) const;
  /// Number of satisfying total assignments (saturates at 2^63).
  std::uint64_t model_count(Formula f) const;

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    std::uint32_t var;
    std::uint32_t lo;
    std::uint32_t hi;
  };

  enum class Op : std::uint32_t { kAnd = 0, kOr = 1, kNot = 2 };

  struct CacheEntry {
    std::uint32_t a = 0xffffffffu;
    std::uint32_t b = 0;
    std::uint32_t op = 0;
    std::uint32_t result = 0;
  };

  std::uint32_t make_node(std::uint32_t var, std::uint32_t lo, std::uint32_t hi);
  std::uint32_t apply(Op op, std::uint32_t a, std::uint32_t b);
  std::uint32_t negate(std::uint32_t a);
  std::uint32_t var_of(std::uint32_t id) const { return nodes_[id].var; }

  CacheEntry& cache_slot(Op op, std::uint32_t a, std::uint32_t b);

  void collect_models(std::uint32_t id, std::uint32_t var, State& partial,
                      std::vector<State>& out) const;

  std::size_t num_vars_;
  std::vector<Node> nodes_;
  struct NodeKeyHash {
    std::size_t operator()(const Node& n) const noexcept;
  };
  struct NodeKeyEq {
    bool operator()(const Node& a, const Node& b) const noexcept {
      return a.var == b.var && a.lo == b.lo && a.hi == b.hi;
    }
  };
  std::unordered_map<Node, std::uint32_t, NodeKeyHash, NodeKeyEq> unique_;
  std::vector<CacheEntry> cache_;
};

/// Connective tree over literals, as read from problem files. After to_nnf() every
/// kNot has been pushed into literal leaves.
struct FormulaTree {
  enum class Kind { kTrue, kFalse, kLiteral, kAnd, kOr, kNot };

  Kind kind = Kind::kTrue;
  Literal literal{};
  std::vector<FormulaTree> children;

  static FormulaTree truth() { return FormulaTree{Kind::kTrue, {}, {}}; }
  static FormulaTree falsity() { return FormulaTree{Kind::kFalse, {}, {}}; }
  static FormulaTree lit(Literal l) { return FormulaTree{Kind::kLiteral, l, {}}; }
  static FormulaTree all_of(std::vector<FormulaTree> c) { return FormulaTree{Kind::kAnd, {}, std::move(c)}; }
  static FormulaTree any_of(std::vector<FormulaTree> c) { return FormulaTree{Kind::kOr, {}, std::move(c)}; }
  static FormulaTree negation(FormulaTree c) {
    FormulaTree t{Kind::kNot, {}, {}};
    t.children.push_back(std::move(c));
    return t;
  }
  static FormulaTree conjunction(std::span<const Literal> literals);

  bool is_nnf() const;
  /// Conjunction of literals (possibly a single literal, or ⊤)?
  bool is_literal_conjunction() const;

  friend bool operator==(const FormulaTree&, const FormulaTree&) = default;
};

/// Pushes negations to the leaves and flattens nested and/or of the same kind.
/// Idempotent.
FormulaTree to_nnf(const FormulaTree& tree);

/// Canonical formula for a tree (any shape, negations allowed).
Formula build(FormulaEngine& engine, const FormulaTree& tree);

/// Extended-label substitution over an NNF tree: homomorphic over ∧ and ∨,
/// ⊤ ↦ source, ⊥ ↦ ⊥, l ↦ binding(l). Unbound literals should map to ⊥.
Formula substitute_literals(FormulaEngine& engine, const FormulaTree& nnf,
                            const std::function<Formula(Literal)>& binding, Formula source);

}  // namespace lugplan
