#include "lugplan/formula.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace lugplan {

namespace {

constexpr std::uint32_t kFalseId = 0;
constexpr std::uint32_t kTrueId = 1;
constexpr std::size_t kCacheSize = 1u << 18;

std::size_t mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return static_cast<std::size_t>(x);
}

}  // namespace

bool State::holds_all(std::span<const Literal> conjunction) const {
  return std::all_of(conjunction.begin(), conjunction.end(), [&](Literal l) { return holds(l); });
}

Formula Formula::operator&(const Formula& other) const { return engine_->conj(*this, other); }
Formula Formula::operator|(const Formula& other) const { return engine_->disj(*this, other); }
Formula Formula::operator~() const { return engine_->neg(*this); }
Formula Formula::minus(const Formula& other) const {
  return engine_->conj(*this, engine_->neg(other));
}
bool Formula::entails(const Formula& other) const { return engine_->entails(*this, other); }

std::size_t FormulaEngine::NodeKeyHash::operator()(const Node& n) const noexcept {
  return mix((static_cast<std::uint64_t>(n.var) << 40) ^ (static_cast<std::uint64_t>(n.lo) << 20) ^
             n.hi ^ (static_cast<std::uint64_t>(n.hi) << 52));
}

FormulaEngine::FormulaEngine(std::size_t num_fluents)
    : num_vars_(num_fluents), cache_(kCacheSize) {
  auto terminal = static_cast<std::uint32_t>(num_fluents);
  nodes_.push_back(Node{terminal, kFalseId, kFalseId});
  nodes_.push_back(Node{terminal, kTrueId, kTrueId});
}

std::uint32_t FormulaEngine::make_node(std::uint32_t var, std::uint32_t lo, std::uint32_t hi) {
  if (lo == hi) return lo;
  Node key{var, lo, hi};
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  if (nodes_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("formula engine node table exhausted");
  }
  auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(key);
  unique_.emplace(key, id);
  return id;
}

FormulaEngine::CacheEntry& FormulaEngine::cache_slot(Op op, std::uint32_t a, std::uint32_t b) {
  std::uint64_t h = (static_cast<std::uint64_t>(a) << 32) ^ b ^ (static_cast<std::uint64_t>(op) << 62);
  return cache_[mix(h) & (kCacheSize - 1)];
}

std::uint32_t FormulaEngine::apply(Op op, std::uint32_t a, std::uint32_t b) {
  if (op == Op::kAnd) {
    if (a == kFalseId || b == kFalseId) return kFalseId;
    if (a == kTrueId) return b;
    if (b == kTrueId || a == b) return a;
  } else {
    if (a == kTrueId || b == kTrueId) return kTrueId;
    if (a == kFalseId) return b;
    if (b == kFalseId || a == b) return a;
  }
  if (a > b) std::swap(a, b);

  CacheEntry& slot = cache_slot(op, a, b);
  if (slot.a == a && slot.b == b && slot.op == static_cast<std::uint32_t>(op)) return slot.result;

  std::uint32_t va = var_of(a);
  std::uint32_t vb = var_of(b);
  std::uint32_t top = std::min(va, vb);
  std::uint32_t a_lo = va == top ? nodes_[a].lo : a;
  std::uint32_t a_hi = va == top ? nodes_[a].hi : a;
  std::uint32_t b_lo = vb == top ? nodes_[b].lo : b;
  std::uint32_t b_hi = vb == top ? nodes_[b].hi : b;

  std::uint32_t lo = apply(op, a_lo, b_lo);
  std::uint32_t hi = apply(op, a_hi, b_hi);
  std::uint32_t result = make_node(top, lo, hi);

  // the recursive calls may have evicted the slot; re-fetch
  CacheEntry& fresh = cache_slot(op, a, b);
  fresh = CacheEntry{a, b, static_cast<std::uint32_t>(op), result};
  return result;
}

std::uint32_t FormulaEngine::negate(std::uint32_t a) {
  if (a == kFalseId) return kTrueId;
  if (a == kTrueId) return kFalseId;
  CacheEntry& slot = cache_slot(Op::kNot, a, 0);
  if (slot.a == a && slot.op == static_cast<std::uint32_t>(Op::kNot)) return slot.result;
  Node n = nodes_[a];
  std::uint32_t lo = negate(n.lo);
  std::uint32_t hi = negate(n.hi);
  std::uint32_t result = make_node(n.var, lo, hi);
  cache_slot(Op::kNot, a, 0) = CacheEntry{a, 0, static_cast<std::uint32_t>(Op::kNot), result};
  return result;
}

Formula FormulaEngine::literal(Literal l) {
  assert(l.fluent < num_vars_);
  return l.positive ? Formula(this, make_node(l.fluent, kFalseId, kTrueId))
                    : Formula(this, make_node(l.fluent, kTrueId, kFalseId));
}

Formula FormulaEngine::cube(std::span<const Literal> literals) {
  Formula result = top();
  for (Literal l : literals) result = conj(result, literal(l));
  return result;
}

Formula FormulaEngine::from_state(const State& s) {
  // build bottom-up so each step is a single make_node
  std::uint32_t id = kTrueId;
  for (std::size_t v = num_vars_; v-- > 0;) {
    auto var = static_cast<std::uint32_t>(v);
    id = s.values[v] ? make_node(var, kFalseId, id) : make_node(var, id, kFalseId);
  }
  return Formula(this, id);
}

Formula FormulaEngine::from_models(std::span<const State> states) {
  Formula result = bottom();
  for (const State& s : states) result = disj(result, from_state(s));
  return result;
}

Formula FormulaEngine::conj(Formula a, Formula b) { return Formula(this, apply(Op::kAnd, a.id(), b.id())); }
Formula FormulaEngine::disj(Formula a, Formula b) { return Formula(this, apply(Op::kOr, a.id(), b.id())); }
Formula FormulaEngine::neg(Formula a) { return Formula(this, negate(a.id())); }

bool FormulaEngine::entails(Formula a, Formula b) {
  return apply(Op::kAnd, a.id(), negate(b.id())) == kFalseId;
}

bool FormulaEngine::evaluate(Formula f, const State& s) const {
  std::uint32_t id = f.id();
  while (id > kTrueId) {
    const Node& n = nodes_[id];
    id = s.values[n.var] ? n.hi : n.lo;
  }
  return id == kTrueId;
}

void FormulaEngine::collect_models(std::uint32_t id, std::uint32_t var, State& partial,
                                   std::vector<State>& out) const {
  if (id == kFalseId) return;
  if (var == num_vars_) {
    out.push_back(partial);
    return;
  }
  const Node& n = nodes_[id];
  bool branches = n.var == var;
  partial.values[var] = false;
  collect_models(branches ? n.lo : id, var + 1, partial, out);
  partial.values[var] = true;
  collect_models(branches ? n.hi : id, var + 1, partial, out);
}

std::vector<State> FormulaEngine::models(Formula f) const {
  std::vector<State> out;
  State partial{std::vector<bool>(num_vars_, false)};
  collect_models(f.id(), 0, partial, out);
  return out;
}

std::uint64_t FormulaEngine::model_count(Formula f) const {
  constexpr std::uint64_t kCap = std::uint64_t{1} << 63;
  auto scale = [&](std::uint64_t c, std::size_t gap) -> std::uint64_t {
    for (std::size_t i = 0; i < gap; ++i) {
      if (c >= kCap / 2) return kCap;
      c *= 2;
    }
    return c;
  };
  std::unordered_map<std::uint32_t, std::uint64_t> memo;
  std::function<std::uint64_t(std::uint32_t)> count = [&](std::uint32_t id) -> std::uint64_t {
    if (id == kFalseId) return 0;
    if (id == kTrueId) return 1;
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const Node& n = nodes_[id];
    std::uint64_t lo = scale(count(n.lo), var_of(n.lo) - n.var - 1);
    std::uint64_t hi = scale(count(n.hi), var_of(n.hi) - n.var - 1);
    std::uint64_t total = lo + hi >= kCap ? kCap : lo + hi;
    memo[id] = total;
    return total;
  };
  return scale(count(f.id()), var_of(f.id()));
}

FormulaTree FormulaTree::conjunction(std::span<const Literal> literals) {
  if (literals.empty()) return truth();
  if (literals.size() == 1) return lit(literals.front());
  std::vector<FormulaTree> children;
  for (Literal l : literals) children.push_back(lit(l));
  return all_of(std::move(children));
}

bool FormulaTree::is_nnf() const {
  if (kind == Kind::kNot) return false;
  return std::all_of(children.begin(), children.end(), [](const FormulaTree& c) { return c.is_nnf(); });
}

bool FormulaTree::is_literal_conjunction() const {
  switch (kind) {
    case Kind::kTrue:
    case Kind::kLiteral:
      return true;
    case Kind::kAnd:
      return std::all_of(children.begin(), children.end(), [](const FormulaTree& c) {
        return c.kind == Kind::kLiteral;
      });
    default:
      return false;
  }
}

namespace {

FormulaTree nnf(const FormulaTree& t, bool negate) {
  using K = FormulaTree::Kind;
  switch (t.kind) {
    case K::kTrue:
      return negate ? FormulaTree::falsity() : FormulaTree::truth();
    case K::kFalse:
      return negate ? FormulaTree::truth() : FormulaTree::falsity();
    case K::kLiteral:
      return FormulaTree::lit(negate ? t.literal.negated() : t.literal);
    case K::kNot:
      return nnf(t.children.front(), !negate);
    case K::kAnd:
    case K::kOr: {
      bool is_and = (t.kind == K::kAnd) != negate;
      K kind = is_and ? K::kAnd : K::kOr;
      std::vector<FormulaTree> children;
      for (const FormulaTree& c : t.children) {
        FormulaTree sub = nnf(c, negate);
        if (sub.kind == kind) {
          for (FormulaTree& g : sub.children) children.push_back(std::move(g));
        } else {
          children.push_back(std::move(sub));
        }
      }
      if (children.empty()) return is_and ? FormulaTree::truth() : FormulaTree::falsity();
      if (children.size() == 1) return std::move(children.front());
      return FormulaTree{kind, {}, std::move(children)};
    }
  }
  return FormulaTree::truth();
}

}  // namespace

FormulaTree to_nnf(const FormulaTree& tree) { return nnf(tree, false); }

Formula build(FormulaEngine& engine, const FormulaTree& tree) {
  using K = FormulaTree::Kind;
  switch (tree.kind) {
    case K::kTrue:
      return engine.top();
    case K::kFalse:
      return engine.bottom();
    case K::kLiteral:
      return engine.literal(tree.literal);
    case K::kNot:
      return engine.neg(build(engine, tree.children.front()));
    case K::kAnd: {
      Formula r = engine.top();
      for (const FormulaTree& c : tree.children) r = engine.conj(r, build(engine, c));
      return r;
    }
    case K::kOr: {
      Formula r = engine.bottom();
      for (const FormulaTree& c : tree.children) r = engine.disj(r, build(engine, c));
      return r;
    }
  }
  return engine.bottom();
}

Formula substitute_literals(FormulaEngine& engine, const FormulaTree& nnf_tree,
                            const std::function<Formula(Literal)>& binding, Formula source) {
  using K = FormulaTree::Kind;
  switch (nnf_tree.kind) {
    case K::kTrue:
      return source;
    case K::kFalse:
      return engine.bottom();
    case K::kLiteral:
      return binding(nnf_tree.literal);
    case K::kNot:
      throw std::invalid_argument("substitute_literals expects a tree in negation normal form");
    case K::kAnd: {
      // an empty conjunction is ⊤, which extends to the source belief
      if (nnf_tree.children.empty()) return source;
      Formula r = engine.top();
      for (const FormulaTree& c : nnf_tree.children) {
        r = engine.conj(r, substitute_literals(engine, c, binding, source));
        if (r.is_false()) break;
      }
      return r;
    }
    case K::kOr: {
      Formula r = engine.bottom();
      for (const FormulaTree& c : nnf_tree.children) {
        r = engine.disj(r, substitute_literals(engine, c, binding, source));
      }
      return r;
    }
  }
  return engine.bottom();
}

}  // namespace lugplan
