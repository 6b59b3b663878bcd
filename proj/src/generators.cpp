#include "lugplan/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace lugplan {

namespace {

class Builder {
 public:
  Literal fluent(const std::string& name) {
    auto id = static_cast<FluentId>(p.fluents.size());
    p.fluents.push_back(Fluent{id, name});
    return Literal{id, true};
  }

  Action& causative(const std::string& name, Rational cost, std::vector<Literal> pre,
                    std::vector<ConditionalEffect> effects) {
    Action a;
    a.name = name;
    a.precondition = std::move(pre);
    a.effects = std::move(effects);
    a.costs = {cost};
    p.actions.push_back(std::move(a));
    return p.actions.back();
  }

  Action& sensory(const std::string& name, Rational cost, std::vector<Literal> pre,
                  std::vector<FormulaTree> outcomes) {
    Action a;
    a.name = name;
    a.kind = ActionKind::kSensory;
    a.precondition = std::move(pre);
    for (FormulaTree& o : outcomes) a.outcomes.push_back(to_nnf(o));
    a.costs = {cost};
    p.actions.push_back(std::move(a));
    return p.actions.back();
  }

  Problem p;
};

/// One of the literals holds and the others do not.
FormulaTree exactly_one(const std::vector<Literal>& ls) {
  std::vector<FormulaTree> cases;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    std::vector<FormulaTree> conj;
    for (std::size_t j = 0; j < ls.size(); ++j) conj.push_back(FormulaTree::lit(i == j ? ls[j] : ls[j].negated()));
    cases.push_back(FormulaTree::all_of(std::move(conj)));
  }
  return FormulaTree::any_of(std::move(cases));
}

FormulaTree any(const std::vector<Literal>& ls) {
  std::vector<FormulaTree> children;
  for (Literal l : ls) children.push_back(FormulaTree::lit(l));
  return FormulaTree::any_of(std::move(children));
}

}  // namespace

Problem gen_medical(int n, Rational x) {
  if (n < 1) throw std::invalid_argument("gen_medical: need at least one disease");
  Builder b;
  std::vector<Literal> d;
  for (int i = 1; i <= n; ++i) d.push_back(b.fluent("d" + std::to_string(i)));
  Literal stained = b.fluent("stained");
  Literal counted = b.fluent("counted");
  Literal cured = b.fluent("cured");

  b.causative("stain", 5, {}, {{{}, {stained}}});
  b.causative("count_white_cells", 10, {}, {{{}, {counted}}});

  std::vector<Literal> odd;
  for (int i = 0; i < n; i += 2) odd.push_back(d[i]);
  b.sensory("inspect_stain", x, {stained}, {any(odd), FormulaTree::negation(any(odd))});

  std::vector<FormulaTree> ranges;
  for (int i = 0; i < n; i += 2) {
    std::vector<Literal> pair{d[i]};
    if (i + 1 < n) pair.push_back(d[i + 1]);
    ranges.push_back(any(pair));
  }
  if (ranges.size() == 1) ranges.push_back(FormulaTree::negation(ranges.front()));
  b.sensory("analyze_white_cell_count", x, {counted}, std::move(ranges));

  for (int i = 0; i < n; ++i) b.causative("medicate_" + std::to_string(i + 1), 5, {d[i]}, {{{}, {cured}}});
  std::vector<ConditionalEffect> specialist;
  for (Literal di : d) specialist.push_back({{di}, {cured}});
  b.causative("specialist_medicate", 10, {}, std::move(specialist));

  b.p.init = to_nnf(FormulaTree::all_of({exactly_one(d), FormulaTree::lit(stained.negated()),
                                         FormulaTree::lit(counted.negated()), FormulaTree::lit(cured.negated())}));
  b.p.goal = {cured};
  return std::move(b.p);
}

Problem gen_rovers(int n_locations, int n_data, int cost_variant, std::uint32_t seed) {
  if (n_locations < 4 || n_locations > 8) throw std::invalid_argument("gen_rovers: 4..8 locations");
  if (n_data < 1 || n_data > 3) throw std::invalid_argument("gen_rovers: 1..3 data types");
  if (cost_variant != 1 && cost_variant != 2) throw std::invalid_argument("gen_rovers: cost variant 1 or 2");
  const Rational visibility = cost_variant == 1 ? 35 : 100;
  const Rational rock = cost_variant == 1 ? 55 : 120;
  const Rational soil = cost_variant == 1 ? 45 : 110;
  const char* kinds[] = {"soil", "rock", "image"};
  const Rational sense_cost[] = {soil, rock, visibility};
  const char* sense_name[] = {"sense_soil", "sense_rock", "sense_visibility"};

  Builder b;
  std::vector<Literal> at;
  for (int l = 1; l <= n_locations; ++l) at.push_back(b.fluent("at_l" + std::to_string(l)));

  std::mt19937 rng(seed);
  int n_candidates = std::min(4, n_locations - 2);
  std::vector<std::vector<int>> candidates(n_data);
  std::vector<std::vector<Literal>> avail(n_data);
  for (int t = 0; t < n_data; ++t) {
    std::vector<int> pool(n_locations - 1);
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(n_candidates);
    std::sort(pool.begin(), pool.end());
    candidates[t] = pool;
    for (int l : pool) avail[t].push_back(b.fluent(std::string(kinds[t]) + "_at_l" + std::to_string(l + 1)));
  }
  std::vector<Literal> have, communicated;
  for (int t = 0; t < n_data; ++t) {
    have.push_back(b.fluent("have_" + std::string(kinds[t])));
    communicated.push_back(b.fluent("communicated_" + std::string(kinds[t])));
  }
  Literal store_full = b.fluent("store_full");
  bool images = n_data >= 3;
  Literal calibrated{};
  if (images) calibrated = b.fluent("calibrated");

  for (int from = 0; from < n_locations; ++from) {
    for (int to = 0; to < n_locations; ++to) {
      if (from == to) continue;
      b.causative("navigate_l" + std::to_string(from + 1) + "_l" + std::to_string(to + 1), 50, {at[from]},
                  {{{}, {at[from].negated(), at[to]}}});
    }
  }
  if (images) b.causative("calibrate", 10, {}, {{{}, {calibrated}}});
  b.causative("drop", 5, {}, {{{}, {store_full.negated()}}});
  for (int t = 0; t < n_data; ++t) {
    for (std::size_t c = 0; c < candidates[t].size(); ++c) {
      int l = candidates[t][c];
      std::string where = "_l" + std::to_string(l + 1);
      if (t == 2) {
        b.causative("take_image" + where, 20, {at[l], calibrated}, {{{avail[t][c]}, {have[t]}}});
      } else {
        b.causative(std::string("sample_") + kinds[t] + where, t == 0 ? 30 : 60, {at[l], store_full.negated()},
                    {{{avail[t][c]}, {have[t], store_full}}});
      }
      b.sensory(sense_name[t] + where, sense_cost[t], {at[l]},
                {FormulaTree::lit(avail[t][c]), FormulaTree::lit(avail[t][c].negated())});
    }
    b.causative(std::string("communicate_") + kinds[t], 40, {have[t]}, {{{}, {communicated[t]}}});
  }

  std::vector<FormulaTree> init;
  for (int l = 0; l < n_locations; ++l) init.push_back(FormulaTree::lit(l == 0 ? at[l] : at[l].negated()));
  for (int t = 0; t < n_data; ++t) {
    init.push_back(exactly_one(avail[t]));
    init.push_back(FormulaTree::lit(have[t].negated()));
    init.push_back(FormulaTree::lit(communicated[t].negated()));
  }
  init.push_back(FormulaTree::lit(store_full.negated()));
  if (images) init.push_back(FormulaTree::lit(calibrated.negated()));
  b.p.init = to_nnf(FormulaTree::all_of(std::move(init)));
  b.p.goal = communicated;
  return std::move(b.p);
}

}  // namespace lugplan
