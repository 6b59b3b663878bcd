#include <doctest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "lugplan/belief.hpp"
#include "support/oracles.hpp"

using namespace lugplan;

namespace {

Task example_task() {
  std::ifstream in(LUGPLAN_TEST_DATA "/example1.json");
  std::stringstream ss;
  ss << in.rdbuf();
  return Task(parse_problem(ss.str()));
}

constexpr std::size_t B = 0, C = 1, R = 2, S = 3;
const Literal s{0, true}, not_s{0, false}, r{1, true}, not_r{1, false};

}  // namespace

TEST_CASE("applicability") {
  Task task = example_task();
  FormulaEngine& e = task.engine();
  BeliefState init(task.init());
  CHECK(applicable(task, init, B));
  CHECK_FALSE(applicable(task, init, C));
  CHECK(applicable(task, BeliefState(e.cube(std::vector<Literal>{s, not_r})), C));
  CHECK(applicable(task, init, S));
}

TEST_CASE("progression") {
  Task task = example_task();
  FormulaEngine& e = task.engine();
  BeliefState init(task.init());
  Formula sn_rn = e.cube(std::vector<Literal>{not_s, not_r});
  CHECK(progress(task, init, B).formula() == sn_rn);
  CHECK(progress(task, BeliefState(sn_rn), R).formula() == e.cube(std::vector<Literal>{not_s, r}));
  CHECK_THROWS_AS(progress(task, init, C), BeliefError);
  CHECK_THROWS_AS(progress(task, init, S), BeliefError);
}

TEST_CASE("persistence is the identity on beliefs that entail its literal") {
  Task task = example_task();
  BeliefState init(task.init());
  Action noop = persistence(task.problem(), not_r);
  for (const State& st : task.engine().models(init.formula())) CHECK(successor(st, noop) == st);
}

TEST_CASE("observation") {
  Task task = example_task();
  FormulaEngine& e = task.engine();
  BeliefState init(task.init());
  auto children = observe(task, init, S);
  REQUIRE(children.size() == 2);
  CHECK(children[0].first == 0);
  CHECK(children[0].second.formula() == e.cube(std::vector<Literal>{s, not_r}));
  CHECK(children[1].first == 1);
  CHECK(children[1].second.formula() == e.cube(std::vector<Literal>{not_s, not_r}));
  auto one = observe(task, BeliefState(e.cube(std::vector<Literal>{s, not_r})), S);
  REQUIRE(one.size() == 1);
  CHECK(one[0].first == 0);
}

TEST_CASE("observation with no consistent outcome fails") {
  Problem p;
  p.fluents = {{0, "a"}, {1, "b"}};
  Action sense;
  sense.name = "sense";
  sense.kind = ActionKind::kSensory;
  sense.outcomes = {FormulaTree::lit({1, true}), FormulaTree::lit({0, true})};
  sense.costs = {1};
  p.actions = {sense};
  p.init = FormulaTree::all_of({FormulaTree::lit({0, false}), FormulaTree::lit({1, false})});
  p.goal = {{0, true}};
  Task task(p);
  CHECK_THROWS_AS(observe(task, BeliefState(task.init()), 0), BeliefError);
}

TEST_CASE("goal satisfaction") {
  Task task = example_task();
  FormulaEngine& e = task.engine();
  CHECK(satisfies_goal(task, BeliefState(e.cube(std::vector<Literal>{not_s, r}))));
  CHECK_FALSE(satisfies_goal(task, BeliefState(task.init())));
  CHECK(satisfies_goal(task, BeliefState(task.init()), std::vector<Literal>{}));
}

TEST_CASE("bottom is not a belief") { CHECK_THROWS_AS(BeliefState{Formula()}, std::invalid_argument); }

TEST_CASE("progression and observation agree with state enumeration") {
  std::mt19937 rng(17);
  for (int round = 0; round < 150; ++round) {
    Problem p = oracle::random_problem(rng, {6, 8, 3, true, 0});
    Task task(p);
    FormulaEngine& e = task.engine();
    BeliefState bs(task.init());
    std::vector<State> init = oracle::init_states(p);
    for (std::size_t a = 0; a < p.actions.size(); ++a) {
      const Action& act = p.actions[a];
      bool expect_applicable = std::all_of(init.begin(), init.end(), [&](const State& st) {
        return std::all_of(act.precondition.begin(), act.precondition.end(),
                           [&](Literal l) { return oracle::holds(st, l); });
      });
      REQUIRE(applicable(task, bs, a) == expect_applicable);
      if (!expect_applicable) continue;
      if (act.is_causative()) {
        std::set<State> image;
        for (const State& st : init) image.insert(oracle::apply(st, act));
        auto got = e.models(progress(task, bs, a).formula());
        CHECK(got == std::vector<State>(image.begin(), image.end()));
        CHECK(got.size() <= init.size());
      } else {
        auto children = observe(task, bs, a);
        Formula all = e.bottom();
        Formula satisfiable_outcomes = e.bottom();
        for (const auto& [o, child] : children) {
          CHECK(child.formula().entails(bs.formula()));
          CHECK(child.formula().entails(task.outcomes(a)[o]));
          all = all | child.formula();
          satisfiable_outcomes = satisfiable_outcomes | task.outcomes(a)[o];
        }
        CHECK(all == (bs.formula() & satisfiable_outcomes));
      }
    }
  }
}
