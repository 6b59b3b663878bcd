#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "lugplan/relaxed_plan.hpp"
#include "support/oracles.hpp"

using namespace lugplan;

namespace {

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Task example_task(std::size_t cost_model = 0) {
  Problem p = parse_problem(read(LUGPLAN_TEST_DATA "/example1.json"));
  p.cost_model = cost_model;
  return Task(std::move(p));
}

PlanningGraph example_graph(const Task& task, GraphMode mode) {
  return build_graph(task, BeliefState(task.init()), {mode, 0});
}

using Names = std::set<std::string>;

}  // namespace

TEST_CASE("example goal costs per level") {
  Task m1 = example_task(0);
  PlanningGraph g1 = example_graph(m1, GraphMode::kClug);
  const auto& goal = m1.problem().goal;
  CHECK_FALSE(goal_cost(g1, goal, 0).has_value());
  CHECK(goal_cost(g1, goal, 1) == Rational(37));
  CHECK(goal_cost(g1, goal, 2) == Rational(27));
  CHECK(goal_cost(g1, goal, 3) == Rational(27));
  // earliest level of minimum cost
  CHECK(select_level_b(g1, goal) == 2u);

  Task m2 = example_task(1);
  PlanningGraph g2 = example_graph(m2, GraphMode::kClug);
  CHECK(goal_cost(g2, goal, 1) == Rational(27));
  CHECK(goal_cost(g2, goal, 2) == Rational(27));
  CHECK(select_level_b(g2, goal) == 1u);

  PlanningGraph lug = example_graph(m1, GraphMode::kLug);
  CHECK_THROWS_AS(goal_cost(lug, goal, 1), std::logic_error);
  CHECK(select_level_b(lug, goal) == 1u);
}

TEST_CASE("example CLUG relaxed plans") {
  Task m1 = example_task(0);
  PlanningGraph g1 = example_graph(m1, GraphMode::kClug);
  auto p1 = extract(g1, m1.problem().goal);
  REQUIRE(p1);
  CHECK(p1->b == 2);
  CHECK(action_names(g1, *p1) == Names{"B", "R"});
  CHECK(heuristic_value(g1, *p1) == Rational(17));
  CHECK(check_support(g1, *p1) == std::nullopt);
  CHECK(relaxed_plan_heuristic(g1, m1.problem().goal) == CostEstimate(Rational(17)));

  Task m2 = example_task(1);
  PlanningGraph g2 = example_graph(m2, GraphMode::kClug);
  auto p2 = extract(g2, m2.problem().goal);
  REQUIRE(p2);
  CHECK(p2->b == 1);
  CHECK(action_names(g2, *p2) == Names{"C", "R"});
  CHECK(heuristic_value(g2, *p2) == Rational(17));
  CHECK(check_support(g2, *p2) == std::nullopt);
}

TEST_CASE("example LUG relaxed plan") {
  // r in the world with s is only reachable through C at level 1
  for (std::size_t model : {0u, 1u}) {
    Task task = example_task(model);
    PlanningGraph g = example_graph(task, GraphMode::kLug);
    auto p = extract(g, task.problem().goal);
    REQUIRE(p);
    CHECK(p->b == 1);
    CHECK(action_names(g, *p) == Names{"B", "C", "R"});
    CHECK(check_support(g, *p) == std::nullopt);
    CHECK(heuristic_value(g, *p) == Rational(model == 0 ? 37 : 32));
  }
}

TEST_CASE("heuristic value of a hand-built plan") {
  Task task = example_task(1);
  PlanningGraph g = example_graph(task, GraphMode::kClug);
  FormulaEngine& e = task.engine();
  RelaxedPlan plan;
  plan.b = 2;
  plan.levels.resize(3);
  plan.levels[0].actions.emplace(*g.find_action("B"), task.init());
  plan.levels[1].actions.emplace(*g.find_action("R"), task.init());
  // persistences cost nothing
  plan.levels[1].actions.emplace(task.num_actions() + Literal{1, false}.index(), e.top());
  CHECK(heuristic_value(g, plan) == Rational(22));
}

TEST_CASE("goal already true gives an empty plan") {
  Problem p = parse_problem(read(LUGPLAN_TEST_DATA "/example1.json"));
  p.init = FormulaTree::all_of({FormulaTree::lit(Literal{0, false}), FormulaTree::lit(Literal{1, true})});
  Task task(std::move(p));
  for (GraphMode mode : {GraphMode::kLug, GraphMode::kClug}) {
    PlanningGraph g = example_graph(task, mode);
    auto plan = extract(g, task.problem().goal);
    REQUIRE(plan);
    CHECK(plan->b == 0);
    CHECK(action_names(g, *plan).empty());
    CHECK(relaxed_plan_heuristic(g, task.problem().goal) == CostEstimate(Rational(0)));
  }
}

TEST_CASE("unreachable goal gives infinity") {
  Problem p = parse_problem(read(LUGPLAN_TEST_DATA "/example1.json"));
  p.actions.erase(p.actions.begin() + 1, p.actions.begin() + 3);  // drop C and R
  Task task(std::move(p));
  for (GraphMode mode : {GraphMode::kLug, GraphMode::kClug}) {
    PlanningGraph g = example_graph(task, mode);
    CHECK_FALSE(select_level_b(g, task.problem().goal).has_value());
    CHECK(relaxed_plan_heuristic(g, task.problem().goal).is_infinite());
  }
}

TEST_CASE("extraction supports every literal on random domains") {
  std::mt19937 rng(404);
  int extracted = 0;
  for (int round = 0; round < 80; ++round) {
    Problem p = oracle::random_problem(rng, {6, 8, 3, false, 0});
    Task task(p);
    for (GraphMode mode : {GraphMode::kLug, GraphMode::kClug}) {
      PlanningGraph g = build_graph(task, BeliefState(task.init()), {mode, 0});
      auto plan = extract(g, p.goal);
      INFO(serialize_problem(p));
      if (!plan) continue;
      ++extracted;
      CHECK(check_support(g, *plan) == std::nullopt);
      // goal literals are labelled with the whole source belief at b
      for (Literal l : p.goal) {
        auto it = plan->levels[plan->b].literals.find(l.index());
        REQUIRE(it != plan->levels[plan->b].literals.end());
        CHECK(it->second == task.init());
      }
      // same input, same plan
      CHECK(dump(g, *plan) == dump(g, *extract(g, p.goal)));
    }
  }
  CHECK(extracted > 20);
}

TEST_CASE("LUG level b matches the classical graph for a single world") {
  std::mt19937 rng(505);
  for (int round = 0; round < 60; ++round) {
    Problem p = oracle::random_problem(rng, {6, 8, 3, false, 1});
    Task task(p);
    PlanningGraph g = build_graph(task, BeliefState(task.init()), {GraphMode::kLug, 0});
    State s = oracle::init_states(p).front();
    auto cg = oracle::classical_graph(p, s, g.num_levels());
    std::optional<std::size_t> expected;
    for (std::size_t k = 0; k < cg.literals.size() && k < g.num_levels(); ++k) {
      bool all = true;
      for (Literal l : p.goal) all = all && cg.literals[k].count(l.index());
      if (all) {
        expected = k;
        break;
      }
    }
    INFO(serialize_problem(p));
    CHECK(select_level_b(g, p.goal) == expected);
  }
}
