#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lugplan/domain.hpp"
#include "lugplan/plan.hpp"

namespace lugplan {

struct InitialStateRun {
  State initial;
  std::vector<std::string> actions;
  State terminal;
  Rational cost{0};
  bool reached_goal = false;
};

struct PathRecord {
  std::vector<std::string> actions;
  Rational cost{0};
};

struct ValidationReport {
  bool strong = false;
  std::vector<InitialStateRun> per_initial_state;
  std::vector<PathRecord> per_path;
  /// c(a) + mean over the children, applied recursively from the root; leaves are 0.
  Rational mean_path_cost{0};
  /// Plain average of root-to-leaf path costs, each distinct path weighted equally.
  Rational path_average{0};
  Rational expected_cost_over_initial_states{0};
  std::vector<std::string> diagnostics;
};

/// Simulates the plan from every model of the initial belief. Throws PlanError on a
/// malformed DAG.
ValidationReport validate_plan(const Task& task, const PlanDag& plan);

/// (mean_path_cost, expected_cost_over_initial_states). Throws std::logic_error unless strong.
std::pair<Rational, Rational> metrics(const ValidationReport& report);

std::string report_to_json(const Task& task, const ValidationReport& report);

}  // namespace lugplan
