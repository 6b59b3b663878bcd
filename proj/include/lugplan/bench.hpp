#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lugplan/aostar.hpp"
#include "lugplan/domain.hpp"
#include "lugplan/heuristic.hpp"

namespace lugplan {

struct RunStats {
  bool solved = false;
  std::optional<Rational> mean_path_cost;
  std::size_t plan_nodes = 0;
  std::size_t nodes_expanded = 0;
  std::size_t heuristic_calls = 0;
  /// Search only; parsing and validation are excluded.
  double time_ms = 0;
  std::string failure;
};

struct RunOutcome {
  RunStats stats;
  std::optional<PlanDag> plan;
  CostEstimate root_f;
};

/// Searches, then validates the plan; an unsound plan is reported as unsolved.
RunOutcome run_problem(const Task& task, HeuristicKind heuristic, const SearchLimits& limits);

struct BenchInstance {
  std::string family;
  /// e.g. "n=3 x=25"
  std::string params;
  Problem problem;
};

/// Parses "key=spec;key=spec", where spec is a value, "a..b" or "a,b,c".
std::map<std::string, std::vector<std::string>> parse_params(std::string_view text);

/// Instances of a family over the cartesian product of its parameters.
/// medical: n (default 1..4), x (default 25).
/// rovers: locations (default 4..5), data (default 1), variant (default 1,2), seed (default 0).
/// Throws std::invalid_argument on an unknown family or key.
std::vector<BenchInstance> bench_instances(std::string_view family, std::string_view params);

struct BenchRow {
  std::string family;
  std::string params;
  std::string heuristic;
  RunStats stats;
};

std::vector<BenchRow> run_bench(const std::vector<BenchInstance>& instances,
                                const std::vector<HeuristicKind>& heuristics, const SearchLimits& limits);

/// family,params,heuristic,solved,mean_path_cost,plan_nodes,nodes_expanded,heuristic_calls,time_ms
std::string csv_header();
std::string csv_row(const BenchRow& row);

}  // namespace lugplan
