#include "lugplan/bench.hpp"

#include <charconv>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "lugplan/generators.hpp"
#include "lugplan/validator.hpp"

namespace lugplan {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

long parse_int(std::string_view s) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> expand_spec(std::string_view spec) {
  std::vector<std::string> values;
  auto dots = spec.find("..");
  if (dots != std::string_view::npos) {
    long lo = parse_int(trim(spec.substr(0, dots)));
    long hi = parse_int(trim(spec.substr(dots + 2)));
    if (hi < lo) throw std::invalid_argument("empty range '" + std::string(spec) + "'");
    for (long v = lo; v <= hi; ++v) values.push_back(std::to_string(v));
    return values;
  }
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto comma = spec.find(',', start);
    std::string_view item = trim(spec.substr(start, comma == std::string_view::npos ? spec.npos : comma - start));
    if (item.empty()) throw std::invalid_argument("empty value in '" + std::string(spec) + "'");
    values.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

}  // namespace

RunOutcome run_problem(const Task& task, HeuristicKind kind, const SearchLimits& limits) {
  Heuristic heuristic(kind);
  SearchResult result = search(task, heuristic, limits);
  RunOutcome out;
  out.root_f = result.root_f;
  out.stats.nodes_expanded = result.stats.nodes_expanded;
  out.stats.heuristic_calls = result.stats.heuristic_calls;
  out.stats.time_ms = result.stats.time_ms;
  if (!result.plan) {
    out.stats.failure = std::string(to_string(*result.failure));
    return out;
  }
  ValidationReport report = validate_plan(task, *result.plan);
  if (!report.strong) {
    out.stats.failure = "plan is not strong";
    return out;
  }
  out.stats.solved = true;
  out.stats.mean_path_cost = report.mean_path_cost;
  out.stats.plan_nodes = result.plan->nodes.size();
  out.plan = std::move(result.plan);
  return out;
}

std::map<std::string, std::vector<std::string>> parse_params(std::string_view text) {
  std::map<std::string, std::vector<std::string>> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto semi = text.find(';', start);
    std::string_view item = trim(text.substr(start, semi == std::string_view::npos ? text.npos : semi - start));
    start = semi == std::string_view::npos ? text.size() : semi + 1;
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("expected key=value in '" + std::string(item) + "'");
    out[std::string(trim(item.substr(0, eq)))] = expand_spec(trim(item.substr(eq + 1)));
  }
  return out;
}

std::vector<BenchInstance> bench_instances(std::string_view family, std::string_view params) {
  auto given = parse_params(params);
  std::vector<std::pair<std::string, std::string>> keys;
  if (family == "medical") {
    keys = {{"n", "1..4"}, {"x", "25"}};
  } else if (family == "rovers") {
    keys = {{"locations", "4..5"}, {"data", "1"}, {"variant", "1,2"}, {"seed", "0"}};
  } else {
    throw std::invalid_argument("unknown family '" + std::string(family) + "'");
  }
  std::vector<std::vector<std::string>> axes;
  for (const auto& [key, fallback] : keys) {
    auto it = given.find(key);
    axes.push_back(it != given.end() ? it->second : expand_spec(fallback));
    if (it != given.end()) given.erase(it);
  }
  if (!given.empty()) throw std::invalid_argument("unknown parameter '" + given.begin()->first + "' for " + std::string(family));

  std::vector<BenchInstance> instances;
  std::vector<std::string> pick(keys.size());
  std::function<void(std::size_t)> product = [&](std::size_t i) {
    if (i == keys.size()) {
      BenchInstance inst;
      inst.family = std::string(family);
      for (std::size_t k = 0; k < keys.size(); ++k) {
        if (k) inst.params += ' ';
        inst.params += keys[k].first + "=" + pick[k];
      }
      if (family == "medical") {
        inst.problem = gen_medical(static_cast<int>(parse_int(pick[0])), parse_rational(pick[1]));
      } else {
        inst.problem = gen_rovers(static_cast<int>(parse_int(pick[0])), static_cast<int>(parse_int(pick[1])),
                                  static_cast<int>(parse_int(pick[2])), static_cast<std::uint32_t>(parse_int(pick[3])));
      }
      instances.push_back(std::move(inst));
      return;
    }
    for (const std::string& v : axes[i]) {
      pick[i] = v;
      product(i + 1);
    }
  };
  product(0);
  return instances;
}

std::vector<BenchRow> run_bench(const std::vector<BenchInstance>& instances,
                                const std::vector<HeuristicKind>& heuristics, const SearchLimits& limits) {
  std::vector<BenchRow> rows;
  for (const BenchInstance& inst : instances) {
    for (HeuristicKind h : heuristics) {
      Task task(inst.problem);
      rows.push_back(BenchRow{inst.family, inst.params, std::string(to_string(h)), run_problem(task, h, limits).stats});
    }
  }
  return rows;
}

std::string csv_header() {
  return "family,params,heuristic,solved,mean_path_cost,plan_nodes,nodes_expanded,heuristic_calls,time_ms";
}

std::string csv_row(const BenchRow& row) {
  const RunStats& s = row.stats;
  char time[32];
  std::snprintf(time, sizeof time, "%.3f", s.time_ms);
  return row.family + "," + row.params + "," + row.heuristic + "," + (s.solved ? "true" : "false") + "," +
         (s.mean_path_cost ? to_string(*s.mean_path_cost) : "") + "," + std::to_string(s.plan_nodes) + "," +
         std::to_string(s.nodes_expanded) + "," + std::to_string(s.heuristic_calls) + "," + time;
}

}  // namespace lugplan
