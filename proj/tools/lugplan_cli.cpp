#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lugplan/bench.hpp"
#include "lugplan/generators.hpp"
#include "lugplan/relaxed_plan.hpp"
#include "lugplan/validator.hpp"

using namespace lugplan;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text << '\n';
}

Problem load_problem(const std::string& path, std::size_t cost_model) {
  Problem p = parse_problem(read_file(path));
  if (cost_model == 0 || cost_model > p.cost_model_count) {
    throw std::runtime_error("cost model " + std::to_string(cost_model) + " out of range 1.." +
                             std::to_string(p.cost_model_count));
  }
  p.cost_model = cost_model - 1;
  return p;
}

HeuristicKind heuristic_arg(const std::string& name) {
  auto h = parse_heuristic(name);
  if (!h) throw std::runtime_error("unknown heuristic '" + name + "' (clug-rp, lug-rp, cardinality, zero)");
  return *h;
}

std::string stats_json(const RunOutcome& run, HeuristicKind h) {
  const RunStats& s = run.stats;
  nlohmann::json doc{{"heuristic", to_string(h)},
                     {"solved", s.solved},
                     {"mean_path_cost", s.mean_path_cost ? nlohmann::json(to_string(*s.mean_path_cost)) : nlohmann::json()},
                     {"root_f", run.root_f.str()},
                     {"plan_nodes", s.plan_nodes},
                     {"nodes_expanded", s.nodes_expanded},
                     {"heuristic_calls", s.heuristic_calls},
                     {"time_ms", s.time_ms}};
  if (!s.solved) doc["failure"] = s.failure;
  return doc.dump(2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contingent planner with cost-sensitive planning graph heuristics"};
  app.require_subcommand(1);

  std::string problem_path, out_path, plan_path, heuristic = "clug-rp";
  std::size_t cost_model = 1;
  double timeout = 1200;
  std::size_t max_expansions = 0;

  auto* plan = app.add_subcommand("plan", "Search for a strong plan");
  plan->add_option("--problem", problem_path, "Problem JSON")->required();
  plan->add_option("--heuristic", heuristic, "clug-rp, lug-rp, cardinality or zero");
  plan->add_option("--cost-model", cost_model, "1-based cost model");
  plan->add_option("--timeout", timeout, "Seconds");
  plan->add_option("--max-expansions", max_expansions, "0 means no limit");
  plan->add_option("--out", out_path, "Plan JSON output (stdout if omitted)");

  std::string report_path;
  auto* validate = app.add_subcommand("validate", "Check that a plan is strong and report its cost");
  validate->add_option("--plan", plan_path, "Plan JSON")->required();
  validate->add_option("--problem", problem_path, "Problem JSON")->required();
  validate->add_option("--report", report_path, "Report JSON output (stdout if omitted)");

  std::string family, params, heuristics = "clug-rp,lug-rp", csv_path;
  auto* bench = app.add_subcommand("bench", "Sweep generated instances and write a CSV");
  bench->add_option("--family", family, "medical or rovers")->required();
  bench->add_option("--params", params,
                    "medical: n, x; rovers: locations, data, variant, seed. e.g. \"n=1..4;x=25\"");
  bench->add_option("--heuristics", heuristics, "Comma-separated heuristic list");
  bench->add_option("--csv", csv_path, "CSV output (stdout if omitted)");
  bench->add_option("--timeout", timeout, "Seconds per run");
  bench->add_option("--max-expansions", max_expansions, "0 means no limit");

  auto* generate = app.add_subcommand(
      "generate",
      "Write one generated problem. medical: exactly one of n diseases; inspect_stain separates odd from "
      "even diseases and analyze_white_cell_count separates consecutive pairs. rovers: each requested data "
      "type sits at one of up to four seeded candidate locations.");
  generate->add_option("--family", family, "medical or rovers")->required();
  generate->add_option("--params", params, "Single values, e.g. \"n=3;x=15\"");
  generate->add_option("--out", out_path, "Problem JSON output (stdout if omitted)");

  std::string mode = "clug";
  bool relaxed = false;
  auto* dump = app.add_subcommand("dump", "Print the planning graph built from the initial belief");
  dump->add_option("--problem", problem_path, "Problem JSON")->required();
  dump->add_option("--mode", mode, "lug or clug");
  dump->add_option("--cost-model", cost_model, "1-based cost model");
  dump->add_flag("--relaxed-plan", relaxed, "Print the extracted relaxed plan instead");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plan) {
      HeuristicKind h = heuristic_arg(heuristic);
      Task task(load_problem(problem_path, cost_model));
      RunOutcome run = run_problem(task, h, SearchLimits{timeout, max_expansions});
      if (run.plan) write_output(out_path, plan_to_json(task, *run.plan));
      std::cerr << stats_json(run, h) << '\n';
      return run.stats.solved ? 0 : 2;
    }
    if (*validate) {
      Problem p = parse_problem(read_file(problem_path));
      std::string text = read_file(plan_path);
      p.cost_model = nlohmann::json::parse(text).value("cost_model", std::size_t{1}) - 1;
      Task task(std::move(p));
      ValidationReport report = validate_plan(task, plan_from_json(task, text));
      write_output(report_path, report_to_json(task, report));
      return report.strong ? 0 : 1;
    }
    if (*bench) {
      std::vector<HeuristicKind> kinds;
      std::stringstream ss(heuristics);
      for (std::string item; std::getline(ss, item, ',');) kinds.push_back(heuristic_arg(item));
      auto rows = run_bench(bench_instances(family, params), kinds, SearchLimits{timeout, max_expansions});
      std::string csv = csv_header();
      for (const BenchRow& row : rows) csv += "\n" + csv_row(row);
      write_output(csv_path, csv);
      return 0;
    }
    if (*generate) {
      auto instances = bench_instances(family, params);
      if (instances.size() != 1) throw std::runtime_error("generate needs single parameter values");
      write_output(out_path, serialize_problem(instances.front().problem));
      return 0;
    }
    if (*dump) {
      if (mode != "lug" && mode != "clug") throw std::runtime_error("mode must be lug or clug");
      Task task(load_problem(problem_path, cost_model));
      PlanningGraph graph = build_graph(task, BeliefState(task.init()),
                                        GraphOptions{mode == "lug" ? GraphMode::kLug : GraphMode::kClug, 0});
      if (!relaxed) {
        std::cout << graph.dump();
        return 0;
      }
      auto rp = extract(graph, task.problem().goal);
      if (!rp) {
        std::cout << "unreachable\n";
        return 2;
      }
      std::cout << "b=" << rp->b << " value=" << to_string(heuristic_value(graph, *rp)) << '\n' << lugplan::dump(graph, *rp);
      return 0;
    }
  } catch (const ProblemError& e) {
    std::cerr << "problem error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
