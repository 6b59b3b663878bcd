#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lugplan/bench.hpp"
#include "lugplan/generators.hpp"
#include "lugplan/relaxed_plan.hpp"
#include "lugplan/validator.hpp"

namespace py = pybind11;
using namespace lugplan;

namespace {

py::object fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(r.numerator(), r.denominator());
}

py::object estimate(const CostEstimate& e) {
  if (e.is_infinite()) return py::float_(std::numeric_limits<double>::infinity());
  return fraction(e.value());
}

py::object optional_fraction(const std::optional<Rational>& r) { return r ? fraction(*r) : py::none(); }

Task make_task(Problem p, std::size_t cost_model) {
  if (cost_model == 0 || cost_model > p.cost_model_count) {
    throw py::value_error("cost model " + std::to_string(cost_model) + " out of range 1.." +
                          std::to_string(p.cost_model_count));
  }
  p.cost_model = cost_model - 1;
  return Task(std::move(p));
}

HeuristicKind heuristic_kind(const std::string& name) {
  auto h = parse_heuristic(name);
  if (!h) throw py::value_error("unknown heuristic '" + name + "'");
  return *h;
}

GraphMode graph_mode(const std::string& name) {
  if (name == "lug") return GraphMode::kLug;
  if (name == "clug") return GraphMode::kClug;
  throw py::value_error("mode must be 'lug' or 'clug'");
}

py::dict stats_dict(const RunStats& s) {
  py::dict d;
  d["solved"] = s.solved;
  d["mean_path_cost"] = optional_fraction(s.mean_path_cost);
  d["plan_nodes"] = s.plan_nodes;
  d["nodes_expanded"] = s.nodes_expanded;
  d["heuristic_calls"] = s.heuristic_calls;
  d["time_ms"] = s.time_ms;
  d["failure"] = s.failure.empty() ? py::none() : py::cast(s.failure);
  return d;
}

}  // namespace

PYBIND11_MODULE(_lugplan, m) {
  m.doc() = "Contingent planning with labelled planning graph heuristics";

  py::register_exception<ProblemError>(m, "ProblemError", PyExc_ValueError);
  py::register_exception<PlanError>(m, "PlanError", PyExc_ValueError);

  py::class_<Problem>(m, "Problem")
      .def_static("from_json", [](const std::string& text) { return parse_problem(text); }, py::arg("text"))
      .def("to_json", &serialize_problem)
      .def_property_readonly("fluents",
                             [](const Problem& p) {
                               std::vector<std::string> names;
                               for (const Fluent& f : p.fluents) names.push_back(f.name);
                               return names;
                             })
      .def_property_readonly("actions",
                             [](const Problem& p) {
                               std::vector<std::string> names;
                               for (const Action& a : p.actions) names.push_back(a.name);
                               return names;
                             })
      .def_property_readonly("cost_model_count", [](const Problem& p) { return p.cost_model_count; })
      .def("__repr__", [](const Problem& p) {
        return "<Problem fluents=" + std::to_string(p.fluents.size()) + " actions=" + std::to_string(p.actions.size()) +
               ">";
      });

  m.def("gen_medical", [](int n, const std::string& x) { return gen_medical(n, parse_rational(x)); }, py::arg("n"),
        py::arg("sensor_cost") = "25");
  m.def("gen_rovers", &gen_rovers, py::arg("locations"), py::arg("data") = 1, py::arg("variant") = 1,
        py::arg("seed") = 0);

  m.def(
      "plan",
      [](const Problem& p, const std::string& heuristic, std::size_t cost_model, double timeout,
         std::size_t max_expansions) {
        Task task = make_task(p, cost_model);
        HeuristicKind kind = heuristic_kind(heuristic);
        RunOutcome run;
        {
          py::gil_scoped_release release;
          run = run_problem(task, kind, SearchLimits{timeout, max_expansions});
        }
        py::dict d = stats_dict(run.stats);
        d["root_f"] = estimate(run.root_f);
        d["plan"] = run.plan ? py::cast(plan_to_json(task, *run.plan)) : py::none();
        return d;
      },
      py::arg("problem"), py::arg("heuristic") = "clug-rp", py::arg("cost_model") = 1, py::arg("timeout") = 1200.0,
      py::arg("max_expansions") = 0, "Search for a strong plan; the plan is returned as JSON text.");

  m.def(
      "validate",
      [](const Problem& p, const std::string& plan_json) {
        Task probe(p);
        std::size_t model = plan_from_json(probe, plan_json).cost_model;
        Task task = make_task(p, model + 1);
        ValidationReport rep = validate_plan(task, plan_from_json(task, plan_json));
        py::dict d;
        d["strong"] = rep.strong;
        d["mean_path_cost"] = fraction(rep.mean_path_cost);
        d["path_average"] = fraction(rep.path_average);
        d["expected_cost_over_initial_states"] = fraction(rep.expected_cost_over_initial_states);
        py::list paths;
        for (const PathRecord& r : rep.per_path) paths.append(py::make_tuple(r.actions, fraction(r.cost)));
        d["per_path"] = paths;
        d["diagnostics"] = rep.diagnostics;
        d["report"] = report_to_json(task, rep);
        return d;
      },
      py::arg("problem"), py::arg("plan_json"));

  m.def(
      "heuristic_value",
      [](const Problem& p, const std::string& heuristic, std::size_t cost_model) {
        Task task = make_task(p, cost_model);
        Heuristic h(heuristic_kind(heuristic));
        return estimate(h(task, BeliefState(task.init())));
      },
      py::arg("problem"), py::arg("heuristic") = "clug-rp", py::arg("cost_model") = 1,
      "Heuristic value of the initial belief.");

  m.def(
      "graph",
      [](const Problem& p, const std::string& mode, std::size_t cost_model) {
        Task task = make_task(p, cost_model);
        PlanningGraph g = build_graph(task, BeliefState(task.init()), {graph_mode(mode), 0});
        py::dict d;
        d["levels"] = g.num_levels();
        d["level_off"] = level_off(g) ? py::cast(*level_off(g)) : py::none();
        d["dump"] = g.dump();
        if (g.mode() == GraphMode::kClug) {
          py::list costs;
          for (std::size_t k = 0; k < g.num_levels(); ++k) costs.append(optional_fraction(goal_cost(g, p.goal, k)));
          d["goal_costs"] = costs;
        }
        auto rp = extract(g, p.goal);
        if (rp) {
          d["b"] = rp->b;
          d["relaxed_plan"] = action_names(g, *rp);
          d["relaxed_plan_value"] = fraction(heuristic_value(g, *rp));
        } else {
          d["b"] = py::none();
        }
        return d;
      },
      py::arg("problem"), py::arg("mode") = "clug", py::arg("cost_model") = 1,
      "Planning graph from the initial belief: level-off, goal costs and the relaxed plan.");

  m.def(
      "bench",
      [](const std::string& family, const std::string& params, const std::vector<std::string>& heuristics,
         double timeout) {
        std::vector<HeuristicKind> kinds;
        for (const auto& h : heuristics) kinds.push_back(heuristic_kind(h));
        auto instances = bench_instances(family, params);
        std::vector<BenchRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_bench(instances, kinds, SearchLimits{timeout, 0});
        }
        py::list out;
        for (const BenchRow& row : rows) {
          py::dict d = stats_dict(row.stats);
          d["family"] = row.family;
          d["params"] = row.params;
          d["heuristic"] = row.heuristic;
          out.append(d);
        }
        return out;
      },
      py::arg("family"), py::arg("params") = "", py::arg("heuristics") = std::vector<std::string>{"clug-rp", "lug-rp"},
      py::arg("timeout") = 1200.0);
}
