#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "capcover/assignment.hpp"
#include "capcover/instance.hpp"
#include "capcover/lp.hpp"
#include "capcover/oracle.hpp"
#include "capcover/rounding.hpp"
#include "capcover/solution.hpp"
#include "capcover/verify.hpp"

namespace py = pybind11;
using namespace capcover;

namespace {

Instance inst_from_text(const std::string& text) { return parse_instance(text); }

std::string py_generate(int points, int balls, const std::string& variant,
                        std::uint64_t seed) {
  auto v = variant_from_name(variant);
  if (!v) throw py::value_error("variant must be 'uniform' or 'monotonic'");
  return write_instance(generate_random(points, balls, *v, seed));
}

std::string py_from_set_cover(const std::vector<std::vector<int>>& sets,
                              std::int64_t capacity) {
  return write_instance(from_set_cover(sets, capacity));
}

py::dict py_lp_solve(const std::string& instance_text) {
  Instance inst = inst_from_text(instance_text);
  LPModel model = build_mmcc_lp(inst);
  SimplexResult res = solve_lp(model);
  py::dict out;
  out["feasible"] = res.status == SimplexResult::Status::Optimal;
  if (res.status == SimplexResult::Status::Optimal) {
    out["cost"] = format_rational(res.objective);
    py::dict y;
    FractionalSolution sol = res.to_solution(model);
    for (const auto& [tag, v] : sol.y)
      if (v != 0) y[py::int_(tag.ball)] = format_rational(v);
    out["y"] = y;
  }
  return out;
}

py::dict py_solve(const std::string& instance_text, const std::string& alpha) {
  Instance inst = inst_from_text(instance_text);
  auto a = parse_rational_strict(alpha);
  if (!a) throw py::value_error("alpha must be a canonical rational string");
  LPModel model = build_mmcc_lp(inst);
  SimplexResult lp = solve_lp(model);
  py::dict out;
  out["feasible"] = lp.status == SimplexResult::Status::Optimal;
  if (lp.status != SimplexResult::Status::Optimal) return out;

  FractionalSolution sigma = lp.to_solution(model);
  PipelineResult pr = run_pipeline(inst, sigma, PipelineConfig::with_alpha(*a));
  pr.trace.lp_basis = lp.basis;
  FlowResult flow = integralize(inst, pr.rounded.solution);
  Solution integral;
  integral.open = pr.rounded.solution.open;
  for (const auto& [point, ball] : flow.assignment) integral.x[{ball, point}] = 1;

  Quad5 limit = expansion_limit(inst.variant);
  VerificationReport rep = check_solution(inst, integral, limit, true);
  VerificationReport trep = check_trace(pr.trace, sigma.cost());

  out["lp_cost"] = format_rational(sigma.cost());
  out["opened"] = py::int_(integral.open.size());
  py::dict open;
  for (const auto& [ball, f] : integral.open)
    open[py::int_(ball)] = format_expansion(f);
  out["open"] = open;
  py::dict assign;
  for (const auto& [point, ball] : flow.assignment)
    assign[py::int_(point)] = py::int_(ball);
  out["assignment"] = assign;
  out["max_expansion"] = rep.max_expansion.approx();
  out["verified"] = flow.complete && rep.ok() && trep.ok();
  out["solution"] = write_solution(integral);
  out["trace"] = pr.trace.render();
  out["report"] = rep.render();
  return out;
}

py::object py_optimal_size(const std::string& instance_text, int max_balls) {
  Instance inst = inst_from_text(instance_text);
  auto r = optimal_cover(inst, Rational(1), max_balls);
  if (!r) return py::none();
  return py::int_(r->size);
}

py::object py_greedy_size(const std::string& instance_text) {
  Instance inst = inst_from_text(instance_text);
  auto r = greedy_cover(inst, Rational(1));
  if (!r) return py::none();
  return py::int_(r->size);
}

py::dict py_verify(const std::string& instance_text, const std::string& solution_text,
                   bool require_integral) {
  Instance inst = inst_from_text(instance_text);
  Solution sol = parse_solution(solution_text);
  VerificationReport rep =
      check_solution(inst, sol, expansion_limit(inst.variant), require_integral);
  py::dict out;
  out["ok"] = rep.ok();
  out["report"] = rep.render();
  out["cost"] = format_rational(rep.cost);
  out["max_expansion"] = rep.max_expansion.approx();
  return out;
}

void py_validate(const std::string& instance_text) {
  validate_instance(inst_from_text(instance_text));
}

}  // namespace

PYBIND11_MODULE(_capcover, m) {
  m.doc() = "exact LP rounding for metric capacitated covering";

  m.def("generate", &py_generate, py::arg("points"), py::arg("balls"),
        py::arg("variant") = "uniform", py::arg("seed") = 1,
        "random instance as text");
  m.def("from_set_cover", &py_from_set_cover, py::arg("sets"),
        py::arg("capacity") = 0, "covering instance of a set system");
  m.def("validate", &py_validate, py::arg("instance"),
        "raise if the instance text is malformed");
  m.def("lp_solve", &py_lp_solve, py::arg("instance"),
        "exact optimum of the covering relaxation");
  m.def("solve", &py_solve, py::arg("instance"), py::arg("alpha") = "1/60",
        "round the relaxation to an integral cover");
  m.def("optimal_size", &py_optimal_size, py::arg("instance"),
        py::arg("max_balls") = 18, "exhaustive best cover size, None if impossible");
  m.def("greedy_size", &py_greedy_size, py::arg("instance"),
        "greedy cover size, None when greedy stalls");
  m.def("verify", &py_verify, py::arg("instance"), py::arg("solution"),
        py::arg("require_integral") = true, "check a solution file");

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<ValidationError>(m, "InstanceValidationError");
  py::register_exception<InvariantError>(m, "InvariantError");
}
