#pragma once

#include <string>
#include <vector>

#include "capcover/instance.hpp"
#include "capcover/rounding.hpp"
#include "capcover/solution.hpp"
#include "capcover/trace.hpp"

namespace capcover {

struct CheckItem {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckItem> checks;
  Quad5 max_expansion;  // largest d/r over positive flows
  Rational cost;

  bool ok() const;
  std::string render() const;
};

// Exact validation of a solution file against an instance: ids in range,
// every coverage point served exactly once, loads within capacity, every
// positive flow inside the recorded expansion of its ball, and the recorded
// expansions within beta_limit. With require_integral, flows must be 0/1.
VerificationReport check_solution(const Instance& inst, const Solution& sol,
                                  const Quad5& beta_limit, bool require_integral);

// Replays a trace and re-derives the accounting: pulled flow per opening,
// outstanding credit, capacity reserve, and the opening budgets relative to
// the cost of the fractional solution that was rounded.
VerificationReport check_trace(const Trace& trace, const Rational& fractional_cost);

}  // namespace capcover
