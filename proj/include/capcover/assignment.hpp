#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "capcover/instance.hpp"
#include "capcover/solution.hpp"

namespace capcover {

// Unit-capacity-per-point bipartite flow: source -> point (1), point -> ball
// (1, only when the point lies within the ball's allowed expansion),
// ball -> sink (ball capacity). Edmonds-Karp with integer capacities.
struct FlowResult {
  bool complete = false;              // max flow == number of coverage points
  std::int64_t flow_value = 0;
  std::map<int, int> assignment;      // point -> ball, only when complete
  std::vector<int> cut_points;        // witness when incomplete: a min cut,
  std::vector<int> cut_balls;         // points/balls on the source side
};

// arcs[p] lists the balls that may serve coverage point p
FlowResult max_assignment_flow(const std::vector<std::vector<int>>& arcs,
                               const std::vector<std::int64_t>& ball_caps,
                               int n_points);

// Rounds a fractional solution to an integral assignment using the per-ball
// expansion factors recorded in sol.open. Succeeds whenever the fractional
// flows themselves are feasible.
FlowResult integralize(const Instance& inst, const Solution& sol);

// Feasibility of serving all coverage points with the given open balls at
// expansion beta.
FlowResult assign_with_open_balls(const Instance& inst,
                                  const std::vector<int>& open_balls,
                                  const Rational& beta);

}  // namespace capcover
