#pragma once

#include <optional>
#include <vector>

#include "capcover/assignment.hpp"
#include "capcover/instance.hpp"
#include "capcover/solution.hpp"

namespace capcover {

struct OracleBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  int size = 0;
  std::vector<int> open;          // lexicographically smallest witness
  std::map<int, int> assignment;  // point -> ball
  Solution to_solution(const Rational& beta) const;
};

// Minimum number of balls that can serve every coverage point at expansion
// beta, by subset enumeration in ascending size then lexicographic order.
// Sizes whose total capacity cannot reach the demand are skipped. Throws
// OracleBudgetError when the instance exceeds max_balls; returns nullopt when
// no subset works (capacity-infeasible instance).
std::optional<OracleResult> optimal_cover(const Instance& inst,
                                          const Rational& beta,
                                          int max_balls = 20);

// Capacity-aware greedy: repeatedly open the unopened ball that can absorb
// the most unassigned points (min of capacity and uncovered points inside,
// ties to the lower id), assigning the lowest point ids first.
// Returns nullopt when it stalls before covering everything.
std::optional<OracleResult> greedy_cover(const Instance& inst,
                                         const Rational& beta);

}  // namespace capcover
