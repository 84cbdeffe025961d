#include "capcover/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace capcover {

Solution OracleResult::to_solution(const Rational& beta) const {
  Solution s;
  for (int b : open) s.open[b] = Quad5(beta);
  for (auto& [p, b] : assignment) s.x[{b, p}] = 1;
  return s;
}

std::optional<OracleResult> optimal_cover(const Instance& inst,
                                          const Rational& beta,
                                          int max_balls) {
  int m = inst.n_balls();
  if (m > max_balls)
    throw OracleBudgetError("instance has " + std::to_string(m) +
                            " balls, enumeration budget is " +
                            std::to_string(max_balls));
  std::int64_t max_cap = 0;
  for (const Ball& b : inst.balls) max_cap = std::max(max_cap, b.capacity);

  std::vector<int> subset;
  for (int k = 1; k <= m; k++) {
    if (max_cap * k < inst.n_cover) continue;  // cannot host the demand
    subset.assign(k, 0);
    std::iota(subset.begin(), subset.end(), 0);
    for (;;) {
      auto flow = assign_with_open_balls(inst, subset, beta);
      if (flow.complete) {
        OracleResult res;
        res.size = k;
        res.open = subset;
        res.assignment = std::move(flow.assignment);
        return res;
      }
      // next k-combination in lexicographic order
      int i = k - 1;
      while (i >= 0 && subset[i] == m - k + i) i--;
      if (i < 0) break;
      subset[i]++;
      for (int j = i + 1; j < k; j++) subset[j] = subset[j - 1] + 1;
    }
  }
  return std::nullopt;
}

std::optional<OracleResult> greedy_cover(const Instance& inst,
                                         const Rational& beta) {
  std::vector<bool> open(inst.n_balls(), false), assigned(inst.n_cover, false);
  OracleResult res;
  int remaining = inst.n_cover;
  while (remaining > 0) {
    int best = -1;
    std::int64_t best_gain = 0;
    for (int b = 0; b < inst.n_balls(); b++) {
      if (open[b]) continue;
      std::int64_t inside = 0;
      for (int p = 0; p < inst.n_cover; p++)
        if (!assigned[p] && contains(inst, b, p, beta)) inside++;
      std::int64_t gain = std::min(inside, inst.balls[b].capacity);
      if (gain > best_gain) {
        best_gain = gain;
        best = b;
      }
    }
    if (best < 0) return std::nullopt;  // stalled
    open[best] = true;
    res.open.push_back(best);
    std::int64_t take = best_gain;
    for (int p = 0; p < inst.n_cover && take > 0; p++)
      if (!assigned[p] && contains(inst, best, p, beta)) {
        assigned[p] = true;
        res.assignment[p] = best;
        take--;
        remaining--;
      }
  }
  res.size = static_cast<int>(res.open.size());
  std::sort(res.open.begin(), res.open.end());
  return res;
}

}  // namespace capcover
