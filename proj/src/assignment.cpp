#include "capcover/assignment.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace capcover {

namespace {

// Adjacency-matrix Edmonds-Karp; node ids: 0 = source, 1..P = points,
// P+1..P+B = balls, P+B+1 = sink. Sizes stay tiny.
struct Net {
  int n;
  std::vector<std::vector<std::int64_t>> cap;
  explicit Net(int n_) : n(n_), cap(n_, std::vector<std::int64_t>(n_, 0)) {}

  std::int64_t run(int s, int t) {
    std::int64_t total = 0;
    for (;;) {
      std::vector<int> prev(n, -1);
      prev[s] = s;
      std::deque<int> q{s};
      while (!q.empty() && prev[t] < 0) {
        int u = q.front();
        q.pop_front();
        for (int v = 0; v < n; v++)
          if (prev[v] < 0 && cap[u][v] > 0) {
            prev[v] = u;
            q.push_back(v);
          }
      }
      if (prev[t] < 0) return total;
      std::int64_t aug = std::numeric_limits<std::int64_t>::max();
      for (int v = t; v != s; v = prev[v]) aug = std::min(aug, cap[prev[v]][v]);
      for (int v = t; v != s; v = prev[v]) {
        cap[prev[v]][v] -= aug;
        cap[v][prev[v]] += aug;
      }
      total += aug;
    }
  }

  std::vector<bool> source_side(int s) {
    std::vector<bool> seen(n, false);
    seen[s] = true;
    std::deque<int> q{s};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v = 0; v < n; v++)
        if (!seen[v] && cap[u][v] > 0) {
          seen[v] = true;
          q.push_back(v);
        }
    }
    return seen;
  }
};

}  // namespace

FlowResult max_assignment_flow(const std::vector<std::vector<int>>& arcs,
                               const std::vector<std::int64_t>& ball_caps,
                               int n_points) {
  int n_balls = static_cast<int>(ball_caps.size());
  int s = 0, t = n_points + n_balls + 1;
  Net net(t + 1);
  for (int p = 0; p < n_points; p++) {
    net.cap[s][1 + p] = 1;
    for (int b : arcs[p]) net.cap[1 + p][1 + n_points + b] = 1;
  }
  for (int b = 0; b < n_balls; b++)
    net.cap[1 + n_points + b][t] = ball_caps[b];

  FlowResult res;
  res.flow_value = net.run(s, t);
  res.complete = (res.flow_value == n_points);
  if (res.complete) {
    for (int p = 0; p < n_points; p++)
      for (int b : arcs[p])
        if (net.cap[1 + n_points + b][1 + p] > 0) {  // residual = used
          res.assignment[p] = b;
          break;
        }
  } else {
    auto side = net.source_side(s);
    for (int p = 0; p < n_points; p++)
      if (side[1 + p]) res.cut_points.push_back(p);
    for (int b = 0; b < n_balls; b++)
      if (side[1 + n_points + b]) res.cut_balls.push_back(b);
  }
  return res;
}

FlowResult integralize(const Instance& inst, const Solution& sol) {
  std::vector<std::vector<int>> arcs(inst.n_cover);
  std::vector<std::int64_t> caps(inst.n_balls(), 0);
  for (auto& [b, beta] : sol.open) caps[b] = inst.balls[b].capacity;
  for (int p = 0; p < inst.n_cover; p++)
    for (auto& [b, beta] : sol.open)
      if (contains(inst, b, p, beta)) arcs[p].push_back(b);
  return max_assignment_flow(arcs, caps, inst.n_cover);
}

FlowResult assign_with_open_balls(const Instance& inst,
                                  const std::vector<int>& open_balls,
                                  const Rational& beta) {
  std::vector<std::vector<int>> arcs(inst.n_cover);
  std::vector<std::int64_t> caps(inst.n_balls(), 0);
  for (int b : open_balls) caps[b] = inst.balls[b].capacity;
  for (int p = 0; p < inst.n_cover; p++)
    for (int b : open_balls)
      if (contains(inst, b, p, beta)) arcs[p].push_back(b);
  return max_assignment_flow(arcs, caps, inst.n_cover);
}

}  // namespace capcover
