#include "capcover/rounding.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace capcover {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw InvariantError("invariant violated: " + what);
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(what);
}

BigInt floor_nonneg(const Rational& r) {
  return numerator(r) / denominator(r);
}

Rational light_cap(const Instance& inst, int ball, const PipelineConfig& cfg) {
  return Rational(inst.balls[ball].capacity) / cfg.light_capacity_divisor;
}

// Cluster ordering: radius first, then capacity, then the lower id.
struct BallLarger {
  const Instance& inst;
  bool operator()(int a, int b) const {
    const Ball& x = inst.balls[a];
    const Ball& y = inst.balls[b];
    if (x.radius != y.radius) return x.radius > y.radius;
    if (x.capacity != y.capacity) return x.capacity > y.capacity;
    return a < b;
  }
};

void check_coverage(const Instance& inst, int ball, int point, const Quad5& factor,
                    const std::string& where) {
  Quad5 lhs(inst.space.d(inst.balls[ball].center, point));
  Quad5 rhs = factor * Quad5(inst.balls[ball].radius);
  require(lhs <= rhs, where + ": point " + std::to_string(point) +
                          " outside ball " + std::to_string(ball));
}

}  // namespace

PipelineConfig PipelineConfig::with_alpha(const Rational& alpha) {
  PipelineConfig cfg;
  cfg.alpha = alpha;
  cfg.aux2_group_upper = alpha * (1 + 2 * cfg.light_capacity_divisor);
  cfg.aux2_scale = 1 / ((2 * cfg.partition_multiplier - 1) * alpha);
  return cfg;
}

void PipelineConfig::validate() const {
  if (alpha <= 0) throw ConfigError("alpha must be positive");
  if (alpha > Rational(1, 60)) throw ConfigError("alpha must be at most 1/60");
  if (light_capacity_divisor < 2) throw ConfigError("capacity divisor must be at least 2");
  if (top_k != light_capacity_divisor)
    throw ConfigError("cluster selection size must equal the capacity divisor");
  if (partition_multiplier <= 0) throw ConfigError("partition multiplier must be positive");
  if (partition_multiplier * alpha >= Rational(1, 2))
    throw ConfigError("partition cutoff must stay below 1/2");
  if (alpha * light_capacity_divisor > 1)
    throw ConfigError("capacity divisor must be at most 1/alpha");
  if (aux2_group_upper < alpha + 2 * light_capacity_divisor * alpha)
    throw ConfigError("group upper bound too small for the divisor");
  if (aux2_group_upper >= 1) throw ConfigError("group upper bound must be below 1");
  if (aux2_scale * (2 * partition_multiplier - 1) * alpha < 1)
    throw ConfigError("flow scale too small to restore unit coverage");
  // a ball can serve in both halves; the merged load must still fit
  if ((1 + aux2_scale) >= Rational(light_capacity_divisor))
    throw ConfigError("alpha too small: merged per-ball load would exceed capacity");
}

ThresholdResult threshold(const FractionalSolution& sigma_star,
                          const PipelineConfig& cfg, int n_balls) {
  ThresholdResult th;
  th.sigma = sigma_star;
  for (int i = 0; i < n_balls; ++i) {
    Rational y = sigma_star.get_y(base_copy(i));
    if (y > cfg.alpha) {
      th.heavy.push_back(i);
      th.sigma.y[base_copy(i)] = 1;
    } else if (y > 0) {
      th.light.push_back(i);
    }
  }
  return th;
}

PointPartition partition_points(const Instance& inst, const ThresholdResult& th,
                                const PipelineConfig& cfg) {
  std::set<int> light(th.light.begin(), th.light.end());
  std::map<int, Rational> light_in;
  for (const auto& [key, v] : th.sigma.x) {
    if (light.count(key.first.ball)) light_in[key.second] += v;
  }
  PointPartition parts;
  Rational cutoff = cfg.partition_multiplier * cfg.alpha;
  for (int j = 0; j < inst.n_cover; ++j) {
    auto it = light_in.find(j);
    Rational in = it == light_in.end() ? Rational(0) : it->second;
    if (in <= cutoff)
      parts.p1.push_back(j);
    else
      parts.p2.push_back(j);
  }
  return parts;
}

std::map<int, Rational> scaled_capacities(const Instance& inst,
                                          const ThresholdResult& th,
                                          const PipelineConfig& cfg) {
  std::map<int, Rational> cap;
  for (int h : th.heavy) cap[h] = Rational(inst.balls[h].capacity);
  for (int l : th.light)
    cap[l] = Rational(inst.balls[l].capacity) / cfg.light_capacity_divisor;
  return cap;
}

FractionalSolution build_aux1(const ThresholdResult& th, const PointPartition& parts,
                              const PipelineConfig& cfg) {
  FractionalSolution bar;
  std::set<int> heavy(th.heavy.begin(), th.heavy.end());
  std::set<int> light(th.light.begin(), th.light.end());
  std::set<int> p1(parts.p1.begin(), parts.p1.end());
  for (int h : th.heavy) bar.y[{CopyKind::H1, h}] = 1;
  for (int l : th.light)
    bar.y[{CopyKind::L1, l}] =
        Rational(cfg.light_capacity_divisor) * th.sigma.get_y(base_copy(l));
  for (const auto& [key, v] : th.sigma.x) {
    if (!p1.count(key.second)) continue;
    int ball = key.first.ball;
    if (heavy.count(ball))
      bar.set_x({CopyKind::H1, ball}, key.second, v);
    else if (light.count(ball))
      bar.set_x({CopyKind::L1, ball}, key.second, v);
    else
      require(v == 0, "flow on a ball with zero opening");
  }
  return bar;
}

Aux2Solution build_aux2(const ThresholdResult& th, const PointPartition& parts,
                        const PipelineConfig& cfg) {
  Aux2Solution hat;
  std::set<int> light(th.light.begin(), th.light.end());
  std::set<int> p2(parts.p2.begin(), parts.p2.end());
  for (int l : th.light)
    hat.sol.y[{CopyKind::L2, l}] =
        Rational(cfg.light_capacity_divisor) * th.sigma.get_y(base_copy(l));
  for (const auto& [key, v] : th.sigma.x) {
    if (!p2.count(key.second) || !light.count(key.first.ball)) continue;
    hat.sol.set_x({CopyKind::L2, key.first.ball}, key.second, v);
    hat.demand[key.second] += v;
  }
  Rational cutoff = cfg.partition_multiplier * cfg.alpha;
  for (int j : parts.p2)
    require(hat.demand[j] > cutoff, "part-2 point with light inflow below cutoff");
  return hat;
}

Aux2Solution double_and_cap(const Aux2Solution& aux2, const Instance& inst,
                            const PipelineConfig& cfg) {
  (void)inst;
  Aux2Solution out = aux2;
  Rational y_cap = 2 * cfg.light_capacity_divisor * cfg.alpha;
  for (auto& [tag, y] : out.sol.y) {
    y *= 2;
    require(y <= y_cap, "doubled opening above " + format_rational(y_cap));
  }
  std::map<int, std::vector<CopyTag>> by_point;
  for (auto& [key, v] : out.sol.x) {
    v *= 2;
    require(v <= 2 * cfg.alpha, "doubled flow above 2*alpha");
    by_point[key.second].push_back(key.first);
  }
  for (auto& [j, tags] : by_point) {
    Rational inflow = 0;
    for (const auto& t : tags) inflow += out.sol.get_x(t, j);
    if (inflow > 1) {
      Rational excess = inflow - 1;
      for (const auto& t : tags) {
        if (excess == 0) break;
        Rational cur = out.sol.get_x(t, j);
        Rational cut = std::min(cur, excess);
        out.sol.set_x(t, j, cur - cut);
        excess -= cut;
      }
      require(excess == 0, "could not trim inflow back to 1");
      inflow = 1;
    }
    require(inflow >= 2 * cfg.partition_multiplier * cfg.alpha,
            "doubled inflow below floor at point " + std::to_string(j));
  }
  return out;
}

Rational ClusterState::available_capacity(const CopyTag& c) const {
  auto it = scaled_cap.find(c.ball);
  require(it != scaled_cap.end(), "capacity lookup for unknown ball");
  return it->second - row(c);
}

void ClusterState::move_flow(const CopyTag& from, const CopyTag& to, int point,
                             const Rational& amt) {
  if (amt == 0) return;
  require(amt > 0, "negative flow move");
  Rational cur = sol.get_x(from, point);
  require(cur >= amt, "moving more flow than present");
  sol.set_x(from, point, cur - amt);
  sol.add_x(to, point, amt);
  row_sum[from] -= amt;
  row_sum[to] += amt;
}

ClusterState make_cluster_state(const Instance& inst, const ThresholdResult& th,
                                const PointPartition& parts,
                                const FractionalSolution& aux1,
                                const PipelineConfig& cfg) {
  ClusterState st;
  st.heavy = th.heavy;
  st.light = th.light;
  st.p1 = parts.p1;
  st.scaled_cap = scaled_capacities(inst, th, cfg);
  st.sol = aux1;
  for (const auto& [key, v] : aux1.x) st.row_sum[key.first] += v;
  st.lambda.insert(th.light.begin(), th.light.end());
  for (int h : th.heavy) st.ytilde[h] = 0;
  if (!parts.p1.empty())
    require(!th.heavy.empty(), "part-1 point without any heavy ball");
  for (int j : parts.p1) {
    Rational h_in = 0;
    for (int h : th.heavy) h_in += aux1.get_x({CopyKind::H1, h}, j);
    require(h_in >= 1 - cfg.partition_multiplier * cfg.alpha,
            "part-1 point with too little heavy inflow");
  }
  return st;
}

namespace {

// Invariants that must hold after every absorption and every opening.
void check_cluster_invariants(const ClusterState& st, const PipelineConfig& cfg) {
  Rational ybound = 1 + cfg.light_capacity_divisor * cfg.alpha;
  for (int h : st.heavy) {
    CopyTag tag{CopyKind::H1, h};
    Rational ac = st.available_capacity(tag);
    require(ac >= 0, "heavy ball " + std::to_string(h) + " over capacity");
    const Rational& yt = st.ytilde.at(h);
    require(yt < ybound, "outstanding credit at heavy ball " + std::to_string(h) +
                             " reached " + format_rational(yt));
    if (st.has_open)
      require(ac >= yt * st.k_last,
              "capacity reserve broken at heavy ball " + std::to_string(h));
  }
  // every point still fed by an unresolved light ball keeps its heavy backing
  Rational floor_h = 1 - cfg.partition_multiplier * cfg.alpha;
  for (int j : st.p1) {
    Rational lam_in = 0, h_in = 0, total = 0;
    for (int l : st.light) {
      Rational v = st.sol.get_x({CopyKind::L1, l}, j);
      total += v;
      if (st.lambda.count(l)) lam_in += v;
    }
    for (int h : st.heavy) {
      Rational v = st.sol.get_x({CopyKind::H1, h}, j);
      total += v;
      h_in += v;
    }
    require(total == 1, "flow conservation broken at point " + std::to_string(j));
    if (lam_in > 0)
      require(h_in >= floor_h,
              "pending point " + std::to_string(j) + " lost its heavy backing");
  }
}

struct Opener {
  ClusterState& st;
  const Instance& inst;
  const PipelineConfig& cfg;
  std::map<int, Rational>& f_by_heavy;

  void pull_from_heavy(int point, const CopyTag& to, const Rational& amt) {
    Rational rem = amt;
    for (int h : st.heavy) {
      if (rem == 0) break;
      CopyTag src{CopyKind::H1, h};
      Rational take = std::min(st.sol.get_x(src, point), rem);
      if (take == 0) continue;
      st.move_flow(src, to, point, take);
      f_by_heavy[h] += take;
      rem -= take;
    }
    require(rem == 0, "heavy balls held less flow than promised");
  }

  // everything the point receives, heavy copies first, moves to the target
  void full_reroute(int point, const CopyTag& to) {
    for (int h : st.heavy) {
      CopyTag src{CopyKind::H1, h};
      Rational v = st.sol.get_x(src, point);
      if (v == 0) continue;
      st.move_flow(src, to, point, v);
      f_by_heavy[h] += v;
    }
    for (int l : st.light) {
      CopyTag src{CopyKind::L1, l};
      if (src == to) continue;
      Rational v = st.sol.get_x(src, point);
      if (v != 0) st.move_flow(src, to, point, v);
    }
  }

  void lambda_reroute(int point, const CopyTag& to) {
    for (int l : st.lambda) {
      CopyTag src{CopyKind::L1, l};
      if (src == to) continue;
      Rational v = st.sol.get_x(src, point);
      if (v != 0) st.move_flow(src, to, point, v);
    }
  }
};

}  // namespace

void cluster_formation(ClusterState& st, const Instance& inst,
                       const PipelineConfig& cfg, Trace& trace) {
  const Rational pm_cut = cfg.partition_multiplier * cfg.alpha;
  Rational light_mass = 0;
  for (int l : st.light) light_mass += st.sol.get_y({CopyKind::L1, l});
  while (true) {
    // absorption sweep, restarted from the top after every hit
    bool absorbed = true;
    while (absorbed) {
      absorbed = false;
      for (int h : st.heavy) {
        CopyTag htag{CopyKind::H1, h};
        for (int l : std::vector<int>(st.lambda.begin(), st.lambda.end())) {
          CopyTag ltag{CopyKind::L1, l};
          if (!balls_intersect(inst, h, l)) continue;
          if (st.available_capacity(htag) < st.row(ltag)) continue;
          Rational moved = st.row(ltag);
          std::map<int, Rational> handed;
          for (int j : st.p1) {
            Rational v = st.sol.get_x(ltag, j);
            if (v == 0) continue;
            st.move_flow(ltag, htag, j, v);
            handed[j] = v;
          }
          st.cluster[h].push_back(l);
          st.surrendered[h][l] = std::move(handed);
          st.lambda.erase(l);
          st.ytilde[h] -= st.sol.get_y(ltag);
          TraceEvent ev;
          ev.kind = TraceEvent::Kind::Absorb;
          ev.heavy = h;
          ev.light = l;
          ev.flow = moved;
          trace.events.push_back(ev);
          check_cluster_invariants(st, cfg);
          absorbed = true;
          break;
        }
        if (absorbed) break;
      }
    }
    if (st.lambda.empty()) break;

    // pick the pending ball with the most service credit
    Rational kmax = 0;
    int t = -1;
    std::map<int, std::vector<int>> active;
    for (int l : st.lambda) {
      std::vector<int> pts;
      for (int j : st.p1)
        if (st.sol.get_x({CopyKind::L1, l}, j) > 0) pts.push_back(j);
      Rational k = std::min(st.scaled_cap.at(l), Rational((long)pts.size()));
      active[l] = std::move(pts);
      if (k > kmax) {
        kmax = k;
        t = l;
      }
    }
    if (kmax == 0) {
      for (int l : st.lambda) {
        require(st.row({CopyKind::L1, l}) == 0, "dropping a ball that still carries flow");
        TraceEvent ev;
        ev.kind = TraceEvent::Kind::Drop;
        ev.light = l;
        trace.events.push_back(ev);
        st.dropped.push_back(l);
        st.sol.y[{CopyKind::L1, l}] = 0;
      }
      st.lambda.clear();
      break;
    }

    st.lambda.erase(t);
    CopyTag ttag{CopyKind::L1, t};
    const std::vector<int>& pts = active.at(t);
    const Rational k = kmax;
    std::map<int, Rational> f_by_heavy;
    Opener op{st, inst, cfg, f_by_heavy};

    if (k > 2) {
      BigInt m = floor_nonneg((1 - cfg.light_capacity_divisor * cfg.alpha) * k);
      require(m >= 1 && m <= (long)pts.size(), "bad reroute count in the large case");
      for (long i = 0; i < (long)m; ++i) op.full_reroute(pts[i], ttag);
    } else if (k >= 1) {
      if (st.scaled_cap.at(t) >= Rational((long)pts.size())) {
        for (int p : pts) op.full_reroute(p, ttag);
      } else {
        int p = pts.front();
        op.lambda_reroute(p, ttag);
        require(st.sol.get_x(ttag, p) <= pm_cut, "pending flow above the cutoff");
        Rational h_avail = 0;
        for (int h : st.heavy) h_avail += st.sol.get_x({CopyKind::H1, h}, p);
        require(h_avail >= 1 - pm_cut, "heavy backing below floor");
        Rational amt = std::min(st.available_capacity(ttag), h_avail);
        op.pull_from_heavy(p, ttag, amt);
      }
    } else {
      int p = pts.front();
      op.lambda_reroute(p, ttag);
      Rational f1 = 0;
      for (int h : st.heavy) f1 += st.sol.get_x({CopyKind::H1, h}, p);
      require(f1 >= 1 - pm_cut, "heavy backing below floor");
      Rational amt = std::min(st.available_capacity(ttag), f1);
      op.pull_from_heavy(p, ttag, amt);
    }

    st.sol.y[ttag] = 1;
    st.opened.push_back(t);
    Rational f_total = 0;
    for (const auto& [h, v] : f_by_heavy) f_total += v;
    require(f_total >= k / 60, "pulled flow below k/60 at ball " + std::to_string(t));
    for (const auto& [h, v] : f_by_heavy) st.ytilde[h] += v / k;
    st.k_last = k;
    st.has_open = true;
    require(st.available_capacity(ttag) >= 0, "opened ball over capacity");

    TraceEvent ev;
    ev.kind = TraceEvent::Kind::Open;
    ev.light = t;
    ev.k = k;
    ev.f_total = f_total;
    ev.f_by_heavy = f_by_heavy;
    for (int h : st.heavy)
      ev.ac_after[h] = st.available_capacity({CopyKind::H1, h});
    trace.events.push_back(ev);
    check_cluster_invariants(st, cfg);
  }

  // the opening count is paid for by heavy openings and initial light mass
  Rational credit =
      Rational((long)st.heavy.size()) * (1 + cfg.light_capacity_divisor * cfg.alpha) +
      light_mass;
  require(Rational((long)st.opened.size()) <= 60 * credit,
          "opened more part-1 balls than the budget allows");
}

Part1Selection select_balls(const ClusterState& st, const Instance& inst,
                            const PipelineConfig& cfg, Trace& trace) {
  Part1Selection out;
  BallLarger larger{inst};
  const Quad5 golden(Rational(1, 2), Rational(1, 2));  // (1+sqrt5)/2

  for (int h : st.heavy) {
    std::vector<int> members;
    auto cit = st.cluster.find(h);
    if (cit != st.cluster.end()) members = cit->second;
    std::vector<int> order = members;
    order.push_back(h);
    std::sort(order.begin(), order.end(), larger);
    size_t pos_h = std::find(order.begin(), order.end(), h) - order.begin();

    std::vector<int> selected;
    std::vector<Quad5> factors;
    std::string case_name;
    bool residual_redistributed = false;
    if (pos_h < (size_t)cfg.top_k) {
      selected.assign(order.begin(), order.begin() + pos_h + 1);
      for (int b : selected) factors.push_back(b == h ? Quad5(3) : Quad5(1));
      case_name = "1";
    } else if (inst.variant == Variant::Monotonic) {
      selected.assign(order.begin(), order.begin() + cfg.top_k);
      factors.assign(selected.size(), Quad5(5));
      case_name = "2ii";
      residual_redistributed = true;
    } else {
      const Rational& r_h = inst.balls[h].radius;
      const Rational& r_ell = inst.balls[order[cfg.top_k - 1]].radius;
      if (golden * Quad5(r_h) >= Quad5(r_ell)) {
        selected.assign(order.begin(), order.begin() + (cfg.top_k - 1));
        selected.push_back(h);
        factors.assign(cfg.top_k - 1, Quad5(1));
        factors.push_back(Quad5(2) + Quad5::sqrt5());
        case_name = "2i";
      } else {
        selected.assign(order.begin(), order.begin() + cfg.top_k);
        factors.assign(selected.size(), Quad5(2) + Quad5::sqrt5());
        case_name = "2ii";
        residual_redistributed = true;
      }
    }

    // hand surrendered flow back, then place whatever is left
    std::map<int, Rational> row_h;
    for (int j : st.p1) {
      Rational v = st.sol.get_x({CopyKind::H1, h}, j);
      if (v != 0) row_h[j] = v;
    }
    std::map<int, std::map<int, Rational>> placed;  // ball -> point -> amount
    std::map<int, Rational> load;
    const auto& handed_all = st.surrendered.count(h)
                                 ? st.surrendered.at(h)
                                 : std::map<int, std::map<int, Rational>>{};
    for (int s : selected) {
      if (s == h) continue;
      auto hit = handed_all.find(s);
      if (hit == handed_all.end()) continue;
      for (const auto& [p, amt] : hit->second) {
        auto rit = row_h.find(p);
        if (rit == row_h.end()) continue;
        Rational g = std::min(rit->second, amt);
        if (g == 0) continue;
        rit->second -= g;
        if (rit->second == 0) row_h.erase(rit);
        placed[s][p] += g;
        load[s] += g;
      }
    }
    if (residual_redistributed) {
      for (auto& [p, rem] : row_h) {
        for (int s : std::set<int>(selected.begin(), selected.end())) {
          if (rem == 0) break;
          Rational spare = st.scaled_cap.at(s) - load[s];
          Rational g = std::min(rem, spare);
          if (g <= 0) continue;
          placed[s][p] += g;
          load[s] += g;
          rem -= g;
        }
        require(rem == 0, "cluster residual flow does not fit the selected balls");
      }
      row_h.clear();
    }

    for (size_t i = 0; i < selected.size(); ++i) {
      int s = selected[i];
      out.expansion[s] = factors[i];
      out.provenance[s] |= FROM_H1;
      const auto& flows = s == h ? row_h : placed[s];
      Rational total = 0;
      for (const auto& [p, v] : flows) {
        out.x[{s, p}] += v;
        total += v;
        check_coverage(inst, s, p, factors[i], "cluster selection");
      }
      Rational cap_s = s == h ? Rational(inst.balls[h].capacity) : st.scaled_cap.at(s);
      require(total <= cap_s, "selected ball " + std::to_string(s) + " over capacity");
    }

    TraceEvent ev;
    ev.kind = TraceEvent::Kind::Select;
    ev.cluster = h;
    ev.case_name = case_name;
    ev.balls = selected;
    ev.factors = factors;
    trace.events.push_back(ev);
  }

  for (int t : st.opened) {
    out.expansion[t] = Quad5(1);
    out.provenance[t] |= FROM_O;
    Rational total = 0;
    for (int j : st.p1) {
      Rational v = st.sol.get_x({CopyKind::L1, t}, j);
      if (v == 0) continue;
      out.x[{t, j}] += v;
      total += v;
      check_coverage(inst, t, j, Quad5(1), "opened light ball");
    }
    require(total <= st.scaled_cap.at(t),
            "opened ball " + std::to_string(t) + " over capacity");
    TraceEvent ev;
    ev.kind = TraceEvent::Kind::Select;
    ev.cluster = t;
    ev.case_name = "1";
    ev.balls = {t};
    ev.factors = {Quad5(1)};
    trace.events.push_back(ev);
  }

  std::map<int, Rational> inflow;
  for (const auto& [key, v] : out.x) inflow[key.second] += v;
  for (int j : st.p1)
    require(inflow[j] == 1, "part-1 point " + std::to_string(j) +
                                " not fully served after selection");
  return out;
}

Aux2Rounding round_aux2(const Aux2Solution& doubled, const Instance& inst,
                        const PipelineConfig& cfg) {
  Aux2Rounding out;
  BallLarger larger{inst};
  FractionalSolution sol = doubled.sol;
  std::set<int> pool;  // balls still carrying their own opening
  for (const auto& [tag, y] : sol.y)
    if (y > 0) pool.insert(tag.ball);
  std::vector<int> points;
  for (const auto& [j, d] : doubled.demand) points.push_back(j);

  auto pool_inflow = [&](int j) {
    Rational v = 0;
    for (int i : pool) v += sol.get_x({CopyKind::L2, i}, j);
    return v;
  };

  while (true) {
    int jstar = -1;
    for (int j : points) {
      if (pool_inflow(j) > cfg.alpha) {
        jstar = j;
        break;
      }
    }
    if (jstar < 0) break;
    std::vector<int> group;
    Rational mass = 0;
    for (int i : pool) {
      if (sol.get_x({CopyKind::L2, i}, jstar) == 0) continue;
      group.push_back(i);
      mass += sol.get_y({CopyKind::L2, i});
      if (mass >= cfg.alpha) break;
    }
    require(mass >= cfg.alpha, "rounding group ran out of opening mass");
    require(mass <= cfg.aux2_group_upper, "rounding group mass above the ceiling");
    int t = *std::min_element(group.begin(), group.end(), larger);
    CopyTag ttag{CopyKind::L2, t};
    for (int i : group) {
      if (i == t) continue;
      CopyTag src{CopyKind::L2, i};
      for (int j : points) {
        Rational v = sol.get_x(src, j);
        if (v == 0) continue;
        sol.set_x(src, j, Rational(0));
        sol.add_x(ttag, j, v);
      }
      sol.y[src] = 0;
      pool.erase(i);
    }
    sol.y[ttag] = 1;
    pool.erase(t);
    out.o_prime.push_back(t);

    Rational load = 0;
    for (int j : points) {
      Rational v = sol.get_x(ttag, j);
      if (v == 0) continue;
      load += v;
      check_coverage(inst, t, j, Quad5(3), "part-2 rounding");
    }
    require(load <= cfg.aux2_group_upper * light_cap(inst, t, cfg),
            "merged load above the group ceiling at ball " + std::to_string(t));
    require(load <= light_cap(inst, t, cfg),
            "merged load above capacity at ball " + std::to_string(t));
  }

  Rational floor_in = (2 * cfg.partition_multiplier - 1) * cfg.alpha;
  std::set<int> oset(out.o_prime.begin(), out.o_prime.end());
  for (int j : points) {
    Rational got = 0;
    for (int t : oset) got += sol.get_x({CopyKind::L2, t}, j);
    require(got >= floor_in, "point " + std::to_string(j) +
                                 " kept too little flow on opened balls");
  }

  // scale up, cap at 1, then trim each point back to exactly one unit
  std::map<int, Rational> inflow;
  for (int t : oset)
    for (int j : points) {
      Rational v = sol.get_x({CopyKind::L2, t}, j);
      if (v == 0) continue;
      Rational scaled = std::min(v * cfg.aux2_scale, Rational(1));
      out.x[{t, j}] = scaled;
      inflow[j] += scaled;
    }
  for (int j : points) {
    require(inflow[j] >= 1, "scaled inflow below 1 at point " + std::to_string(j));
    Rational excess = inflow[j] - 1;
    for (int t : oset) {
      if (excess == 0) break;
      auto it = out.x.find({t, j});
      if (it == out.x.end()) continue;
      Rational cut = std::min(it->second, excess);
      it->second -= cut;
      excess -= cut;
      if (it->second == 0) out.x.erase(it);
    }
    require(excess == 0, "could not trim scaled inflow to 1");
  }
  std::map<int, Rational> load;
  for (const auto& [key, v] : out.x) load[key.first] += v;
  for (int t : out.o_prime)
    require(load[t] <= cfg.aux2_scale * light_cap(inst, t, cfg),
            "scaled load above the allowance at ball " + std::to_string(t));
  return out;
}

Quad5 expansion_limit(Variant v) {
  return v == Variant::Uniform ? Quad5(Rational(2), Rational(1)) : Quad5(5);
}

PipelineResult run_pipeline(const Instance& inst, const FractionalSolution& sigma_star,
                            const PipelineConfig& cfg) {
  cfg.validate();
  {
    LPModel model = build_mmcc_lp(inst);
    FeasibilityReport rep = check_lp_feasibility(model, sigma_star);
    if (!rep.ok())
      throw ValidationError("input solution is infeasible:\n" + rep.render());
  }

  PipelineResult res;
  res.input_cost = sigma_star.cost();
  res.trace.alpha = cfg.alpha;
  res.thresh = threshold(sigma_star, cfg, inst.n_balls());
  res.parts = partition_points(inst, res.thresh, cfg);
  res.trace.h1 = res.thresh.heavy;
  for (int l : res.thresh.light)
    res.trace.l1_ybar[l] =
        Rational(cfg.light_capacity_divisor) * sigma_star.get_y(base_copy(l));

  res.aux1 = build_aux1(res.thresh, res.parts, cfg);
  res.aux2 = build_aux2(res.thresh, res.parts, cfg);

  for (int j : res.parts.p2) {
    Rational dropped = 0;
    for (int h : res.thresh.heavy)
      dropped += sigma_star.get_x(base_copy(h), j);
    if (dropped > 0) {
      TraceEvent ev;
      ev.kind = TraceEvent::Kind::DropFlow;
      ev.point = j;
      ev.amount = dropped;
      res.trace.events.push_back(ev);
    }
  }

  res.doubled = double_and_cap(res.aux2, inst, cfg);
  res.clusters = make_cluster_state(inst, res.thresh, res.parts, res.aux1, cfg);
  cluster_formation(res.clusters, inst, cfg, res.trace);
  res.part1 = select_balls(res.clusters, inst, cfg, res.trace);
  res.part2 = round_aux2(res.doubled, inst, cfg);

  RoundedSolution& rs = res.rounded;
  for (const auto& [b, f] : res.part1.expansion) {
    rs.solution.open[b] = f;
    rs.provenance[b] |= res.part1.provenance.at(b);
  }
  for (int t : res.part2.o_prime) {
    Quad5 f(3);
    auto it = rs.solution.open.find(t);
    if (it != rs.solution.open.end() && it->second > f) f = it->second;
    rs.solution.open[t] = f;
    rs.provenance[t] |= FROM_OPRIME;
  }
  for (const auto& [key, v] : res.part1.x) rs.solution.x[key] += v;
  for (const auto& [key, v] : res.part2.x) rs.solution.x[key] += v;

  std::map<int, Rational> load;
  std::map<int, Rational> inflow;
  for (const auto& [key, v] : rs.solution.x) {
    load[key.first] += v;
    inflow[key.second] += v;
  }
  for (const auto& [b, v] : load)
    require(v <= Rational(inst.balls[b].capacity),
            "combined load above capacity at ball " + std::to_string(b));
  for (int j = 0; j < inst.n_cover; ++j)
    require(inflow[j] == 1,
            "combined flow at point " + std::to_string(j) + " is not 1");

  // cost accounting against the fractional optimum
  const Rational& a = cfg.alpha;
  Rational n_h1((long)res.thresh.heavy.size());
  Rational n_o((long)res.clusters.opened.size());
  Rational n_op((long)res.part2.o_prime.size());
  Rational part1_count((long)res.part1.expansion.size());
  require(part1_count <= 10 * n_h1 + n_o, "selection opened more than its clusters allow");
  require(10 * n_h1 + n_o <= (70 + 600 * a) / a * res.input_cost,
          "part-1 opening budget exceeded");
  require(n_op <= 2 * cfg.light_capacity_divisor / a * res.input_cost,
          "part-2 opening budget exceeded");
  Rational total((long)rs.solution.open.size());
  require(total <= (90 + 600 * a) / a * res.input_cost, "total opening budget exceeded");
  res.trace.final_cost = total;
  res.trace.final_open = (long)rs.solution.open.size();
  return res;
}

}  // namespace capcover
