#include "capcover/verify.hpp"

#include <map>
#include <sstream>

namespace capcover {

namespace {

// Collects at most a handful of witnesses per check so reports stay readable.
struct Collector {
  std::map<std::string, std::vector<std::string>> failures;
  std::vector<std::string> order;

  void declare(const std::string& name) {
    if (!failures.count(name)) {
      failures[name] = {};
      order.push_back(name);
    }
  }
  void flag(const std::string& name, const std::string& witness) {
    declare(name);
    auto& v = failures[name];
    if (v.size() < 5) v.push_back(witness);
  }
  void fill(VerificationReport& rep) const {
    for (const auto& name : order) {
      const auto& v = failures.at(name);
      CheckItem item;
      item.name = name;
      item.pass = v.empty();
      if (!v.empty()) {
        std::ostringstream os;
        for (size_t i = 0; i < v.size(); ++i) {
          if (i) os << "; ";
          os << v[i];
        }
        item.detail = os.str();
      }
      rep.checks.push_back(item);
    }
  }
};

}  // namespace

bool VerificationReport::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string VerificationReport::render() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "pass " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  return os.str();
}

VerificationReport check_solution(const Instance& inst, const Solution& sol,
                                  const Quad5& beta_limit, bool require_integral) {
  VerificationReport rep;
  rep.cost = sol.cost();
  rep.max_expansion = Quad5(0);
  Collector col;
  col.declare("ball-ids");
  col.declare("expansion-limit");
  col.declare("flow-range");
  col.declare("coverage");
  col.declare("capacity");
  col.declare("containment");
  if (require_integral) col.declare("integrality");

  for (const auto& [ball, f] : sol.open) {
    if (ball < 0 || ball >= inst.n_balls()) {
      col.flag("ball-ids", "open ball " + std::to_string(ball) + " out of range");
      continue;
    }
    if (f < Quad5(1))
      col.flag("expansion-limit", "ball " + std::to_string(ball) + " factor below 1");
    if (f > beta_limit)
      col.flag("expansion-limit",
               "ball " + std::to_string(ball) + " factor above the limit");
  }

  std::map<int, Rational> inflow;
  std::map<int, Rational> load;
  for (const auto& [key, v] : sol.x) {
    auto [ball, point] = key;
    if (ball < 0 || ball >= inst.n_balls() || point < 0 || point >= inst.n_points()) {
      col.flag("ball-ids", "assignment (" + std::to_string(point) + "," +
                               std::to_string(ball) + ") out of range");
      continue;
    }
    if (v == 0) continue;
    if (v < 0 || v > 1) {
      col.flag("flow-range", "x[" + std::to_string(ball) + "," +
                                 std::to_string(point) + "] = " + format_rational(v));
      continue;
    }
    if (point >= inst.n_cover) {
      col.flag("coverage", "flow at non-coverage point " + std::to_string(point));
      continue;
    }
    auto bit = sol.open.find(ball);
    if (bit == sol.open.end()) {
      col.flag("flow-range", "flow on closed ball " + std::to_string(ball));
      continue;
    }
    if (require_integral && v != 1)
      col.flag("integrality", "x[" + std::to_string(ball) + "," +
                                  std::to_string(point) + "] = " + format_rational(v));
    inflow[point] += v;
    load[ball] += v;

    const Ball& b = inst.balls[ball];
    const Rational& d = inst.space.d(b.center, point);
    Quad5 reach = bit->second * Quad5(b.radius);
    if (Quad5(d) > reach)
      col.flag("containment", "point " + std::to_string(point) + " lies outside ball " +
                                  std::to_string(ball) + " at its factor");
    if (b.radius == 0) {
      if (d != 0)
        col.flag("containment", "point " + std::to_string(point) +
                                    " assigned to the degenerate ball " +
                                    std::to_string(ball));
    } else {
      Quad5 used = Quad5(d) / Quad5(b.radius);
      if (used > rep.max_expansion) rep.max_expansion = used;
    }
  }

  for (int j = 0; j < inst.n_cover; ++j) {
    auto it = inflow.find(j);
    Rational got = it == inflow.end() ? Rational(0) : it->second;
    if (got != 1)
      col.flag("coverage",
               "point " + std::to_string(j) + " receives " + format_rational(got));
  }
  for (const auto& [ball, total] : load) {
    if (total > Rational(inst.balls[ball].capacity))
      col.flag("capacity", "ball " + std::to_string(ball) + " carries " +
                               format_rational(total) + " of " +
                               std::to_string(inst.balls[ball].capacity));
  }

  col.fill(rep);
  return rep;
}

VerificationReport check_trace(const Trace& trace, const Rational& fractional_cost) {
  VerificationReport rep;
  rep.cost = 0;
  rep.max_expansion = Quad5(0);
  Collector col;
  col.declare("trace-shape");
  col.declare("credit-floor");
  col.declare("credit-ceiling");
  col.declare("capacity-reserve");
  col.declare("opening-budget");
  col.declare("part1-budget");
  col.declare("total-budget");

  PipelineConfig cfg;
  try {
    cfg = PipelineConfig::with_alpha(trace.alpha);
    cfg.validate();
  } catch (const ConfigError& e) {
    col.flag("trace-shape", e.what());
    col.fill(rep);
    return rep;
  }
  const Rational& a = cfg.alpha;
  const int divisor = cfg.light_capacity_divisor;
  const Rational ceiling = 1 + divisor * a;

  std::map<int, Rational> ytilde;
  for (int h : trace.h1) ytilde[h] = 0;
  Rational k_last = 0;
  bool has_open = false;
  long opened = 0;

  auto check_ceiling = [&](size_t idx) {
    for (const auto& [h, yt] : ytilde)
      if (yt >= ceiling)
        col.flag("credit-ceiling", "event " + std::to_string(idx) + ": credit at ball " +
                                       std::to_string(h) + " is " + format_rational(yt));
  };

  for (size_t idx = 0; idx < trace.events.size(); ++idx) {
    const TraceEvent& e = trace.events[idx];
    switch (e.kind) {
      case TraceEvent::Kind::Absorb: {
        if (!ytilde.count(e.heavy)) {
          col.flag("trace-shape", "absorb into unknown heavy ball " +
                                      std::to_string(e.heavy));
          break;
        }
        auto it = trace.l1_ybar.find(e.light);
        if (it == trace.l1_ybar.end()) {
          col.flag("trace-shape",
                   "absorbed ball " + std::to_string(e.light) + " has no opening record");
          break;
        }
        ytilde[e.heavy] -= it->second;
        check_ceiling(idx);
        break;
      }
      case TraceEvent::Kind::Open: {
        ++opened;
        if (e.k <= 0) {
          col.flag("trace-shape", "open with nonpositive credit");
          break;
        }
        Rational f_sum = 0;
        for (const auto& [h, v] : e.f_by_heavy) {
          if (!ytilde.count(h))
            col.flag("trace-shape", "flow pulled from unknown ball " + std::to_string(h));
          f_sum += v;
        }
        if (f_sum != e.f_total)
          col.flag("trace-shape", "event " + std::to_string(idx) +
                                      ": flow breakdown sums to " + format_rational(f_sum) +
                                      ", recorded " + format_rational(e.f_total));
        if (e.f_total < e.k / 60)
          col.flag("credit-floor", "event " + std::to_string(idx) + ": pulled " +
                                       format_rational(e.f_total) + " for credit " +
                                       format_rational(e.k));
        for (const auto& [h, v] : e.f_by_heavy)
          if (ytilde.count(h)) ytilde[h] += v / e.k;
        k_last = e.k;
        has_open = true;
        check_ceiling(idx);
        for (const auto& [h, yt] : ytilde) {
          auto it = e.ac_after.find(h);
          if (it == e.ac_after.end()) {
            col.flag("trace-shape", "event " + std::to_string(idx) +
                                        ": no capacity snapshot for ball " +
                                        std::to_string(h));
            continue;
          }
          if (it->second < 0 || it->second < yt * k_last)
            col.flag("capacity-reserve",
                     "event " + std::to_string(idx) + ": ball " + std::to_string(h) +
                         " has " + format_rational(it->second) + ", needs " +
                         format_rational(yt * k_last));
        }
        break;
      }
      case TraceEvent::Kind::Select:
        if ((int)e.balls.size() > cfg.top_k)
          col.flag("trace-shape", "selection of " + std::to_string(e.balls.size()) +
                                      " balls in one cluster");
        break;
      case TraceEvent::Kind::DropFlow:
        if (e.amount <= 0 || e.amount > 1)
          col.flag("trace-shape", "dropped amount " + format_rational(e.amount));
        break;
      case TraceEvent::Kind::Drop:
        break;
    }
  }
  (void)has_open;

  Rational light_mass = 0;
  for (const auto& [ball, y] : trace.l1_ybar) light_mass += y;
  Rational h1((long)trace.h1.size());
  if (Rational(opened) > 60 * (ceiling * h1 + light_mass))
    col.flag("opening-budget", std::to_string(opened) + " openings against credit " +
                                   format_rational(ceiling * h1 + light_mass));
  if (10 * h1 + opened > (70 + 600 * a) / a * fractional_cost)
    col.flag("part1-budget", "10*" + format_rational(h1) + "+" + std::to_string(opened) +
                                 " exceeds the budget for cost " +
                                 format_rational(fractional_cost));
  if (trace.final_cost) {
    rep.cost = *trace.final_cost;
    if (*trace.final_cost > (90 + 600 * a) / a * fractional_cost)
      col.flag("total-budget", format_rational(*trace.final_cost) +
                                   " opened against fractional cost " +
                                   format_rational(fractional_cost));
  }

  col.fill(rep);
  return rep;
}

}  // namespace capcover
