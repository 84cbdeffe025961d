// End-to-end acceptance harness. Runs two 500-instance seeded suites (one per
// capacity variant), checking on every run: the expansion bound, the exact
// trace inequalities, capacity composition of balls opened on both sides, the
// auxiliary-solution feasibility and cost bounds, the oracle sandwich, full
// integralization, and agreement between the simplex optimum and an
// independent vertex-enumeration oracle. Then 20 set-system reductions and a
// crafted instance whose pipeline opens one ball on both sides, so the
// composition check cannot stay vacuous. Exits nonzero on failures.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "capcover/assignment.hpp"
#include "capcover/instance.hpp"
#include "capcover/lp.hpp"
#include "capcover/oracle.hpp"
#include "capcover/rounding.hpp"
#include "capcover/solution.hpp"
#include "capcover/verify.hpp"
#include "support/fixtures.hpp"
#include "support/lp_oracle.hpp"

using namespace capcover;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++g_failures;
    std::cout << "FAIL " << what << "\n";
  }
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct SuiteOutcome {
  int runs = 0;
  double core_seconds = 0;    // generate + LP + pipeline + solution/trace checks
  double extra_seconds = 0;   // the remaining per-run criteria
  int both_sides_balls = 0;   // balls opened by both rounding parts
  int greedy_stalls = 0;
};

SuiteOutcome run_suite(Variant variant, std::uint64_t seed_base, const Quad5& limit,
                       const PipelineConfig& cfg, int n_runs) {
  SuiteOutcome out;
  const std::string vn = variant_name(variant);
  for (int i = 0; i < n_runs; ++i) {
    std::uint64_t seed = seed_base + static_cast<std::uint64_t>(i);
    std::string tag = vn + " seed " + std::to_string(seed);
    try {
      Clock::time_point t0 = Clock::now();
      Instance inst =
          generate_random(4 + i % 5, 3 + (i / 5) % 4, variant, seed);
      LPModel model = build_mmcc_lp(inst);
      SimplexResult lp = solve_lp(model);
      expect(lp.status == SimplexResult::Status::Optimal, tag + ": LP infeasible");
      if (lp.status != SimplexResult::Status::Optimal) continue;
      FractionalSolution sigma = lp.to_solution(model);
      PipelineResult res = run_pipeline(inst, sigma, cfg);

      VerificationReport rep =
          check_solution(inst, res.rounded.solution, limit, false);
      expect(rep.ok(), tag + ": expansion bound\n" + rep.render());
      VerificationReport trep = check_trace(res.trace, res.input_cost);
      expect(trep.ok(), tag + ": trace inequalities\n" + trep.render());
      out.core_seconds += seconds_since(t0);

      t0 = Clock::now();
      // capacity composition for balls opened by both rounding parts
      std::map<int, Rational> load;
      for (const auto& [key, v] : res.rounded.solution.x) load[key.first] += v;
      for (const auto& [b, prov] : res.rounded.provenance) {
        if (!(prov & FROM_OPRIME) || !(prov & (FROM_H1 | FROM_O))) continue;
        ++out.both_sides_balls;
        Rational cap(inst.balls[b].capacity);
        Rational bound = (1 + cfg.aux2_scale) * cap / cfg.light_capacity_divisor;
        expect(bound < cap, tag + ": merged-load bound does not clear capacity");
        expect(load[b] <= bound, tag + ": merged load above the composition bound");
        expect(load[b] <= cap, tag + ": merged load above capacity");
      }

      // auxiliary solutions against their own models
      Aux1Spec s1;
      s1.heavy = res.thresh.heavy;
      s1.light = res.thresh.light;
      s1.points = res.parts.p1;
      s1.scaled_cap = scaled_capacities(inst, res.thresh, cfg);
      FeasibilityReport f1 = check_lp_feasibility(build_aux1_model(inst, s1), res.aux1);
      expect(f1.ok(), tag + ": aux1 feasibility\n" + f1.render());
      expect(res.aux1.cost() <= res.input_cost / cfg.alpha,
             tag + ": aux1 cost bound");
      Aux2Spec s2;
      s2.light = res.thresh.light;
      s2.points = res.parts.p2;
      s2.scaled_cap = s1.scaled_cap;
      s2.demand = res.aux2.demand;
      FeasibilityReport f2 =
          check_lp_feasibility(build_aux2_model(inst, s2), res.aux2.sol);
      expect(f2.ok(), tag + ": aux2 feasibility\n" + f2.render());
      expect(res.aux2.sol.cost() <= 10 * res.input_cost, tag + ": aux2 cost bound");

      // oracle sandwich
      auto opt = optimal_cover(inst, Rational(1));
      expect(opt.has_value(), tag + ": oracle found no cover");
      if (opt) {
        Rational opt_size(opt->size);
        expect(lp.objective <= opt_size, tag + ": LP optimum above OPT");
        expect(opt->size <= (long)res.rounded.solution.open.size(),
               tag + ": pipeline opened fewer balls than OPT");
        auto greedy = greedy_cover(inst, Rational(1));
        if (greedy)
          expect(greedy->size >= opt->size, tag + ": greedy beat OPT");
        else
          ++out.greedy_stalls;
      }

      // integralization
      FlowResult flow = integralize(inst, res.rounded.solution);
      expect(flow.complete, tag + ": integralization incomplete");
      if (flow.complete) {
        Solution integral;
        integral.open = res.rounded.solution.open;
        for (const auto& [p, b] : flow.assignment) integral.x[{b, p}] = 1;
        VerificationReport irep = check_solution(inst, integral, limit, true);
        expect(irep.ok(), tag + ": integral solution\n" + irep.render());
      }

      // simplex against the independent vertex-enumeration oracle
      auto projected = testsupport::project_min_cost(model);
      expect(projected.has_value(), tag + ": projection oracle found no optimum");
      if (projected)
        expect(*projected == lp.objective,
               tag + ": simplex and vertex enumeration disagree (" +
                   format_rational(*projected) + " vs " +
                   format_rational(lp.objective) + ")");
      out.extra_seconds += seconds_since(t0);
      ++out.runs;
    } catch (const std::exception& e) {
      expect(false, tag + ": exception: " + e.what());
    }
  }
  return out;
}

std::vector<std::vector<int>> random_set_system(std::mt19937_64& rng, int n_elem,
                                                int n_sets) {
  std::vector<std::vector<int>> sets(n_sets);
  for (int e = 0; e < n_elem; ++e) sets[e % n_sets].push_back(e);  // coverable
  for (int s = 0; s < n_sets; ++s) {
    std::set<int> members(sets[s].begin(), sets[s].end());
    for (int e = 0; e < n_elem; ++e)
      if (rng() % 2 == 0) members.insert(e);
    sets[s].assign(members.begin(), members.end());
  }
  return sets;
}

int brute_force_min_cover(const std::vector<std::vector<int>>& sets, int n_elem) {
  int n = static_cast<int>(sets.size());
  int best = n + 1;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::set<int> covered;
    for (int s = 0; s < n; ++s)
      if (mask & (1 << s)) covered.insert(sets[s].begin(), sets[s].end());
    if ((int)covered.size() == n_elem)
      best = std::min(best, __builtin_popcount(mask));
  }
  return best;
}

void run_reduction_checks() {
  std::mt19937_64 rng(777);
  for (int t = 0; t < 20; ++t) {
    int n_elem = 3 + static_cast<int>(rng() % 4);
    int n_sets = 3 + static_cast<int>(rng() % 3);
    auto sets = random_set_system(rng, n_elem, n_sets);
    std::string tag = "reduction " + std::to_string(t);
    Instance inst = from_set_cover(sets);
    expect(inst.n_cover == n_elem, tag + ": wrong coverage count");
    int brute = brute_force_min_cover(sets, n_elem);
    auto opt = optimal_cover(inst, Rational(1));
    expect(opt.has_value(), tag + ": no cover found");
    if (opt)
      expect(opt->size == brute, tag + ": oracle " + std::to_string(opt->size) +
                                     " vs brute force " + std::to_string(brute));
    for (int s = 0; s < n_sets; ++s) {
      std::set<int> members(sets[s].begin(), sets[s].end());
      for (int e = 0; e < n_elem; ++e) {
        if (members.count(e)) continue;
        expect(inst.space.d(inst.balls[s].center, e) >= 3,
               tag + ": non-member too close to set " + std::to_string(s));
      }
    }
  }
}

// random instances essentially never open a ball in both rounding parts, so
// the merged-load criterion gets a dedicated hand-built run
void run_composition_check(const PipelineConfig& cfg) {
  testsupport::Crafted c = testsupport::both_sides();
  PipelineResult res = run_pipeline(c.inst, c.sigma, cfg);
  std::map<int, Rational> load;
  for (const auto& [key, v] : res.rounded.solution.x) load[key.first] += v;
  int both = 0;
  for (const auto& [b, prov] : res.rounded.provenance) {
    if (!(prov & FROM_OPRIME) || !(prov & (FROM_H1 | FROM_O))) continue;
    ++both;
    Rational cap(c.inst.balls[b].capacity);
    Rational bound = (1 + cfg.aux2_scale) * cap / cfg.light_capacity_divisor;
    expect(load[b] <= bound, "crafted: merged load above the composition bound");
    expect(load[b] <= cap, "crafted: merged load above capacity");
  }
  expect(both == 1, "crafted: expected exactly one both-sides ball");
  VerificationReport rep = check_solution(c.inst, res.rounded.solution,
                                          Quad5(2) + Quad5::sqrt5(), false);
  expect(rep.ok(), "crafted: expansion bound\n" + rep.render());
  VerificationReport trep = check_trace(res.trace, res.input_cost);
  expect(trep.ok(), "crafted: trace inequalities\n" + trep.render());
  std::cout << "crafted composition run: " << both << " both-sides ball\n";
}

}  // namespace

int main() {
  std::cout << std::fixed << std::setprecision(1);
  PipelineConfig cfg = PipelineConfig::with_alpha(Rational(1, 60));
  const int n_runs = 500;

  SuiteOutcome mono =
      run_suite(Variant::Monotonic, 20000, Quad5(5), cfg, n_runs);
  std::cout << "monotonic suite: " << mono.runs << "/" << n_runs << " runs, core "
            << mono.core_seconds << " s, extra " << mono.extra_seconds
            << " s, both-sides balls " << mono.both_sides_balls
            << ", greedy stalls " << mono.greedy_stalls << "\n";
  expect(mono.runs == n_runs, "monotonic suite did not complete");
  expect(mono.core_seconds < 120.0, "monotonic suite exceeded the time budget");

  SuiteOutcome uni = run_suite(Variant::Uniform, 30000,
                               Quad5(2) + Quad5::sqrt5(), cfg, n_runs);
  std::cout << "uniform suite: " << uni.runs << "/" << n_runs << " runs, core "
            << uni.core_seconds << " s, extra " << uni.extra_seconds
            << " s, both-sides balls " << uni.both_sides_balls
            << ", greedy stalls " << uni.greedy_stalls << "\n";
  expect(uni.runs == n_runs, "uniform suite did not complete");

  // the composition identity for the configured alpha, on its own
  expect((1 + 1 / (7 * cfg.alpha)) / cfg.light_capacity_divisor < 1,
         "composition identity fails for alpha " + format_rational(cfg.alpha));

  run_reduction_checks();
  run_composition_check(cfg);

  if (g_failures == 0) {
    std::cout << "acceptance: all checks passed\n";
    return 0;
  }
  std::cout << "acceptance: " << g_failures << " failures\n";
  return 1;
}
