#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "capcover/instance.hpp"
#include "capcover/lp.hpp"
#include "capcover/solution.hpp"
#include "capcover/trace.hpp"

namespace capcover {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a step produces a state that the accompanying guarantees rule
// out. Seeing one of these means a bug, not bad input.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

struct PipelineConfig {
  Rational alpha = Rational(1, 60);     // heavy/light threshold
  int light_capacity_divisor = 10;      // light balls run on U/10
  int top_k = 10;                       // balls kept per cluster
  Rational partition_multiplier = 4;    // light inflow cutoff is 4*alpha
  Rational aux2_group_upper;            // opening mass per rounding group
  Rational aux2_scale;                  // final flow scale on part-2 balls

  static PipelineConfig with_alpha(const Rational& alpha);
  void validate() const;  // throws ConfigError
};

struct ThresholdResult {
  FractionalSolution sigma;   // heavy openings raised to 1
  std::vector<int> heavy;     // ascending ball ids, y* > alpha
  std::vector<int> light;     // ascending ball ids, 0 < y* <= alpha
};

ThresholdResult threshold(const FractionalSolution& sigma_star,
                          const PipelineConfig& cfg, int n_balls);

struct PointPartition {
  std::vector<int> p1;  // light inflow <= 4*alpha
  std::vector<int> p2;  // the rest
};

PointPartition partition_points(const Instance& inst, const ThresholdResult& th,
                                const PipelineConfig& cfg);

// Effective capacities: heavy balls keep U, light balls get U/divisor.
std::map<int, Rational> scaled_capacities(const Instance& inst,
                                          const ThresholdResult& th,
                                          const PipelineConfig& cfg);

// Restriction of sigma to part-1 points, on H1/L1 copies, light openings
// multiplied by the capacity divisor.
FractionalSolution build_aux1(const ThresholdResult& th, const PointPartition& parts,
                              const PipelineConfig& cfg);

struct Aux2Solution {
  FractionalSolution sol;            // L2 copies over part-2 points
  std::map<int, Rational> demand;    // light inflow per part-2 point
};

Aux2Solution build_aux2(const ThresholdResult& th, const PointPartition& parts,
                        const PipelineConfig& cfg);

// Doubles openings and flows, then trims per-point inflow back to 1 by
// reducing flows in ascending ball-id order.
Aux2Solution double_and_cap(const Aux2Solution& aux2, const Instance& inst,
                            const PipelineConfig& cfg);

struct ClusterState {
  std::vector<int> heavy;
  std::vector<int> light;
  std::vector<int> p1;
  std::map<int, Rational> scaled_cap;
  FractionalSolution sol;            // evolving copy of the part-1 solution
  std::map<CopyTag, Rational> row_sum;

  std::set<int> lambda;              // lights not yet opened/absorbed/dropped
  std::vector<int> opened;           // O, in opening order
  std::vector<int> dropped;
  std::map<int, std::vector<int>> cluster;  // heavy id -> absorbed lights
  // heavy -> light -> point -> amount handed over during absorption
  std::map<int, std::map<int, std::map<int, Rational>>> surrendered;
  std::map<int, Rational> ytilde;    // outstanding service credit per heavy
  Rational k_last;
  bool has_open = false;

  Rational available_capacity(const CopyTag& c) const;
  Rational row(const CopyTag& c) const { auto it = row_sum.find(c); return it == row_sum.end() ? Rational(0) : it->second; }
  void move_flow(const CopyTag& from, const CopyTag& to, int point, const Rational& amt);
};

ClusterState make_cluster_state(const Instance& inst, const ThresholdResult& th,
                                const PointPartition& parts,
                                const FractionalSolution& aux1,
                                const PipelineConfig& cfg);

// Alternates absorption sweeps with openings until every light ball is
// opened, absorbed, or dropped. Appends absorb/open/drop events.
void cluster_formation(ClusterState& st, const Instance& inst,
                       const PipelineConfig& cfg, Trace& trace);

constexpr std::uint8_t FROM_H1 = 1;
constexpr std::uint8_t FROM_O = 2;
constexpr std::uint8_t FROM_OPRIME = 4;

struct Part1Selection {
  std::map<int, Quad5> expansion;
  std::map<int, std::uint8_t> provenance;
  std::map<std::pair<int, int>, Rational> x;  // ball, point -> flow
};

Part1Selection select_balls(const ClusterState& st, const Instance& inst,
                            const PipelineConfig& cfg, Trace& trace);

struct Aux2Rounding {
  std::vector<int> o_prime;                   // opened part-2 balls, in order
  std::map<std::pair<int, int>, Rational> x;  // scaled and trimmed flows
};

Aux2Rounding round_aux2(const Aux2Solution& doubled, const Instance& inst,
                        const PipelineConfig& cfg);

struct RoundedSolution {
  Solution solution;
  std::map<int, std::uint8_t> provenance;
};

struct PipelineResult {
  Rational input_cost;          // cost of the fractional solution rounded
  ThresholdResult thresh;
  PointPartition parts;
  FractionalSolution aux1;      // as built, before cluster formation
  Aux2Solution aux2;            // as built
  Aux2Solution doubled;
  ClusterState clusters;
  Part1Selection part1;
  Aux2Rounding part2;
  RoundedSolution rounded;
  Trace trace;
};

// sigma_star must be feasible for the covering relaxation of inst.
PipelineResult run_pipeline(const Instance& inst, const FractionalSolution& sigma_star,
                            const PipelineConfig& cfg);

Quad5 expansion_limit(Variant v);

}  // namespace capcover
