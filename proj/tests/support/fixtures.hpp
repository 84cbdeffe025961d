#pragma once

// Hand-built instances and fractional solutions used across the test files.
// The pipeline fixtures are engineered so specific branches fire with exact,
// predictable numbers; the accompanying expectations are spelled out at the
// point of use.

#include <utility>
#include <vector>

#include "capcover/instance.hpp"
#include "capcover/lp.hpp"

namespace testsupport {

using capcover::Ball;
using capcover::CopyKind;
using capcover::FractionalSolution;
using capcover::Instance;
using capcover::Rational;
using capcover::Variant;
using capcover::base_copy;

// points on a line with the given coordinates; the first n_cover need service
inline Instance line_instance(const std::vector<Rational>& pos, int n_cover,
                              const std::vector<Ball>& balls, Variant variant) {
  Instance inst;
  inst.variant = variant;
  inst.space.n = static_cast<int>(pos.size());
  inst.n_cover = n_cover;
  inst.space.dist.assign(pos.size(), std::vector<Rational>(pos.size()));
  for (size_t i = 0; i < pos.size(); ++i)
    for (size_t j = 0; j < pos.size(); ++j)
      inst.space.dist[i][j] = abs(pos[i] - pos[j]);
  inst.balls = balls;
  capcover::validate_instance(inst);
  return inst;
}

// three points 0,1,2 at unit spacing; two balls of radius 1 around the ends,
// capacity 2 each
inline Instance line3() {
  return line_instance({0, 1, 2}, 3,
                       {Ball{0, Rational(1), 2}, Ball{2, Rational(1), 2}},
                       Variant::Uniform);
}

struct Crafted {
  Instance inst;
  FractionalSolution sigma;
};

inline void set_base(FractionalSolution& s, int ball, int point, const Rational& v) {
  s.x[{base_copy(ball), point}] = v;
}

// One light ball spanning two far-apart points, each anchored by a nearly
// full heavy ball. The light ball cannot be absorbed (no heavy has room for
// its row) and its scaled capacity is below 1, so the opening runs the
// smallest-credit branch: it pulls min(AC, heavy backing) of the lowest
// point's flow. caps = {heavy, light} capacities.
inline Crafted two_anchor(Variant variant, std::int64_t light_capacity) {
  Crafted c;
  c.inst = line_instance(
      {0, 10, 5}, 2,
      {Ball{0, Rational(1), 1}, Ball{1, Rational(1), 1},
       Ball{2, Rational(5), light_capacity}},
      variant);
  c.sigma.y[base_copy(0)] = 1;
  c.sigma.y[base_copy(1)] = 1;
  c.sigma.y[base_copy(2)] = Rational(1, 100);
  set_base(c.sigma, 0, 0, Rational(199, 200));
  set_base(c.sigma, 2, 0, Rational(1, 200));
  set_base(c.sigma, 1, 1, Rational(199, 200));
  set_base(c.sigma, 2, 1, Rational(1, 200));
  return c;
}

// two_anchor plus a light ball with an opening but no flow at all, placed
// away from everything so it cannot be absorbed; it must be dropped
inline Crafted two_anchor_with_idle() {
  Crafted c;
  c.inst = line_instance(
      {0, 10, 5, 1000}, 2,
      {Ball{0, Rational(1), 1}, Ball{1, Rational(1), 1},
       Ball{2, Rational(5), 1}, Ball{3, Rational(1), 1}},
      Variant::Uniform);
  c.sigma.y[base_copy(0)] = 1;
  c.sigma.y[base_copy(1)] = 1;
  c.sigma.y[base_copy(2)] = Rational(1, 100);
  c.sigma.y[base_copy(3)] = Rational(1, 100);
  set_base(c.sigma, 0, 0, Rational(199, 200));
  set_base(c.sigma, 2, 0, Rational(1, 200));
  set_base(c.sigma, 1, 1, Rational(199, 200));
  set_base(c.sigma, 2, 1, Rational(1, 200));
  return c;
}

// three anchored points under one wide light ball with scaled capacity 3:
// service credit 3 > 2, so the opening fully reroutes floor((1-1/6)*3) = 2
// points into the light ball
inline Crafted three_anchor_wide() {
  Crafted c;
  c.inst = line_instance(
      {0, 10, 20}, 3,
      {Ball{0, Rational(1), 1}, Ball{1, Rational(1), 1},
       Ball{2, Rational(1), 1}, Ball{1, Rational(10), 30}},
      Variant::Monotonic);
  for (int i = 0; i < 3; ++i) {
    c.sigma.y[base_copy(i)] = 1;
    set_base(c.sigma, i, i, Rational(199, 200));
    set_base(c.sigma, 3, i, Rational(1, 200));
  }
  c.sigma.y[base_copy(3)] = Rational(1, 100);
  return c;
}

// two heavy balls sharing point 0 with unequal spare flow there; the opened
// light ball drains them in ascending id order. points 1 and 2 (plus a
// fourth heavy) load every heavy ball past 1 - 1/200 so none of them can
// absorb the light ball's row beforehand.
inline Crafted two_heavy_drain() {
  Crafted c;
  c.inst = line_instance(
      {0, 0, 0}, 3,
      {Ball{0, Rational(1), 1}, Ball{0, Rational(1), 1},
       Ball{0, Rational(2), 5}, Ball{0, Rational(1), 1}},
      Variant::Monotonic);
  c.sigma.y[base_copy(0)] = 1;
  c.sigma.y[base_copy(1)] = 1;
  c.sigma.y[base_copy(3)] = 1;
  c.sigma.y[base_copy(2)] = Rational(1, 100);
  set_base(c.sigma, 0, 0, Rational(1, 3));
  set_base(c.sigma, 1, 0, Rational(397, 600));
  set_base(c.sigma, 2, 0, Rational(1, 200));
  set_base(c.sigma, 0, 1, Rational(2, 3));
  set_base(c.sigma, 1, 1, Rational(1, 3));
  set_base(c.sigma, 1, 2, Rational(1, 300));
  set_base(c.sigma, 3, 2, Rational(299, 300));
  return c;
}

// two separate heavy/light pairs, both absorbable; in the second pair the
// light ball is larger than its host, so selection keeps it and hands its
// surrendered flow back
inline Crafted absorb_pairs() {
  Crafted c;
  c.inst = line_instance(
      {0, 100}, 2,
      {Ball{0, Rational(2), 2}, Ball{0, Rational(1), 1},
       Ball{1, Rational(2), 2}, Ball{1, Rational(3), 2}},
      Variant::Monotonic);
  c.sigma.y[base_copy(0)] = 1;
  c.sigma.y[base_copy(2)] = 1;
  c.sigma.y[base_copy(1)] = Rational(1, 100);
  c.sigma.y[base_copy(3)] = Rational(1, 100);
  set_base(c.sigma, 0, 0, Rational(199, 200));
  set_base(c.sigma, 1, 0, Rational(1, 200));
  set_base(c.sigma, 2, 1, Rational(199, 200));
  set_base(c.sigma, 3, 1, Rational(1, 200));
  return c;
}

// one heavy ball that absorbs twelve co-centered light balls one by one; its
// cluster then has more than ten members, forcing the top-ten selection
// cases. heavy_id and heavy_radius steer which case fires.
inline Crafted big_cluster(Variant variant, int heavy_id,
                           const Rational& heavy_radius) {
  Crafted c;
  std::vector<Ball> balls(13);
  for (int i = 0; i < 13; ++i)
    balls[i] = Ball{0, i == heavy_id ? heavy_radius : Rational(3), 1};
  c.inst = line_instance({0}, 1, balls, variant);
  c.sigma.y[base_copy(heavy_id)] = 1;
  set_base(c.sigma, heavy_id, 0, Rational(1988, 2000));
  for (int i = 0; i < 13; ++i) {
    if (i == heavy_id) continue;
    c.sigma.y[base_copy(i)] = Rational(1, 1000);
    set_base(c.sigma, i, 0, Rational(1, 2000));
  }
  return c;
}

// a point drawing more than the part-one cutoff from light balls, so it goes
// through the demand side: five light balls at the threshold opening 1/60
// plus one heavy ball carrying the rest
inline Crafted demand_heavy() {
  Crafted c;
  std::vector<Ball> balls(6, Ball{0, Rational(1), 10});
  c.inst = line_instance({0}, 1, balls, Variant::Uniform);
  c.sigma.y[base_copy(0)] = 1;
  set_base(c.sigma, 0, 0, Rational(55, 60));
  for (int i = 1; i < 6; ++i) {
    c.sigma.y[base_copy(i)] = Rational(1, 60);
    set_base(c.sigma, i, 0, Rational(1, 60));
  }
  return c;
}

// ball 61 serves both anchors (part one, where it gets opened against the
// full heavies) and the far demand point (part two, where it hosts its own
// group). its id keeps its doubled flow clear of the trim, which eats the
// sixty lowest ids, while ball 62's flow keeps the pool above the exit
// threshold until 61 is opened
inline Crafted both_sides() {
  Crafted c;
  std::vector<Ball> balls;
  balls.push_back(Ball{0, Rational(1), 1});
  balls.push_back(Ball{1, Rational(1), 1});
  for (int i = 0; i < 59; ++i) balls.push_back(Ball{2, Rational(1), 1});
  balls.push_back(Ball{3, Rational(995), 1});
  balls.push_back(Ball{2, Rational(1), 1});
  c.inst = line_instance({0, 10, 1000, 5}, 3, balls, Variant::Uniform);
  c.sigma.y[base_copy(0)] = 1;
  c.sigma.y[base_copy(1)] = 1;
  set_base(c.sigma, 0, 0, Rational(199, 200));
  set_base(c.sigma, 1, 1, Rational(199, 200));
  for (int b = 2; b <= 60; ++b) {
    c.sigma.y[base_copy(b)] = Rational(1, 60);
    set_base(c.sigma, b, 2, Rational(1, 60));
  }
  c.sigma.y[base_copy(61)] = Rational(1, 60);
  set_base(c.sigma, 61, 0, Rational(1, 200));
  set_base(c.sigma, 61, 1, Rational(1, 200));
  set_base(c.sigma, 61, 2, Rational(1, 150));
  c.sigma.y[base_copy(62)] = Rational(1, 60);
  set_base(c.sigma, 62, 2, Rational(1, 100));
  return c;
}

}  // namespace testsupport
