#include "doctest.h"

#include <set>

#include "capcover/instance.hpp"
#include "support/fixtures.hpp"

using namespace capcover;
using testsupport::line3;
using testsupport::line_instance;

TEST_CASE("metric validation names the violated axiom") {
  MetricSpace m;
  m.n = 2;
  m.dist = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  CHECK(!validate_metric(m));

  m.dist[0][0] = 1;
  CHECK(validate_metric(m)->find("self-distance") != std::string::npos);
  m.dist[0][0] = 0;

  m.dist[0][1] = 2;
  CHECK(validate_metric(m)->find("asymmetry") != std::string::npos);
  m.dist[0][1] = 1;

  m.dist[1][0] = -1;
  m.dist[0][1] = -1;
  CHECK(validate_metric(m)->find("negative") != std::string::npos);

  MetricSpace t;
  t.n = 3;
  t.dist = {{Rational(0), Rational(1), Rational(5)},
            {Rational(1), Rational(0), Rational(1)},
            {Rational(5), Rational(1), Rational(0)}};
  CHECK(validate_metric(t)->find("triangle") != std::string::npos);
}

TEST_CASE("instance validation") {
  Instance ok = line3();
  CHECK_NOTHROW(validate_instance(ok));

  SUBCASE("uniform capacities must match") {
    Instance bad = ok;
    bad.balls[1].capacity = 3;
    CHECK_THROWS_AS(validate_instance(bad), ValidationError);
  }
  SUBCASE("monotonic capacities follow radius") {
    Instance inst = ok;
    inst.variant = Variant::Monotonic;
    inst.balls[1].radius = 2;
    inst.balls[1].capacity = 1;  // larger ball, smaller capacity
    CHECK_THROWS_AS(validate_instance(inst), ValidationError);
    inst.balls[1].capacity = 2;
    CHECK_NOTHROW(validate_instance(inst));
  }
  SUBCASE("uncovered points are infeasibility, not malformed input") {
    Instance bad = ok;
    bad.balls[0].radius = Rational(1, 2);
    bad.balls[1].radius = Rational(1, 2);
    CHECK_THROWS_AS(validate_instance(bad), UncoveredPointError);
  }
  SUBCASE("field checks") {
    Instance bad = ok;
    bad.balls[0].capacity = 0;
    CHECK_THROWS_AS(validate_instance(bad), ValidationError);
    bad = ok;
    bad.balls[0].radius = -1;
    CHECK_THROWS_AS(validate_instance(bad), ValidationError);
    bad = ok;
    bad.balls[0].center = 9;
    CHECK_THROWS_AS(validate_instance(bad), ValidationError);
    bad = ok;
    bad.n_cover = 4;
    CHECK_THROWS_AS(validate_instance(bad), ValidationError);
  }
}

TEST_CASE("containment and intersection") {
  Instance inst = line3();
  CHECK(contains(inst, 0, 0, Rational(1)));
  CHECK(contains(inst, 0, 1, Rational(1)));
  CHECK(!contains(inst, 0, 2, Rational(1)));  // the far point needs expansion 2
  CHECK(contains(inst, 0, 2, Rational(2)));
  CHECK(contains(inst, 0, 2, Quad5(2)));
  CHECK(!contains(inst, 0, 2, Quad5(Rational(199, 100))));
  CHECK(covered_points_in_ball(inst, 0, Rational(1)) == std::vector<int>{0, 1});
  CHECK(covered_points_in_ball(inst, 0, Rational(2)) == std::vector<int>{0, 1, 2});
  CHECK(balls_intersect(inst, 0, 1));  // both contain the middle point
  Instance apart = line_instance(
      {0, 10}, 2, {Ball{0, Rational(1), 1}, Ball{1, Rational(1), 1}},
      Variant::Uniform);
  CHECK(!balls_intersect(apart, 0, 1));
}

TEST_CASE("file format round-trips byte for byte") {
  Instance inst = generate_random(7, 4, Variant::Monotonic, 42);
  std::string text = write_instance(inst);
  Instance back = parse_instance(text);
  CHECK(write_instance(back) == text);
  CHECK(back.n_cover == inst.n_cover);
  CHECK(back.balls.size() == inst.balls.size());

  // a reduction instance exercises the cover-count header
  Instance red = from_set_cover({{0, 1}, {1, 2}}, 3);
  std::string rtext = write_instance(red);
  CHECK(write_instance(parse_instance(rtext)) == rtext);
}

TEST_CASE("parser rejections") {
  std::string good = write_instance(line3());
  CHECK_NOTHROW(parse_instance(good));

  CHECK_THROWS_AS(parse_instance(""), ParseError);
  CHECK_THROWS_AS(parse_instance("capcover-instance v2\n"), ParseError);
  CHECK_THROWS_AS(parse_instance(good + "trailing\n"), ParseError);

  auto corrupt = [&](const std::string& from, const std::string& to) {
    std::string t = good;
    auto pos = t.find(from);
    REQUIRE(pos != std::string::npos);
    t.replace(pos, from.size(), to);
    return t;
  };
  CHECK_THROWS_AS(parse_instance(corrupt("variant uniform", "variant solid")),
                  ParseError);
  CHECK_THROWS_AS(parse_instance(corrupt("points 3", "points -1")), ParseError);
  CHECK_THROWS_AS(parse_instance(corrupt("balls 2", "balls 3")), ParseError);
  // unreduced rational in the distance matrix
  CHECK_THROWS_AS(parse_instance(corrupt("0 1 2", "0 2/2 2")), ParseError);
  // non-positive capacities never make it past the reader
  CHECK_THROWS_AS(parse_instance(corrupt("1 2 1 2", "1 2 1 0")), ParseError);
  // structural validity is enforced on load as well
  CHECK_THROWS_AS(parse_instance(corrupt("1 2 1 2", "1 2 1 5")), ValidationError);
}

TEST_CASE("random instances are valid and deterministic") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (Variant v : {Variant::Uniform, Variant::Monotonic}) {
      Instance a = generate_random(8, 5, v, seed);
      CHECK_NOTHROW(validate_instance(a));
      Instance b = generate_random(8, 5, v, seed);
      CHECK(write_instance(a) == write_instance(b));
    }
  }
  Instance u = generate_random(6, 4, Variant::Uniform, 9);
  std::set<std::int64_t> caps;
  for (const Ball& b : u.balls) caps.insert(b.capacity);
  CHECK(caps.size() == 1);
  CHECK_THROWS_AS(generate_random(0, 3, Variant::Uniform, 1), GenerationError);
}

TEST_CASE("set cover reduction") {
  // elements 0..3; sets {0,1}, {1,2}, {3}
  std::vector<std::vector<int>> sets = {{0, 1}, {1, 2}, {3}};
  Instance inst = from_set_cover(sets, 5);
  CHECK(inst.variant == Variant::Uniform);
  CHECK(inst.n_cover == 4);                 // elements need coverage
  CHECK(inst.n_points() == 4 + 3);          // plus one center per set
  CHECK(inst.n_balls() == 3);
  for (int b = 0; b < 3; ++b) {
    CHECK(inst.balls[b].capacity == 5);
    CHECK(inst.balls[b].radius == 1);
    for (int e = 0; e < 4; ++e) {
      bool member = false;
      for (int m : sets[b]) member = member || m == e;
      if (member) {
        CHECK(inst.space.d(inst.balls[b].center, e) == 1);
      } else {
        CHECK(inst.space.d(inst.balls[b].center, e) >= 3);
      }
    }
  }
  // default capacity is the element count
  Instance def = from_set_cover(sets);
  CHECK(def.balls[0].capacity == 4);
}
