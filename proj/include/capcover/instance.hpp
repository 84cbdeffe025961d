#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "capcover/rational.hpp"

namespace capcover {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// an instance that is well formed but cannot cover all its points; callers
// treat this as infeasibility rather than a usage mistake
struct UncoveredPointError : ValidationError {
  using ValidationError::ValidationError;
};
struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Variant { Uniform, Monotonic };

std::string variant_name(Variant v);
std::optional<Variant> variant_from_name(const std::string& s);

struct Ball {
  int center = 0;        // index into the metric space
  Rational radius;       // >= 0
  std::int64_t capacity = 1;
};

struct MetricSpace {
  int n = 0;
  std::vector<std::vector<Rational>> dist;  // n x n

  const Rational& d(int i, int j) const { return dist[i][j]; }
};

// Coverage is required for points 0..n_cover-1; the remaining points are
// metric-space locations only (ball centers from the set-cover reduction).
struct Instance {
  Variant variant = Variant::Uniform;
  MetricSpace space;
  std::vector<Ball> balls;
  int n_cover = 0;

  int n_points() const { return space.n; }
  int n_balls() const { return static_cast<int>(balls.size()); }
};

// nullopt when the three metric axioms hold; otherwise a message naming the
// first violated axiom and its witness indices.
std::optional<std::string> validate_metric(const MetricSpace& m);

// Full structural validation: metric axioms, ball fields, capacity pattern of
// the variant, and coverage of every coverage point at expansion 1.
// Throws ValidationError.
void validate_instance(const Instance& inst);

bool contains(const Instance& inst, int ball, int point, const Rational& beta);
bool contains(const Instance& inst, int ball, int point, const Quad5& beta);

// Coverage points inside the ball at the given expansion, ascending.
std::vector<int> covered_points_in_ball(const Instance& inst, int ball,
                                        const Rational& beta);

// Do two balls share at least one metric-space point?
bool balls_intersect(const Instance& inst, int b1, int b2);

Instance generate_random(int n_points, int n_balls, Variant variant,
                         std::uint64_t seed);

// Builds the covering instance of a set system over elements 0..max_element.
// capacity <= 0 selects the default (number of elements).
Instance from_set_cover(const std::vector<std::vector<int>>& sets,
                        std::int64_t capacity = 0);

std::string write_instance(const Instance& inst);
Instance parse_instance(const std::string& text);  // throws ParseError/ValidationError
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

}  // namespace capcover
