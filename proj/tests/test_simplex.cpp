#include "doctest.h"

#include "capcover/instance.hpp"
#include "capcover/lp.hpp"
#include "support/fixtures.hpp"
#include "support/lp_oracle.hpp"

using namespace capcover;
using testsupport::line3;

TEST_CASE("line3 optimum is 2") {
  // the leftmost point is reachable only from ball 0, so y0 = 1; by symmetry
  // the rightmost forces y1 = 1
  LPModel m = build_mmcc_lp(line3());
  SimplexResult r = solve_lp(m);
  REQUIRE(r.status == SimplexResult::Status::Optimal);
  CHECK(r.objective == 2);
  CHECK(check_lp_feasibility(m, r.to_solution(m)).ok());
  CHECK(testsupport::project_min_cost(m) == Rational(2));
  CHECK(testsupport::full_min_cost(m) == Rational(2));
}

TEST_CASE("fractional optima are exact rationals") {
  // three points under two interchangeable balls of capacity 2: the capacity
  // rows force y0 + y1 >= 3/2, attained by splitting every point in half
  Instance inst = testsupport::line_instance(
      {0, 1, 2}, 3,
      {Ball{1, Rational(1), 2}, Ball{1, Rational(1), 2}}, Variant::Uniform);
  LPModel m = build_mmcc_lp(inst);
  SimplexResult r = solve_lp(m);
  REQUIRE(r.status == SimplexResult::Status::Optimal);
  CHECK(r.objective == Rational(3, 2));
  CHECK(check_lp_feasibility(m, r.to_solution(m)).ok());
  CHECK(testsupport::project_min_cost(m) == Rational(3, 2));
}

TEST_CASE("infeasible model yields a checkable witness") {
  // one ball, two points, capacity 1: total supply cannot reach demand 2
  Instance inst = testsupport::line_instance(
      {0, 1}, 2, {Ball{0, Rational(1), 1}}, Variant::Uniform);
  LPModel m = build_mmcc_lp(inst);
  SimplexResult r = solve_lp(m);
  REQUIRE(r.status == SimplexResult::Status::Infeasible);
  REQUIRE(r.farkas.size() == m.rows.size());

  // the multipliers certify that no nonnegative point satisfies the rows
  Rational rhs_combo = 0;
  std::vector<Rational> coef(m.n_cols(), Rational(0));
  for (size_t i = 0; i < m.rows.size(); ++i) {
    const LPRow& row = m.rows[i];
    const Rational& lam = r.farkas[i];
    if (row.rel == Rel::LE) CHECK(lam >= 0);
    if (row.rel == Rel::GE) CHECK(lam <= 0);
    for (const auto& [c, q] : row.coef) coef[c] += lam * q;
    rhs_combo += lam * row.rhs;
  }
  for (const Rational& c : coef) CHECK(c >= 0);
  CHECK(rhs_combo < 0);

  CHECK(!testsupport::project_min_cost(m).has_value());
  CHECK(!testsupport::full_min_cost(m).has_value());
}

TEST_CASE("reported basis reproduces the solution") {
  LPModel m = build_mmcc_lp(generate_random(6, 4, Variant::Monotonic, 11));
  SimplexResult r = solve_lp(m);
  REQUIRE(r.status == SimplexResult::Status::Optimal);
  REQUIRE(!r.basis.empty());
  CHECK(solve_for_basis(m, r.basis) == r.values);
}

TEST_CASE("simplex agrees with vertex enumeration on random models") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Variant v = seed % 2 ? Variant::Monotonic : Variant::Uniform;
    Instance inst = generate_random(4 + seed % 4, 3 + seed % 3, v, 100 + seed);
    LPModel m = build_mmcc_lp(inst);
    SimplexResult r = solve_lp(m);
    REQUIRE(r.status == SimplexResult::Status::Optimal);
    auto proj = testsupport::project_min_cost(m);
    REQUIRE(proj.has_value());
    CHECK(*proj == r.objective);
    ++checked;
    if (m.n_cols() <= 7) {
      auto full = testsupport::full_min_cost(m);
      REQUIRE(full.has_value());
      CHECK(*full == r.objective);
    }
  }
  CHECK(checked == 12);
}

TEST_CASE("deterministic resolution") {
  LPModel m = build_mmcc_lp(generate_random(7, 5, Variant::Uniform, 21));
  SimplexResult a = solve_lp(m);
  SimplexResult b = solve_lp(m);
  CHECK(a.objective == b.objective);
  CHECK(a.values == b.values);
  CHECK(a.basis == b.basis);
}
