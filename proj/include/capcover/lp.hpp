#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "capcover/instance.hpp"
#include "capcover/rational.hpp"

namespace capcover {

struct InfeasibleModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ball copies: the base problem uses Base; the rounding pipeline works on one
// heavy copy (H1) and two light copies (L1 over part-1 points, L2 over part-2).
enum class CopyKind { Base, H1, L1, L2 };

std::string copy_kind_name(CopyKind k);

struct CopyTag {
  CopyKind kind = CopyKind::Base;
  int ball = 0;
  auto operator<=>(const CopyTag&) const = default;
};

inline CopyTag base_copy(int ball) { return {CopyKind::Base, ball}; }

enum class Rel { LE, EQ, GE };
enum class RowKind { Open, Capacity, Serve, YBound };

struct LPRow {
  RowKind kind;
  std::vector<std::pair<int, Rational>> coef;  // (column, coefficient)
  Rel rel = Rel::LE;
  Rational rhs;
  std::string label;
};

struct VarId {
  CopyTag copy;
  int point = -1;  // -1 for the y variable of the copy
  bool is_y() const { return point < 0; }
};

std::string var_name(const VarId& v);

struct LPModel {
  std::vector<VarId> vars;  // y columns first, then x columns
  std::map<std::pair<CopyTag, int>, int> index;
  std::vector<Rational> objective;  // minimized
  std::vector<LPRow> rows;
  int n_y = 0;

  int n_cols() const { return static_cast<int>(vars.size()); }
  // -1 when the variable does not exist (pair outside every ball)
  int column(const CopyTag& copy, int point = -1) const;
  std::string dump() const;
};

// Values absent from the maps are zero.
struct FractionalSolution {
  std::map<CopyTag, Rational> y;
  std::map<std::pair<CopyTag, int>, Rational> x;

  Rational cost() const;
  Rational get_y(const CopyTag& c) const;
  Rational get_x(const CopyTag& c, int point) const;
  void set_x(const CopyTag& c, int point, const Rational& v);  // erases zeros
  void add_x(const CopyTag& c, int point, const Rational& v);
};

// Base covering relaxation: minimize sum of y subject to
//   x[i][j] <= y[i], sum_j x[i][j] <= y[i]*U[i], sum_i x[i][j] = 1,
//   x only defined for points inside the ball at expansion 1, 0 <= y <= 1.
LPModel build_mmcc_lp(const Instance& inst);

struct Aux1Spec {
  std::vector<int> heavy;             // H1 copies
  std::vector<int> light;             // L1 copies
  std::vector<int> points;            // part-1 points
  std::map<int, Rational> scaled_cap; // per ball id
};
LPModel build_aux1_model(const Instance& inst, const Aux1Spec& spec);

struct Aux2Spec {
  std::vector<int> light;             // L2 copies
  std::vector<int> points;            // part-2 points
  std::map<int, Rational> scaled_cap;
  std::map<int, Rational> demand;     // per part-2 point, serve rows are >= demand
};
LPModel build_aux2_model(const Instance& inst, const Aux2Spec& spec);

struct Violation {
  RowKind kind;
  std::string label;
  Rational amount;  // how far the constraint is exceeded / short
};

struct FeasibilityReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  // true when every violation belongs to one of the given families
  bool only(std::initializer_list<RowKind> kinds) const;
  std::string render() const;
};

FeasibilityReport check_lp_feasibility(const LPModel& model,
                                       const FractionalSolution& sol);

struct SimplexResult {
  enum class Status { Optimal, Infeasible };
  Status status = Status::Optimal;
  Rational objective;
  std::vector<Rational> values;     // per model column
  std::vector<std::string> basis;   // names of basic variables, row order
  // Infeasibility witness: one multiplier per model row; satisfies
  //   lambda >= 0 on <=-rows, lambda <= 0 on >=-rows,
  //   sum_i lambda_i * row_i has nonnegative coefficients everywhere,
  //   and sum_i lambda_i * rhs_i < 0, so no v >= 0 can satisfy the system.
  std::vector<Rational> farkas;

  FractionalSolution to_solution(const LPModel& model) const;
};

// Dense exact two-phase simplex, Bland's rule, deterministic.
SimplexResult solve_lp(const LPModel& model);

// Recomputes the basic solution for the returned basis by Gaussian
// elimination; used to confirm reproducibility bit for bit.
std::vector<Rational> solve_for_basis(const LPModel& model,
                                      const std::vector<std::string>& basis);

}  // namespace capcover
