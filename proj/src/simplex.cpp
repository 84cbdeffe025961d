#include <algorithm>
#include <cassert>
#include <sstream>

#include "capcover/lp.hpp"

namespace capcover {

namespace {

struct StandardForm {
  // rows: a.v = rhs with rhs >= 0, v >= 0; columns: model, then slack/surplus,
  // then artificial.
  int n_model = 0, n_total = 0;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> rhs;
  std::vector<int> flip;            // +1/-1 applied to the original row
  std::vector<int> slack_col;       // per row, -1 if none
  std::vector<int> art_col;         // per row, -1 if none
  std::vector<std::string> col_name;
};

StandardForm standardize(const LPModel& model) {
  StandardForm sf;
  int m = static_cast<int>(model.rows.size());
  sf.n_model = model.n_cols();
  sf.a.assign(m, {});
  sf.rhs.resize(m);
  sf.flip.assign(m, 1);
  sf.slack_col.assign(m, -1);
  sf.art_col.assign(m, -1);
  for (int c = 0; c < sf.n_model; c++) sf.col_name.push_back(var_name(model.vars[c]));

  int next = sf.n_model;
  std::vector<Rel> rel(m);
  for (int i = 0; i < m; i++) {
    rel[i] = model.rows[i].rel;
    sf.rhs[i] = model.rows[i].rhs;
    if (sf.rhs[i] < 0) {
      sf.rhs[i] = -sf.rhs[i];
      sf.flip[i] = -1;
      if (rel[i] == Rel::LE) rel[i] = Rel::GE;
      else if (rel[i] == Rel::GE) rel[i] = Rel::LE;
    }
    if (rel[i] != Rel::EQ) {
      sf.slack_col[i] = next++;
      sf.col_name.push_back("slack:" + model.rows[i].label);
    }
    if (rel[i] != Rel::LE) {
      sf.art_col[i] = next++;
      sf.col_name.push_back("art:" + model.rows[i].label);
    }
  }
  sf.n_total = next;
  for (int i = 0; i < m; i++) {
    sf.a[i].assign(sf.n_total, Rational(0));
    for (auto& [c, q] : model.rows[i].coef) sf.a[i][c] += sf.flip[i] * q;
    if (sf.slack_col[i] >= 0)
      sf.a[i][sf.slack_col[i]] = (rel[i] == Rel::LE) ? 1 : -1;
    if (sf.art_col[i] >= 0) sf.a[i][sf.art_col[i]] = 1;
  }
  return sf;
}

struct Tableau {
  std::vector<std::vector<Rational>> a;  // active rows
  std::vector<Rational> rhs;
  std::vector<int> basis;   // per active row: basic column
  std::vector<Rational> cost1, cost2;    // reduced-cost rows (phase 1, 2)
  Rational obj1{0}, obj2{0};
  int n_total = 0;

  void pivot(int row, int col) {
    Rational pv = a[row][col];
    for (auto& v : a[row]) v /= pv;
    rhs[row] /= pv;
    for (size_t r = 0; r < a.size(); r++) {
      if (static_cast<int>(r) == row) continue;
      Rational f = a[r][col];
      if (f == 0) continue;
      for (int c = 0; c < n_total; c++)
        if (a[row][c] != 0) a[r][c] -= f * a[row][c];
      rhs[r] -= f * rhs[row];
    }
    auto fold = [&](std::vector<Rational>& cost, Rational& obj) {
      Rational f = cost[col];
      if (f == 0) return;
      for (int c = 0; c < n_total; c++)
        if (a[row][c] != 0) cost[c] -= f * a[row][c];
      obj -= f * rhs[row];
    };
    fold(cost1, obj1);
    fold(cost2, obj2);
    basis[row] = col;
  }

  // Bland: entering = smallest column with negative reduced cost; leaving =
  // min-ratio row, ties broken by smallest basic column. allowed(col) guards
  // phase 2 from re-entering artificial columns.
  template <class Allowed>
  bool optimize(std::vector<Rational>& cost, Allowed allowed) {
    for (;;) {
      int enter = -1;
      for (int c = 0; c < n_total; c++)
        if (allowed(c) && cost[c] < 0) { enter = c; break; }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (size_t r = 0; r < a.size(); r++) {
        if (a[r][enter] <= 0) continue;
        Rational ratio = rhs[r] / a[r][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[r] < basis[leave]))
          { leave = static_cast<int>(r); best = ratio; }
      }
      if (leave < 0) return false;  // unbounded direction
      pivot(leave, enter);
    }
  }
};

}  // namespace

SimplexResult solve_lp(const LPModel& model) {
  StandardForm sf = standardize(model);
  int m = static_cast<int>(sf.a.size());

  Tableau t;
  t.n_total = sf.n_total;
  t.a = sf.a;
  t.rhs = sf.rhs;
  t.basis.resize(m);
  t.cost1.assign(sf.n_total, Rational(0));
  t.cost2.assign(sf.n_total, Rational(0));
  for (int c = 0; c < sf.n_model; c++) t.cost2[c] = model.objective[c];

  std::vector<bool> is_art(sf.n_total, false);
  for (int i = 0; i < m; i++) {
    if (sf.art_col[i] >= 0) {
      is_art[sf.art_col[i]] = true;
      t.basis[i] = sf.art_col[i];
      t.cost1[sf.art_col[i]] = 1;
    } else {
      t.basis[i] = sf.slack_col[i];
    }
  }
  // price out the artificial basis from the phase-1 cost row
  for (int i = 0; i < m; i++) {
    if (sf.art_col[i] < 0) continue;
    for (int c = 0; c < sf.n_total; c++) t.cost1[c] -= t.a[i][c];
    t.obj1 -= t.rhs[i];
  }

  bool ok = t.optimize(t.cost1, [](int) { return true; });
  if (!ok) throw std::logic_error("phase 1 unbounded");

  SimplexResult res;
  if (t.obj1 != 0) {
    res.status = SimplexResult::Status::Infeasible;
    // duals: y_i = c_basis - reduced cost on the row's own slack/artificial unit column
    res.farkas.resize(m);
    for (int i = 0; i < m; i++) {
      Rational y;
      if (sf.art_col[i] >= 0)
        y = Rational(1) - t.cost1[sf.art_col[i]];
      else {
        Rational unit = (t.cost1[sf.slack_col[i]]);
        // slack column of a LE row is +e_i, of a flipped GE row it is -e_i
        // (sign already baked into the matrix); recover y from redcost = -y * s
        int sgn = sf.a[i][sf.slack_col[i]] > 0 ? 1 : -1;
        // careful: sf.a holds the *initial* matrix, untouched by pivots
        y = -unit * sgn;
      }
      res.farkas[i] = -y * sf.flip[i];
    }
    // verify the certificate against the original rows
    std::vector<Rational> comb(model.n_cols(), Rational(0));
    Rational combrhs(0);
    for (int i = 0; i < m; i++) {
      const LPRow& row = model.rows[i];
      if (row.rel == Rel::LE && res.farkas[i] < 0)
        throw std::logic_error("farkas sign error on <= row");
      if (row.rel == Rel::GE && res.farkas[i] > 0)
        throw std::logic_error("farkas sign error on >= row");
      for (auto& [c, q] : row.coef) comb[c] += res.farkas[i] * q;
      combrhs += res.farkas[i] * row.rhs;
    }
    for (const Rational& q : comb)
      if (q < 0) throw std::logic_error("farkas combination not nonnegative");
    if (combrhs >= 0) throw std::logic_error("farkas rhs not negative");
    return res;
  }

  // drive basic artificials out; drop genuinely redundant rows
  for (int i = static_cast<int>(t.a.size()) - 1; i >= 0; i--) {
    if (!is_art[t.basis[i]]) continue;
    int piv = -1;
    for (int c = 0; c < sf.n_total && piv < 0; c++)
      if (!is_art[c] && t.a[i][c] != 0) piv = c;
    if (piv >= 0) {
      t.pivot(i, piv);
    } else {
      t.a.erase(t.a.begin() + i);
      t.rhs.erase(t.rhs.begin() + i);
      t.basis.erase(t.basis.begin() + i);
    }
  }

  ok = t.optimize(t.cost2, [&](int c) { return !is_art[c]; });
  if (!ok) throw std::logic_error("objective unbounded below");

  // certify optimality: no admissible reduced cost is negative
  for (int c = 0; c < sf.n_total; c++)
    if (!is_art[c] && t.cost2[c] < 0)
      throw std::logic_error("termination without optimality certificate");

  res.status = SimplexResult::Status::Optimal;
  res.objective = t.obj2 == 0 ? Rational(0) : -t.obj2;
  res.values.assign(model.n_cols(), Rational(0));
  for (size_t r = 0; r < t.a.size(); r++) {
    if (t.basis[r] < model.n_cols()) res.values[t.basis[r]] = t.rhs[r];
    res.basis.push_back(sf.col_name[t.basis[r]]);
  }
  Rational check(0);
  for (int c = 0; c < model.n_cols(); c++) check += model.objective[c] * res.values[c];
  if (check != res.objective)
    throw std::logic_error("objective mismatch against basic solution");
  return res;
}

FractionalSolution SimplexResult::to_solution(const LPModel& model) const {
  FractionalSolution s;
  for (int c = 0; c < model.n_cols(); c++) {
    if (values[c] == 0) continue;
    const VarId& v = model.vars[c];
    if (v.is_y())
      s.y[v.copy] = values[c];
    else
      s.x[{v.copy, v.point}] = values[c];
  }
  return s;
}

std::vector<Rational> solve_for_basis(const LPModel& model,
                                      const std::vector<std::string>& basis) {
  StandardForm sf = standardize(model);
  int m = static_cast<int>(sf.a.size());
  std::vector<int> cols;
  for (const std::string& name : basis) {
    int found = -1;
    for (int c = 0; c < sf.n_total && found < 0; c++)
      if (sf.col_name[c] == name) found = c;
    if (found < 0) throw std::invalid_argument("unknown basis column " + name);
    cols.push_back(found);
  }
  int k = static_cast<int>(cols.size());
  // gaussian elimination on the m x k system restricted to basis columns
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(k + 1));
  for (int i = 0; i < m; i++) {
    for (int j = 0; j < k; j++) a[i][j] = sf.a[i][cols[j]];
    a[i][k] = sf.rhs[i];
  }
  std::vector<int> where(k, -1);
  int row = 0;
  for (int col = 0; col < k && row < m; col++) {
    int sel = -1;
    for (int i = row; i < m && sel < 0; i++)
      if (a[i][col] != 0) sel = i;
    if (sel < 0) continue;
    std::swap(a[sel], a[row]);
    for (int i = 0; i < m; i++) {
      if (i == row) continue;
      if (a[i][col] == 0) continue;
      Rational f = a[i][col] / a[row][col];
      for (int j = col; j <= k; j++) a[i][j] -= f * a[row][j];
    }
    where[col] = row++;
  }
  for (int i = row; i < m; i++)
    if (a[i][k] != 0) throw std::invalid_argument("basis system inconsistent");
  std::vector<Rational> full(sf.n_total, Rational(0));
  for (int j = 0; j < k; j++) {
    if (where[j] < 0) continue;  // free at zero
    full[cols[j]] = a[where[j]][k] / a[where[j]][j];
  }
  return std::vector<Rational>(full.begin(), full.begin() + model.n_cols());
}

}  // namespace capcover
