#include <algorithm>
#include <sstream>

#include "capcover/lp.hpp"

namespace capcover {

std::string copy_kind_name(CopyKind k) {
  switch (k) {
    case CopyKind::Base: return "b";
    case CopyKind::H1: return "H1:b";
    case CopyKind::L1: return "L1:b";
    case CopyKind::L2: return "L2:b";
  }
  return "?";
}

std::string var_name(const VarId& v) {
  std::string c = copy_kind_name(v.copy.kind) + std::to_string(v.copy.ball);
  if (v.is_y()) return "y[" + c + "]";
  return "x[" + c + ",p" + std::to_string(v.point) + "]";
}

int LPModel::column(const CopyTag& copy, int point) const {
  auto it = index.find({copy, point});
  return it == index.end() ? -1 : it->second;
}

std::string LPModel::dump() const {
  std::ostringstream out;
  out << "min";
  for (int c = 0; c < n_cols(); c++)
    if (objective[c] != 0)
      out << " + " << format_rational(objective[c]) << "*" << var_name(vars[c]);
  out << "\n";
  for (const LPRow& row : rows) {
    out << row.label << ":";
    for (auto& [c, q] : row.coef)
      out << " + " << format_rational(q) << "*" << var_name(vars[c]);
    out << (row.rel == Rel::LE ? " <= " : row.rel == Rel::EQ ? " = " : " >= ");
    out << format_rational(row.rhs) << "\n";
  }
  return out.str();
}

Rational FractionalSolution::cost() const {
  Rational s(0);
  for (auto& [c, v] : y) s += v;
  return s;
}

Rational FractionalSolution::get_y(const CopyTag& c) const {
  auto it = y.find(c);
  return it == y.end() ? Rational(0) : it->second;
}

Rational FractionalSolution::get_x(const CopyTag& c, int point) const {
  auto it = x.find({c, point});
  return it == x.end() ? Rational(0) : it->second;
}

void FractionalSolution::set_x(const CopyTag& c, int point, const Rational& v) {
  if (v == 0)
    x.erase({c, point});
  else
    x[{c, point}] = v;
}

void FractionalSolution::add_x(const CopyTag& c, int point, const Rational& v) {
  set_x(c, point, get_x(c, point) + v);
}

namespace {

struct ModelBuilder {
  LPModel model;

  int add_var(const VarId& v, const Rational& obj) {
    int col = model.n_cols();
    model.vars.push_back(v);
    model.index[{v.copy, v.point}] = col;
    model.objective.push_back(obj);
    if (v.is_y()) model.n_y++;
    return col;
  }

  void add_row(RowKind kind, std::vector<std::pair<int, Rational>> coef,
               Rel rel, Rational rhs, std::string label) {
    model.rows.push_back(
        {kind, std::move(coef), rel, std::move(rhs), std::move(label)});
  }
};

std::string copy_label(const CopyTag& c) {
  return copy_kind_name(c.kind) + std::to_string(c.ball);
}

// Shared assembly for base and auxiliary models. Serve rows are equalities at
// rhs 1 unless demands are given (then >= demand).
LPModel build_model(const Instance& inst,
                    const std::vector<CopyTag>& copies,
                    const std::vector<int>& points,
                    const std::map<int, Rational>* cap_override,
                    const std::map<int, Rational>* demand) {
  ModelBuilder b;
  for (const CopyTag& c : copies)
    b.add_var({c, -1}, Rational(1));
  for (const CopyTag& c : copies)
    for (int p : points)
      if (contains(inst, c.ball, p, Rational(1)))
        b.add_var({c, p}, Rational(0));

  for (const CopyTag& c : copies) {
    int yc = b.model.column(c);
    std::vector<std::pair<int, Rational>> caprow{{yc, Rational(0)}};
    Rational cap = cap_override ? cap_override->at(c.ball)
                                : Rational(inst.balls[c.ball].capacity);
    caprow[0].second = -cap;
    for (int p : points) {
      int xc = b.model.column(c, p);
      if (xc < 0) continue;
      b.add_row(RowKind::Open, {{xc, Rational(1)}, {yc, Rational(-1)}}, Rel::LE,
                Rational(0), "open " + copy_label(c) + " p" + std::to_string(p));
      caprow.push_back({xc, Rational(1)});
    }
    b.add_row(RowKind::Capacity, std::move(caprow), Rel::LE, Rational(0),
              "cap " + copy_label(c));
    b.add_row(RowKind::YBound, {{yc, Rational(1)}}, Rel::LE, Rational(1),
              "ybound " + copy_label(c));
  }

  for (int p : points) {
    std::vector<std::pair<int, Rational>> row;
    for (const CopyTag& c : copies) {
      int xc = b.model.column(c, p);
      if (xc >= 0) row.push_back({xc, Rational(1)});
    }
    if (row.empty())
      throw InfeasibleModelError("point " + std::to_string(p) +
                                 " lies in no ball at expansion 1");
    if (demand)
      b.add_row(RowKind::Serve, std::move(row), Rel::GE, demand->at(p),
                "serve p" + std::to_string(p));
    else
      b.add_row(RowKind::Serve, std::move(row), Rel::EQ, Rational(1),
                "serve p" + std::to_string(p));
  }
  return std::move(b.model);
}

}  // namespace

LPModel build_mmcc_lp(const Instance& inst) {
  std::vector<CopyTag> copies;
  for (int i = 0; i < inst.n_balls(); i++) copies.push_back(base_copy(i));
  std::vector<int> points(inst.n_cover);
  for (int p = 0; p < inst.n_cover; p++) points[p] = p;
  return build_model(inst, copies, points, nullptr, nullptr);
}

LPModel build_aux1_model(const Instance& inst, const Aux1Spec& spec) {
  std::vector<CopyTag> copies;
  for (int i : spec.heavy) copies.push_back({CopyKind::H1, i});
  for (int i : spec.light) copies.push_back({CopyKind::L1, i});
  return build_model(inst, copies, spec.points, &spec.scaled_cap, nullptr);
}

LPModel build_aux2_model(const Instance& inst, const Aux2Spec& spec) {
  std::vector<CopyTag> copies;
  for (int i : spec.light) copies.push_back({CopyKind::L2, i});
  return build_model(inst, copies, spec.points, &spec.scaled_cap, &spec.demand);
}

bool FeasibilityReport::only(std::initializer_list<RowKind> kinds) const {
  for (const Violation& v : violations) {
    bool found = false;
    for (RowKind k : kinds) found = found || v.kind == k;
    if (!found) return false;
  }
  return true;
}

std::string FeasibilityReport::render() const {
  if (ok()) return "feasible\n";
  std::ostringstream out;
  for (const Violation& v : violations)
    out << v.label << " violated by " << format_rational(v.amount) << "\n";
  return out.str();
}

FeasibilityReport check_lp_feasibility(const LPModel& model,
                                       const FractionalSolution& sol) {
  FeasibilityReport rep;
  std::vector<Rational> val(model.n_cols(), Rational(0));
  for (auto& [c, v] : sol.y) {
    int col = model.column(c);
    if (col < 0) {
      if (v != 0)
        rep.violations.push_back(
            {RowKind::YBound, "unknown variable y[" + copy_label(c) + "]", v});
      continue;
    }
    val[col] = v;
  }
  for (auto& [key, v] : sol.x) {
    int col = model.column(key.first, key.second);
    if (col < 0) {
      // a pair outside the model means flow served beyond expansion 1
      if (v != 0)
        rep.violations.push_back({RowKind::Open,
                                  "coverage x[" + copy_label(key.first) + ",p" +
                                      std::to_string(key.second) + "]",
                                  v});
      continue;
    }
    val[col] = v;
  }
  for (int c = 0; c < model.n_cols(); c++)
    if (val[c] < 0)
      rep.violations.push_back(
          {RowKind::YBound, "negative " + var_name(model.vars[c]), -val[c]});

  for (const LPRow& row : model.rows) {
    Rational lhs(0);
    for (auto& [c, q] : row.coef) lhs += q * val[c];
    Rational slack = row.rhs - lhs;  // >= 0 means satisfied for LE
    bool bad = (row.rel == Rel::LE && slack < 0) ||
               (row.rel == Rel::GE && slack > 0) ||
               (row.rel == Rel::EQ && slack != 0);
    if (bad)
      rep.violations.push_back({row.kind, row.label, abs(slack)});
  }
  return rep;
}

}  // namespace capcover
