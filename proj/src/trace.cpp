#include "capcover/trace.hpp"

#include <sstream>

#include "capcover/instance.hpp"

namespace capcover {

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

std::string join_factors(const std::vector<Quad5>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << format_expansion(v[i]);
  }
  return os.str();
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_char(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

struct TraceLineError {
  static ParseError at(int lineno, const std::string& msg) {
    return ParseError("trace line " + std::to_string(lineno) + ": " + msg);
  }
};

// key=value with a fixed expected key
std::string field(const std::string& tok, const std::string& key, int lineno) {
  auto eq = tok.find('=');
  if (eq == std::string::npos || tok.substr(0, eq) != key)
    throw TraceLineError::at(lineno, "expected " + key + "=..., got '" + tok + "'");
  return tok.substr(eq + 1);
}

int parse_id(const std::string& s, int lineno) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size() || v < 0) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw TraceLineError::at(lineno, "bad id '" + s + "'");
  }
}

Rational parse_rat(const std::string& s, int lineno) {
  auto r = parse_rational_strict(s);
  if (!r) throw TraceLineError::at(lineno, "bad rational '" + s + "'");
  return *r;
}

}  // namespace

int Trace::open_count() const {
  int n = 0;
  for (const auto& e : events)
    if (e.kind == TraceEvent::Kind::Open) ++n;
  return n;
}

std::string Trace::render() const {
  std::ostringstream os;
  os << "capcover-trace v1\n";
  os << "alpha " << format_rational(alpha) << "\n";
  for (const auto& name : lp_basis) os << "lpbasis " << name << "\n";
  os << "h1";
  for (int i : h1) os << ' ' << i;
  os << "\n";
  for (const auto& [ball, val] : l1_ybar)
    os << "l1ybar ball=" << ball << " value=" << format_rational(val) << "\n";
  for (const auto& e : events) {
    switch (e.kind) {
      case TraceEvent::Kind::Drop:
        os << "drop light=" << e.light << "\n";
        break;
      case TraceEvent::Kind::Absorb:
        os << "absorb heavy=" << e.heavy << " light=" << e.light
           << " flow=" << format_rational(e.flow) << "\n";
        break;
      case TraceEvent::Kind::Open:
        os << "open light=" << e.light << " k=" << format_rational(e.k)
           << " F=" << format_rational(e.f_total) << "\n";
        for (const auto& [h, amt] : e.f_by_heavy)
          os << "flowfrom heavy=" << h << " amount=" << format_rational(amt) << "\n";
        for (const auto& [h, ac] : e.ac_after)
          os << "ac heavy=" << h << " value=" << format_rational(ac) << "\n";
        break;
      case TraceEvent::Kind::Select:
        os << "select cluster=" << e.cluster << " case=" << e.case_name
           << " balls=" << join_ints(e.balls)
           << " factors=" << join_factors(e.factors) << "\n";
        break;
      case TraceEvent::Kind::DropFlow:
        os << "dropflow point=" << e.point
           << " amount=" << format_rational(e.amount) << "\n";
        break;
    }
  }
  if (final_cost && final_open)
    os << "final cost=" << format_rational(*final_cost) << " open=" << *final_open
       << "\n";
  return os.str();
}

Trace Trace::parse(const std::string& text) {
  Trace tr;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool saw_header = false, saw_alpha = false, saw_h1 = false;
  TraceEvent* last_open = nullptr;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  while (next_line()) {
    if (!saw_header) {
      if (line != "capcover-trace v1")
        throw TraceLineError::at(lineno, "expected header 'capcover-trace v1'");
      saw_header = true;
      continue;
    }
    auto toks = split_ws(line);
    const std::string& verb = toks[0];
    auto want = [&](size_t n) {
      if (toks.size() != n)
        throw TraceLineError::at(lineno, "expected " + std::to_string(n - 1) +
                                             " fields after '" + verb + "'");
    };
    if (verb == "alpha") {
      want(2);
      tr.alpha = parse_rat(toks[1], lineno);
      saw_alpha = true;
    } else if (verb == "lpbasis") {
      auto sp = line.find(' ');
      if (sp == std::string::npos)
        throw TraceLineError::at(lineno, "lpbasis needs a name");
      tr.lp_basis.push_back(line.substr(sp + 1));
    } else if (verb == "h1") {
      for (size_t i = 1; i < toks.size(); ++i)
        tr.h1.push_back(parse_id(toks[i], lineno));
      saw_h1 = true;
    } else if (verb == "l1ybar") {
      want(3);
      int ball = parse_id(field(toks[1], "ball", lineno), lineno);
      tr.l1_ybar[ball] = parse_rat(field(toks[2], "value", lineno), lineno);
    } else if (verb == "drop") {
      want(2);
      TraceEvent e;
      e.kind = TraceEvent::Kind::Drop;
      e.light = parse_id(field(toks[1], "light", lineno), lineno);
      tr.events.push_back(e);
      last_open = nullptr;
    } else if (verb == "absorb") {
      want(4);
      TraceEvent e;
      e.kind = TraceEvent::Kind::Absorb;
      e.heavy = parse_id(field(toks[1], "heavy", lineno), lineno);
      e.light = parse_id(field(toks[2], "light", lineno), lineno);
      e.flow = parse_rat(field(toks[3], "flow", lineno), lineno);
      tr.events.push_back(e);
      last_open = nullptr;
    } else if (verb == "open") {
      want(4);
      TraceEvent e;
      e.kind = TraceEvent::Kind::Open;
      e.light = parse_id(field(toks[1], "light", lineno), lineno);
      e.k = parse_rat(field(toks[2], "k", lineno), lineno);
      e.f_total = parse_rat(field(toks[3], "F", lineno), lineno);
      tr.events.push_back(e);
      last_open = &tr.events.back();
    } else if (verb == "flowfrom") {
      want(3);
      if (!last_open)
        throw TraceLineError::at(lineno, "flowfrom outside an open block");
      int h = parse_id(field(toks[1], "heavy", lineno), lineno);
      last_open->f_by_heavy[h] = parse_rat(field(toks[2], "amount", lineno), lineno);
    } else if (verb == "ac") {
      want(3);
      if (!last_open)
        throw TraceLineError::at(lineno, "ac outside an open block");
      int h = parse_id(field(toks[1], "heavy", lineno), lineno);
      last_open->ac_after[h] = parse_rat(field(toks[2], "value", lineno), lineno);
    } else if (verb == "select") {
      want(5);
      TraceEvent e;
      e.kind = TraceEvent::Kind::Select;
      e.cluster = parse_id(field(toks[1], "cluster", lineno), lineno);
      e.case_name = field(toks[2], "case", lineno);
      if (e.case_name != "1" && e.case_name != "2i" && e.case_name != "2ii")
        throw TraceLineError::at(lineno, "unknown case '" + e.case_name + "'");
      for (const auto& part : split_char(field(toks[3], "balls", lineno), ','))
        e.balls.push_back(parse_id(part, lineno));
      for (const auto& part : split_char(field(toks[4], "factors", lineno), ',')) {
        auto f = parse_expansion(part);
        if (!f) throw TraceLineError::at(lineno, "bad factor '" + part + "'");
        e.factors.push_back(*f);
      }
      if (e.balls.size() != e.factors.size())
        throw TraceLineError::at(lineno, "balls/factors length mismatch");
      tr.events.push_back(e);
      last_open = nullptr;
    } else if (verb == "dropflow") {
      want(3);
      TraceEvent e;
      e.kind = TraceEvent::Kind::DropFlow;
      e.point = parse_id(field(toks[1], "point", lineno), lineno);
      e.amount = parse_rat(field(toks[2], "amount", lineno), lineno);
      tr.events.push_back(e);
      last_open = nullptr;
    } else if (verb == "final") {
      want(3);
      tr.final_cost = parse_rat(field(toks[1], "cost", lineno), lineno);
      tr.final_open = parse_id(field(toks[2], "open", lineno), lineno);
      last_open = nullptr;
    } else {
      throw TraceLineError::at(lineno, "unknown directive '" + verb + "'");
    }
  }
  if (!saw_header) throw ParseError("trace: missing header");
  if (!saw_alpha) throw ParseError("trace: missing alpha line");
  if (!saw_h1) throw ParseError("trace: missing h1 line");
  return tr;
}

}  // namespace capcover
