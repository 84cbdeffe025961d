#include "capcover/solution.hpp"

#include <fstream>
#include <sstream>

namespace capcover {

namespace {

[[noreturn]] void bad_line(int lineno, const std::string& msg) {
  throw ParseError("solution line " + std::to_string(lineno) + ": " + msg);
}

}  // namespace

std::string write_solution(const Solution& sol) {
  std::ostringstream os;
  os << "capcover-solution v1\n";
  os << "open";
  for (const auto& [ball, f] : sol.open)
    os << ' ' << ball << ':' << format_expansion(f);
  os << "\n";
  for (const auto& [key, v] : sol.x) {
    if (v == 0) continue;
    os << "assign " << key.second << ' ' << key.first;
    if (v != 1) os << ' ' << format_rational(v);
    os << "\n";
  }
  return os.str();
}

Solution parse_solution(const std::string& text) {
  Solution sol;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "capcover-solution v1")
        bad_line(lineno, "expected header 'capcover-solution v1'");
      saw_header = true;
      continue;
    }
    std::istringstream ls(line);
    std::string verb;
    ls >> verb;
    if (verb == "open") {
      std::string tok;
      while (ls >> tok) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) bad_line(lineno, "open needs ball:factor pairs");
        int ball = -1;
        try {
          size_t pos = 0;
          ball = std::stoi(tok.substr(0, colon), &pos);
          if (pos != colon || ball < 0) throw std::invalid_argument("");
        } catch (...) {
          bad_line(lineno, "bad ball id");
        }
        auto f = parse_expansion(tok.substr(colon + 1));
        if (!f) bad_line(lineno, "bad expansion factor '" + tok.substr(colon + 1) + "'");
        if (sol.open.count(ball)) bad_line(lineno, "duplicate open ball");
        sol.open[ball] = *f;
      }
    } else if (verb == "assign") {
      std::string ptok, btok, vtok, rest;
      if (!(ls >> ptok >> btok)) bad_line(lineno, "assign needs point and ball");
      bool has_v = static_cast<bool>(ls >> vtok);
      if (ls >> rest) bad_line(lineno, "trailing content");
      int point, ball;
      try {
        size_t pos = 0;
        point = std::stoi(ptok, &pos);
        if (pos != ptok.size() || point < 0) throw std::invalid_argument("");
        ball = std::stoi(btok, &pos);
        if (pos != btok.size() || ball < 0) throw std::invalid_argument("");
      } catch (...) {
        bad_line(lineno, "bad point or ball id");
      }
      Rational v(1);
      if (has_v) {
        auto r = parse_rational_strict(vtok);
        if (!r || *r <= 0 || *r >= 1)
          bad_line(lineno, "fractional amount must be a rational in (0,1)");
        v = *r;
      }
      if (sol.x.count({ball, point})) bad_line(lineno, "duplicate assignment");
      sol.x[{ball, point}] = v;
    } else {
      bad_line(lineno, "unknown directive '" + verb + "'");
    }
  }
  if (!saw_header) throw ParseError("solution: missing header");
  return sol;
}

Solution load_solution(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_solution(buf.str());
}

void save_solution(const Solution& sol, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << write_solution(sol);
}

}  // namespace capcover
