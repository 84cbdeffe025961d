#pragma once

#include <map>
#include <string>

#include "capcover/instance.hpp"
#include "capcover/rational.hpp"

namespace capcover {

// A covering solution: open balls with the expansion factor each one is
// entitled to, plus point flows. Integral solutions have x values in {0,1}.
struct Solution {
  std::map<int, Quad5> open;                      // ball -> expansion factor
  std::map<std::pair<int, int>, Rational> x;      // (ball, point) -> flow

  Rational cost() const { return Rational(static_cast<long>(open.size())); }
  Rational get_x(int ball, int point) const {
    auto it = x.find({ball, point});
    return it == x.end() ? Rational(0) : it->second;
  }
  bool integral() const {
    for (auto& [k, v] : x)
      if (v != 0 && v != 1) return false;
    return true;
  }
};

std::string write_solution(const Solution& sol);
Solution parse_solution(const std::string& text);
Solution load_solution(const std::string& path);
void save_solution(const Solution& sol, const std::string& path);

}  // namespace capcover
