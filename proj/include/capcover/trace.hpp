#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "capcover/rational.hpp"

namespace capcover {

// Cluster-formation and selection log. Events carry enough exact data to
// replay the capacity-credit accounting without the instance at hand.
struct TraceEvent {
  enum class Kind { Drop, Absorb, Open, Select, DropFlow };
  Kind kind = Kind::Drop;

  // Drop / Absorb / Open share these
  int light = -1;
  int heavy = -1;
  Rational flow;                        // absorb: amount moved

  // Open
  Rational k;                           // service credit of the opened ball
  Rational f_total;                     // flow pulled from heavy balls
  std::map<int, Rational> f_by_heavy;   // breakdown per heavy ball
  std::map<int, Rational> ac_after;     // available capacity snapshot

  // Select
  int cluster = -1;
  std::string case_name;                // "1", "2i", "2ii"
  std::vector<int> balls;
  std::vector<Quad5> factors;

  // DropFlow
  int point = -1;
  Rational amount;
};

struct Trace {
  Rational alpha;
  std::vector<std::string> lp_basis;
  std::vector<int> h1;
  std::map<int, Rational> l1_ybar;      // initial opening values of light copies
  std::vector<TraceEvent> events;
  std::optional<Rational> final_cost;
  std::optional<long> final_open;

  int open_count() const;
  std::string render() const;
  static Trace parse(const std::string& text);  // throws ParseError
};

}  // namespace capcover
