#include "capcover/instance.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace capcover {

std::string variant_name(Variant v) {
  return v == Variant::Uniform ? "uniform" : "monotonic";
}

std::optional<Variant> variant_from_name(const std::string& s) {
  if (s == "uniform") return Variant::Uniform;
  if (s == "monotonic") return Variant::Monotonic;
  return std::nullopt;
}

std::optional<std::string> validate_metric(const MetricSpace& m) {
  int n = m.n;
  if (n < 0 || static_cast<int>(m.dist.size()) != n)
    return "distance matrix size does not match point count";
  for (int i = 0; i < n; i++)
    if (static_cast<int>(m.dist[i].size()) != n)
      return "distance matrix row " + std::to_string(i) + " has wrong length";
  for (int i = 0; i < n; i++) {
    if (m.dist[i][i] != 0)
      return "nonzero self-distance at point " + std::to_string(i);
    for (int j = 0; j < n; j++) {
      if (m.dist[i][j] < 0)
        return "negative distance at (" + std::to_string(i) + "," +
               std::to_string(j) + ")";
      if (m.dist[i][j] != m.dist[j][i])
        return "asymmetry at (" + std::to_string(i) + "," + std::to_string(j) +
               ")";
    }
  }
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++)
      for (int k = 0; k < n; k++)
        if (m.dist[i][j] > m.dist[i][k] + m.dist[k][j])
          return "triangle inequality violated at (" + std::to_string(i) +
                 "," + std::to_string(j) + "," + std::to_string(k) + ")";
  return std::nullopt;
}

void validate_instance(const Instance& inst) {
  if (auto err = validate_metric(inst.space)) throw ValidationError(*err);
  if (inst.n_points() < 1) throw ValidationError("instance has no points");
  if (inst.n_cover < 1 || inst.n_cover > inst.n_points())
    throw ValidationError("coverage point count out of range");
  if (inst.balls.empty()) throw ValidationError("instance has no balls");
  for (int b = 0; b < inst.n_balls(); b++) {
    const Ball& ball = inst.balls[b];
    if (ball.center < 0 || ball.center >= inst.n_points())
      throw ValidationError("ball " + std::to_string(b) +
                            " center out of range");
    if (ball.radius < 0)
      throw ValidationError("ball " + std::to_string(b) + " has negative radius");
    if (ball.capacity < 1)
      throw ValidationError("ball " + std::to_string(b) +
                            " has non-positive capacity");
  }
  if (inst.variant == Variant::Uniform) {
    for (const Ball& b : inst.balls)
      if (b.capacity != inst.balls[0].capacity)
        throw ValidationError("uniform variant requires equal capacities");
  } else {
    std::vector<int> order(inst.balls.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return inst.balls[x].radius < inst.balls[y].radius;
    });
    for (size_t i = 1; i < order.size(); i++) {
      const Ball& prev = inst.balls[order[i - 1]];
      const Ball& cur = inst.balls[order[i]];
      if (cur.capacity < prev.capacity)
        throw ValidationError(
            "monotonic variant violated: larger ball with smaller capacity "
            "(balls " + std::to_string(order[i - 1]) + "," +
            std::to_string(order[i]) + ")");
    }
  }
  Rational one(1);
  for (int p = 0; p < inst.n_cover; p++) {
    bool covered = false;
    for (int b = 0; b < inst.n_balls() && !covered; b++)
      covered = contains(inst, b, p, one);
    if (!covered)
      throw UncoveredPointError("point " + std::to_string(p) +
                                " is not covered by any ball at expansion 1");
  }
}

bool contains(const Instance& inst, int ball, int point, const Rational& beta) {
  const Ball& b = inst.balls[ball];
  return inst.space.d(b.center, point) <= beta * b.radius;
}

bool contains(const Instance& inst, int ball, int point, const Quad5& beta) {
  const Ball& b = inst.balls[ball];
  return Quad5(inst.space.d(b.center, point)) <= beta * Quad5(b.radius);
}

std::vector<int> covered_points_in_ball(const Instance& inst, int ball,
                                        const Rational& beta) {
  std::vector<int> out;
  for (int p = 0; p < inst.n_cover; p++)
    if (contains(inst, ball, p, beta)) out.push_back(p);
  return out;
}

bool balls_intersect(const Instance& inst, int b1, int b2) {
  Rational one(1);
  for (int p = 0; p < inst.n_points(); p++)
    if (contains(inst, b1, p, one) && contains(inst, b2, p, one)) return true;
  return false;
}

namespace {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  return n == 0 ? 0 : rng() % n;  // bias is irrelevant here, determinism is not
}

}  // namespace

Instance generate_random(int n_points, int n_balls, Variant variant,
                         std::uint64_t seed) {
  if (n_points < 1 || n_balls < 1)
    throw GenerationError("need at least one point and one ball");
  std::mt19937_64 rng(seed);
  long grid = 4L * n_points;

  std::vector<std::pair<long, long>> pts(n_points);
  for (auto& p : pts)
    p = {static_cast<long>(bounded(rng, grid)),
         static_cast<long>(bounded(rng, grid))};

  Instance inst;
  inst.variant = variant;
  inst.space.n = n_points;
  inst.n_cover = n_points;
  inst.space.dist.assign(n_points, std::vector<Rational>(n_points));
  for (int i = 0; i < n_points; i++)
    for (int j = 0; j < n_points; j++)
      inst.space.dist[i][j] = Rational(std::abs(pts[i].first - pts[j].first) +
                                       std::abs(pts[i].second - pts[j].second));

  std::vector<int> center(n_balls), home(n_points);
  for (int b = 0; b < n_balls; b++)
    center[b] = static_cast<int>(bounded(rng, n_points));
  for (int p = 0; p < n_points; p++)
    home[p] = static_cast<int>(bounded(rng, n_balls));

  // every point sits inside its home ball, which makes coverage and
  // feasibility structural rather than a retry loop
  std::vector<Rational> radius(n_balls);
  std::vector<std::int64_t> load(n_balls, 0);
  for (int b = 0; b < n_balls; b++)
    radius[b] = Rational(1 + static_cast<long>(bounded(rng, grid / 4 + 1)));
  for (int p = 0; p < n_points; p++) {
    load[home[p]]++;
    const Rational& d = inst.space.dist[center[home[p]]][p];
    if (radius[home[p]] < d) radius[home[p]] = d;
  }

  inst.balls.resize(n_balls);
  for (int b = 0; b < n_balls; b++) {
    inst.balls[b].center = center[b];
    inst.balls[b].radius = radius[b];
  }

  if (variant == Variant::Uniform) {
    std::int64_t maxload = 1;
    for (auto l : load) maxload = std::max(maxload, l);
    std::int64_t cap = maxload + static_cast<std::int64_t>(bounded(rng, 3));
    for (auto& b : inst.balls) b.capacity = cap;
  } else {
    std::vector<int> order(n_balls);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return radius[x] < radius[y];
    });
    std::int64_t running = 0;
    size_t i = 0;
    while (i < order.size()) {
      size_t j = i;
      std::int64_t need = 1;
      while (j < order.size() && radius[order[j]] == radius[order[i]]) {
        need = std::max(need, load[order[j]]);
        j++;
      }
      running = std::max(running, need) + static_cast<std::int64_t>(bounded(rng, 2));
      for (size_t k = i; k < j; k++) inst.balls[order[k]].capacity = running;
      i = j;
    }
  }

  validate_instance(inst);
  return inst;
}

Instance from_set_cover(const std::vector<std::vector<int>>& sets,
                        std::int64_t capacity) {
  if (sets.empty()) throw GenerationError("set system has no sets");
  int n_el = 0;
  for (const auto& s : sets)
    for (int e : s) {
      if (e < 0) throw GenerationError("negative element id");
      n_el = std::max(n_el, e + 1);
    }
  if (n_el == 0) throw GenerationError("set system has no elements");
  std::vector<bool> seen(n_el, false);
  for (const auto& s : sets)
    for (int e : s) seen[e] = true;
  for (int e = 0; e < n_el; e++)
    if (!seen[e])
      throw GenerationError("element " + std::to_string(e) +
                            " belongs to no set");

  int n_sets = static_cast<int>(sets.size());
  int n = n_el + n_sets;  // elements first, then one center per set
  const int INF = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, INF));
  for (int i = 0; i < n; i++) d[i][i] = 0;
  for (int s = 0; s < n_sets; s++)
    for (int e : sets[s]) d[n_el + s][e] = d[e][n_el + s] = 1;
  for (int k = 0; k < n; k++)
    for (int i = 0; i < n; i++) {
      if (d[i][k] == INF) continue;
      for (int j = 0; j < n; j++)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    }
  int diameter = 0;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++)
      if (d[i][j] != INF) diameter = std::max(diameter, d[i][j]);
  int far = std::max(3, diameter);  // disconnected components, if any
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++)
      if (d[i][j] == INF) d[i][j] = far;

  Instance inst;
  inst.variant = Variant::Uniform;
  inst.space.n = n;
  inst.n_cover = n_el;
  inst.space.dist.assign(n, std::vector<Rational>(n));
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) inst.space.dist[i][j] = Rational(d[i][j]);

  std::int64_t cap = capacity > 0 ? capacity : n_el;
  inst.balls.resize(n_sets);
  for (int s = 0; s < n_sets; s++)
    inst.balls[s] = Ball{n_el + s, Rational(1), cap};

  validate_instance(inst);
  return inst;
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "capcover-instance v1\n";
  out << "variant " << variant_name(inst.variant) << "\n";
  out << "points " << inst.n_points() << "\n";
  if (inst.n_cover != inst.n_points()) out << "cover " << inst.n_cover << "\n";
  out << "dist\n";
  for (int i = 0; i < inst.n_points(); i++) {
    for (int j = 0; j < inst.n_points(); j++) {
      if (j) out << ' ';
      out << format_rational(inst.space.dist[i][j]);
    }
    out << '\n';
  }
  out << "balls " << inst.n_balls() << "\n";
  for (int b = 0; b < inst.n_balls(); b++)
    out << b << ' ' << inst.balls[b].center << ' '
        << format_rational(inst.balls[b].radius) << ' '
        << inst.balls[b].capacity << '\n';
  return out.str();
}

namespace {

struct LineReader {
  std::istringstream in;
  int lineno = 0;
  explicit LineReader(const std::string& text) : in(text) {}

  std::string next() {
    std::string line;
    if (!std::getline(in, line))
      throw ParseError("unexpected end of file at line " +
                       std::to_string(lineno + 1));
    lineno++;
    return line;
  }
  bool at_end() {
    return in.peek() == std::char_traits<char>::eof();
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg);
  }
};

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long parse_count(LineReader& r, const std::string& tok, long lo, long hi,
                 const std::string& what) {
  try {
    size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size()) r.fail("bad " + what + ": '" + tok + "'");
    if (v < lo || v > hi) r.fail(what + " out of range: " + tok);
    return v;
  } catch (const std::logic_error&) {
    r.fail("bad " + what + ": '" + tok + "'");
  }
}

}  // namespace

Instance parse_instance(const std::string& text) {
  LineReader r(text);
  if (r.next() != "capcover-instance v1") r.fail("bad header");
  auto vtoks = split_ws(r.next());
  if (vtoks.size() != 2 || vtoks[0] != "variant") r.fail("expected variant line");
  auto variant = variant_from_name(vtoks[1]);
  if (!variant) r.fail("unknown variant '" + vtoks[1] + "'");

  auto ptoks = split_ws(r.next());
  if (ptoks.size() != 2 || ptoks[0] != "points") r.fail("expected points line");
  int n = static_cast<int>(parse_count(r, ptoks[1], 1, 100000, "point count"));

  std::string line = r.next();
  int n_cover = n;
  auto ctoks = split_ws(line);
  if (!ctoks.empty() && ctoks[0] == "cover") {
    if (ctoks.size() != 2) r.fail("bad cover line");
    n_cover = static_cast<int>(parse_count(r, ctoks[1], 1, n, "cover count"));
    line = r.next();
  }
  if (line != "dist") r.fail("expected dist line");

  Instance inst;
  inst.variant = *variant;
  inst.space.n = n;
  inst.n_cover = n_cover;
  inst.space.dist.assign(n, std::vector<Rational>(n));
  for (int i = 0; i < n; i++) {
    auto toks = split_ws(r.next());
    if (static_cast<int>(toks.size()) != n)
      r.fail("distance row has " + std::to_string(toks.size()) +
             " entries, expected " + std::to_string(n));
    for (int j = 0; j < n; j++) {
      auto q = parse_rational_strict(toks[j]);
      if (!q) r.fail("non-canonical rational '" + toks[j] + "'");
      inst.space.dist[i][j] = *q;
    }
  }

  auto btoks = split_ws(r.next());
  if (btoks.size() != 2 || btoks[0] != "balls") r.fail("expected balls line");
  int m = static_cast<int>(parse_count(r, btoks[1], 1, 100000, "ball count"));
  inst.balls.resize(m);
  for (int b = 0; b < m; b++) {
    auto toks = split_ws(r.next());
    if (toks.size() != 4) r.fail("ball line needs: id center radius capacity");
    if (parse_count(r, toks[0], b, b, "ball id") != b) r.fail("bad ball id");
    inst.balls[b].center =
        static_cast<int>(parse_count(r, toks[1], 0, n - 1, "ball center"));
    auto rad = parse_rational_strict(toks[2]);
    if (!rad || *rad < 0) r.fail("bad radius '" + toks[2] + "'");
    inst.balls[b].radius = *rad;
    inst.balls[b].capacity = parse_count(r, toks[3], 1, (1L << 40), "capacity");
  }
  while (!r.at_end()) {
    if (!split_ws(r.next()).empty()) r.fail("trailing content");
  }

  validate_instance(inst);
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << write_instance(inst);
}

}  // namespace capcover
