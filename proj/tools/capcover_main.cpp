#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capcover/assignment.hpp"
#include "capcover/instance.hpp"
#include "capcover/lp.hpp"
#include "capcover/oracle.hpp"
#include "capcover/rounding.hpp"
#include "capcover/solution.hpp"
#include "capcover/trace.hpp"
#include "capcover/verify.hpp"

namespace {

using namespace capcover;

constexpr int EXIT_VERIFY = 1;
constexpr int EXIT_USAGE = 2;
constexpr int EXIT_INFEASIBLE = 3;

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<std::vector<int>> read_set_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<std::vector<int>> sets;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<int> set;
    std::string tok;
    while (ls >> tok) {
      try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size() || v < 0) throw std::invalid_argument("");
        set.push_back(v);
      } catch (...) {
        throw ParseError(path + " line " + std::to_string(lineno) +
                         ": bad element '" + tok + "'");
      }
    }
    if (set.empty())
      throw ParseError(path + " line " + std::to_string(lineno) + ": empty set");
    sets.push_back(set);
  }
  if (sets.empty()) throw ParseError(path + ": no sets");
  return sets;
}

struct GenerateArgs {
  int points = 12;
  int balls = 6;
  std::string variant = "uniform";
  std::uint64_t seed = 1;
  std::string from_setcover;
  std::int64_t capacity = 0;
  std::string output;
};

int run_generate(const GenerateArgs& a) {
  Instance inst;
  if (!a.from_setcover.empty()) {
    inst = from_set_cover(read_set_system(a.from_setcover), a.capacity);
  } else {
    auto v = variant_from_name(a.variant);
    if (!v) {
      std::cerr << "error: unknown variant '" << a.variant << "'\n";
      return EXIT_USAGE;
    }
    inst = generate_random(a.points, a.balls, *v, a.seed);
  }
  std::string text = write_instance(inst);
  if (a.output.empty()) {
    std::cout << text;
  } else {
    write_text_file(a.output, text);
    std::cout << "wrote " << a.output << " (" << inst.n_points() << " points, "
              << inst.n_balls() << " balls, " << variant_name(inst.variant) << ")\n";
  }
  return 0;
}

struct SolveArgs {
  std::string instance;
  std::string output;
  std::string trace_path;
  std::string dump_lp;
  std::string alpha = "1/60";
};

int run_solve(const SolveArgs& a) {
  auto alpha = parse_rational_strict(a.alpha);
  if (!alpha || *alpha <= 0) {
    std::cerr << "error: --alpha must be a positive rational in canonical form\n";
    return EXIT_USAGE;
  }
  Instance inst = load_instance(a.instance);
  LPModel model = build_mmcc_lp(inst);
  if (!a.dump_lp.empty()) write_text_file(a.dump_lp, model.dump());

  SimplexResult lp = solve_lp(model);
  if (lp.status == SimplexResult::Status::Infeasible) {
    std::cerr << "infeasible: no fractional cover exists for this instance\n";
    std::cerr << "certificate multipliers (nonzero rows):\n";
    for (size_t i = 0; i < lp.farkas.size(); ++i)
      if (lp.farkas[i] != 0)
        std::cerr << "  " << model.rows[i].label << ": "
                  << format_rational(lp.farkas[i]) << "\n";
    return EXIT_INFEASIBLE;
  }

  FractionalSolution sigma = lp.to_solution(model);
  PipelineConfig cfg = PipelineConfig::with_alpha(*alpha);
  PipelineResult pr = run_pipeline(inst, sigma, cfg);
  pr.trace.lp_basis = lp.basis;

  FlowResult flow = integralize(inst, pr.rounded.solution);
  if (!flow.complete) {
    std::cerr << "error: rounded solution admits no integral assignment\n";
    return EXIT_VERIFY;
  }
  Solution integral;
  integral.open = pr.rounded.solution.open;
  for (const auto& [point, ball] : flow.assignment)
    integral.x[{ball, point}] = 1;

  Quad5 limit = expansion_limit(inst.variant);
  VerificationReport sol_rep = check_solution(inst, integral, limit, true);
  VerificationReport frac_rep =
      check_solution(inst, pr.rounded.solution, limit, false);
  VerificationReport trace_rep = check_trace(pr.trace, sigma.cost());

  std::string text = write_solution(integral);
  if (a.output.empty())
    std::cout << text;
  else
    write_text_file(a.output, text);
  if (!a.trace_path.empty()) write_text_file(a.trace_path, pr.trace.render());

  std::ostream& os = std::cout;
  os << "variant            " << variant_name(inst.variant) << "\n";
  os << "points/balls       " << inst.n_cover << "/" << inst.n_balls() << "\n";
  os << "fractional cost    " << format_rational(sigma.cost()) << "\n";
  os << "heavy/light        " << pr.thresh.heavy.size() << "/"
     << pr.thresh.light.size() << "\n";
  os << "opened balls       " << integral.open.size() << "\n";
  os << "expansion limit    " << format_expansion(limit) << "\n";
  os << "largest expansion  " << format_expansion(sol_rep.max_expansion) << " ("
     << std::setprecision(6) << sol_rep.max_expansion.approx() << ")\n";
  os << "integral checks:\n" << sol_rep.render();
  os << "fractional checks:\n" << frac_rep.render();
  os << "trace checks:\n" << trace_rep.render();

  bool ok = sol_rep.ok() && frac_rep.ok() && trace_rep.ok();
  os << (ok ? "verified\n" : "verification FAILED\n");
  return ok ? 0 : EXIT_VERIFY;
}

struct CompareArgs {
  std::vector<std::string> paths;
  std::string csv;
  int budget = 18;
  std::string alpha = "1/60";
};

std::vector<std::string> collect_instances(const std::vector<std::string>& paths) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> here;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".inst")
          here.push_back(e.path().string());
      std::sort(here.begin(), here.end());
      files.insert(files.end(), here.begin(), here.end());
    } else {
      files.push_back(p);
    }
  }
  return files;
}

int run_compare(const CompareArgs& a) {
  auto alpha = parse_rational_strict(a.alpha);
  if (!alpha || *alpha <= 0) {
    std::cerr << "error: --alpha must be a positive rational in canonical form\n";
    return EXIT_USAGE;
  }
  auto files = collect_instances(a.paths);
  std::ostringstream csv;
  csv << "file,variant,points,balls,lp_cost,optimal,greedy,rounded,max_expansion,verified\n";
  std::cout << std::left << std::setw(28) << "file" << std::right << std::setw(7)
            << "points" << std::setw(7) << "balls" << std::setw(10) << "lp"
            << std::setw(6) << "opt" << std::setw(8) << "greedy" << std::setw(9)
            << "rounded" << std::setw(10) << "max_exp" << std::setw(7) << "ok"
            << "\n";
  bool all_ok = true;
  for (const auto& file : files) {
    std::string name = std::filesystem::path(file).filename().string();
    std::string variant = "-", lp_cost = "-";
    std::string opt = "-", greedy = "-", rounded = "-", maxexp = "-";
    int points = 0, balls = 0;
    bool ok = false;
    try {
      Instance inst = load_instance(file);
      variant = variant_name(inst.variant);
      points = inst.n_cover;
      balls = inst.n_balls();
      LPModel model = build_mmcc_lp(inst);
      SimplexResult lp = solve_lp(model);
      if (lp.status == SimplexResult::Status::Optimal) {
        lp_cost = format_rational(lp.objective);
        try {
          auto best = optimal_cover(inst, Rational(1), a.budget);
          if (best) opt = std::to_string(best->size);
        } catch (const OracleBudgetError&) {
          opt = "?";
        }
        auto g = greedy_cover(inst, Rational(1));
        if (g) greedy = std::to_string(g->size);
        FractionalSolution sigma = lp.to_solution(model);
        PipelineResult pr =
            run_pipeline(inst, sigma, PipelineConfig::with_alpha(*alpha));
        FlowResult flow = integralize(inst, pr.rounded.solution);
        Solution integral;
        integral.open = pr.rounded.solution.open;
        for (const auto& [point, ball] : flow.assignment)
          integral.x[{ball, point}] = 1;
        Quad5 limit = expansion_limit(inst.variant);
        VerificationReport rep = check_solution(inst, integral, limit, true);
        VerificationReport trep = check_trace(pr.trace, sigma.cost());
        ok = flow.complete && rep.ok() && trep.ok();
        rounded = std::to_string(integral.open.size());
        std::ostringstream me;
        me << std::setprecision(4) << rep.max_expansion.approx();
        maxexp = me.str();
      } else {
        lp_cost = "infeasible";
      }
    } catch (const std::exception& e) {
      maxexp = "error";
    }
    all_ok = all_ok && ok;
    std::cout << std::left << std::setw(28) << name << std::right << std::setw(7)
              << points << std::setw(7) << balls << std::setw(10) << lp_cost
              << std::setw(6) << opt << std::setw(8) << greedy << std::setw(9)
              << rounded << std::setw(10) << maxexp << std::setw(7)
              << (ok ? "yes" : "NO") << "\n";
    csv << name << ',' << variant << ',' << points << ',' << balls << ','
        << lp_cost << ',' << opt << ',' << greedy << ',' << rounded << ','
        << maxexp << ',' << (ok ? "yes" : "no") << "\n";
  }
  if (!a.csv.empty()) write_text_file(a.csv, csv.str());
  return all_ok ? 0 : EXIT_VERIFY;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric capacitated covering: exact LP rounding toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "produce an instance file");
  g->add_option("--points", gen.points, "number of points")->check(CLI::Range(1, 200));
  g->add_option("--balls", gen.balls, "number of balls")->check(CLI::Range(1, 200));
  g->add_option("--variant", gen.variant, "uniform or monotonic");
  g->add_option("--seed", gen.seed, "random seed");
  g->add_option("--from-setcover", gen.from_setcover,
                "build the instance from a set system file (one set per line)");
  g->add_option("--capacity", gen.capacity,
                "capacity for the set-cover reduction (default: element count)");
  g->add_option("-o,--output", gen.output, "output path (default stdout)");

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "solve the relaxation and round it");
  s->add_option("instance", sol.instance, "instance file")->required();
  s->add_option("-o,--output", sol.output, "solution path (default stdout)");
  s->add_option("--trace", sol.trace_path, "write the rounding trace here");
  s->add_option("--dump-lp", sol.dump_lp, "write the exact model here");
  s->add_option("--alpha", sol.alpha, "threshold parameter (default 1/60)");

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "table of bounds across instances");
  c->add_option("paths", cmp.paths, "instance files or directories")->required();
  c->add_option("--csv", cmp.csv, "also write the table as CSV");
  c->add_option("--budget", cmp.budget, "exhaustive search budget (max balls)");
  c->add_option("--alpha", cmp.alpha, "threshold parameter (default 1/60)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : EXIT_USAGE;
  }

  try {
    if (g->parsed()) return run_generate(gen);
    if (s->parsed()) return run_solve(sol);
    if (c->parsed()) return run_compare(cmp);
  } catch (const InfeasibleModelError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return EXIT_INFEASIBLE;
  } catch (const UncoveredPointError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return EXIT_INFEASIBLE;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_USAGE;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_USAGE;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_USAGE;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_USAGE;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_VERIFY;
  }
  return EXIT_USAGE;
}
