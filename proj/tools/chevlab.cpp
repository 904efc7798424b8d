#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <omp.h>

#include "CLI11.hpp"
#include "chevlab/verify.hpp"

using namespace chevlab;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kBudget = 3 };

int cmd_build(const std::string& ring_spec, const std::string& system, const std::string& lattice,
              const std::string& out, std::size_t cap) {
  auto ring = FiniteRing::parse(ring_spec);
  auto phi = std::make_shared<const RootSystem>(RootSystem::parse(system));
  auto rep = Representation::make(phi, parse_lattice(lattice));
  const auto t0 = std::chrono::steady_clock::now();
  auto gens = elementary_generators(*rep, *ring);
  MatrixGroupPtr g;
  try {
    g = closure(rep, ring, gens, cap);
  } catch (const BudgetExceeded& e) {
    std::cerr << "closure cap exceeded after " << e.partial() << " elements\n";
    return kBudget;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "group " << rep->label() << " over " << ring->label() << "\n"
            << "order " << g->order() << "\n"
            << "dimension " << g->dim() << "\n"
            << "generators " << gens.size() << "\n"
            << "center " << center(*g).size() << "\n"
            << "closure_ms " << ms << "\n";
  if (!out.empty()) {
    write_group_cache(out, *g);
    std::cout << "cache " << out << "\n";
  }
  return kOk;
}

int cmd_verify(const std::string& config, const std::string& out, bool strict, bool timing, bool quiet) {
  auto scenarios = load_config(config);
  Report report = run_suite(scenarios);
  const std::string jsonl = to_jsonl(report, timing);
  if (out.empty() || out == "-") {
    std::cout << jsonl;
  } else {
    std::ofstream f(out);
    if (!f) throw ConfigError("cannot write " + out, 0);
    f << jsonl;
  }
  if (!quiet) std::cerr << summary_table(report);
  if (report.count(Verdict::Fail)) return kFail;
  if (strict && report.count(Verdict::Unknown)) return kBudget;
  return kOk;
}

int cmd_eval(const std::string& cache, const std::string& formulas, std::size_t solutions, std::size_t memo) {
  auto g = read_group_cache(cache);
  Structure s(g);
  int status = kOk;
  std::size_t line = 0;
  for (const std::string& text : read_corpus(formulas)) {
    ++line;
    Formula f;
    try {
      f = parse_formula(text);
    } catch (const FormulaError& e) {
      std::cerr << formulas << ":" << line << ": " << e.what() << "\n";
      status = kUsage;
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    auto vars = free_names(f);
    Evaluator ev(s, f, vars, memo);
    std::string verdict;
    std::vector<std::vector<std::size_t>> sols;
    if (vars.empty()) {
      verdict = ev.eval({}) ? "true" : "false";
    } else {
      sols = ev.solutions();
      verdict = std::to_string(sols.size()) + " solutions";
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::cout << print(f) << "\t" << verdict << "\t" << ms << " ms\n";
    for (std::size_t k = 0; k < std::min(solutions, sols.size()); ++k) {
      std::cout << "  ";
      for (std::size_t i = 0; i < vars.size(); ++i) std::cout << (i ? " " : "") << vars[i] << "=" << sols[k][i];
      std::cout << "\n";
    }
  }
  return status;
}

int cmd_dump(const std::string& cache, const std::string& formulas, bool elements) {
  if (!cache.empty()) {
    auto g = read_group_cache(cache);
    std::cout << g->label() << " order " << g->order() << "\n";
    for (std::size_t i = 0; i < g->generator_matrices().size(); ++i)
      std::cout << "gen " << i << ": " << mat_to_line(*g->ring(), g->generator_matrices()[i]) << "\n";
    if (elements)
      for (std::size_t i = 0; i < g->order(); ++i) std::cout << i << ": " << mat_to_line(*g->ring(), g->element(i)) << "\n";
  }
  if (!formulas.empty())
    for (const std::string& text : read_corpus(formulas)) std::cout << print(parse_formula(text)) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chevlab: finite Chevalley groups, first-order checks and verification suites"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)")->check(CLI::NonNegativeNumber);

  std::string ring = "Z/2", system = "A2", lattice = "adjoint", out;
  std::size_t cap = kDefaultClosureCap;
  auto* build = app.add_subcommand("build", "enumerate E(Phi,R) and write a group cache");
  build->add_option("--ring", ring, "ring spec, e.g. Z/4 or GF(2)[t]/(t^2+t+1)");
  build->add_option("--system", system, "root system, e.g. A2");
  build->add_option("--lattice", lattice, "adjoint | sc | so6");
  build->add_option("--out,-o", out, "cache file");
  build->add_option("--cap", cap, "closure cap")->check(CLI::PositiveNumber);

  std::string config, report;
  bool strict = false, no_timing = false, quiet = false;
  auto* verify = app.add_subcommand("verify", "run a scenario suite");
  verify->add_option("config", config, "suite config")->required();
  verify->add_option("--report,-o", report, "JSONL report path (default stdout)");
  verify->add_flag("--strict", strict, "unknown verdicts exit with 3");
  verify->add_flag("--no-timing", no_timing, "omit millis fields");
  verify->add_flag("--quiet,-q", quiet, "no summary table");

  std::string cache, formulas;
  std::size_t solutions = 0, memo = kDefaultMemoBudget;
  auto* evalc = app.add_subcommand("eval", "evaluate formulas on a cached group");
  evalc->add_option("cache", cache, "group cache")->required();
  evalc->add_option("formulas", formulas, "formula file, one per line")->required();
  evalc->add_option("--solutions", solutions, "list up to k satisfying tuples");
  evalc->add_option("--memo", memo, "memo table budget");

  bool elements = false;
  auto* dump = app.add_subcommand("dump", "print cached matrices or normalised formulas");
  dump->add_option("--cache", cache, "group cache");
  dump->add_option("--formulas", formulas, "formula file");
  dump->add_flag("--elements", elements, "print every element");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  if (threads > 0) omp_set_num_threads(threads);
  try {
    if (*build) return cmd_build(ring, system, lattice, out, cap);
    if (*verify) return cmd_verify(config, report, strict, !no_timing, quiet);
    if (*evalc) return cmd_eval(cache, formulas, solutions, memo);
    if (*dump) return cmd_dump(cache, formulas, elements);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormulaError& e) {
    std::cerr << "formula error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
