// ngap: negative-type classification and gap computation for finite metric
// spaces.
//
//   ngap gap [FILE] [options]     classify and compute the gap
//   ngap oracle [options]         pipeline vs closed forms regression
//   ngap bench [options]          enumeration timings
//
// Exit codes: 0 ok, 2 parse, 3 not a metric, 4 negative-type hypothesis
// failure, 5 too large, 6 oracle mismatch, 1 other.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ngap/cli.hpp"
#include "ngap/errors.hpp"

namespace {

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") return read_all(std::cin);
  std::ifstream f(path);
  if (!f) throw ngap::Error(ngap::ErrorCode::ParseError, "cannot open '" + path + "'");
  return read_all(f);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ngap;
  CLI::App app{"Negative-type classification and gap computation for finite metric spaces"};
  app.require_subcommand(1);

  // gap ---------------------------------------------------------------------
  auto* gap = app.add_subcommand("gap", "classify a metric space and compute its p-negative type gap");
  std::string input_path;
  std::string format = "auto";
  std::optional<double> p;
  std::string method = "all";
  std::size_t max_n = 24;
  std::optional<double> tol, singular_tol, strict_tol, eig_tol;
  std::string report_kind = "text";
  std::uint64_t seed = 1;
  bool witness = false;
  bool bnb = false;
  std::uint64_t bnb_budget = 50'000'000;
  unsigned threads = 0;
  std::uint64_t verify = 0;
  bool timing = false;
  bool raw = false;
  std::optional<std::size_t> gen_discrete_n, gen_cycle_n, gen_path_n, gen_tree_n;
  std::vector<double> gen_star_w;
  std::uint64_t tree_seed = 1;
  double w_min = 0.1;
  double w_max = 10.0;

  gap->add_option("input", input_path, "input file (JSON document or CSV matrix); '-' or omitted reads stdin");
  gap->add_option("--format", format, "input format")->check(CLI::IsMember({"auto", "json", "csv"}));
  gap->add_option("--p", p, "exponent p >= 0 (default 1, or the document's p)");
  gap->add_option("--method", method, "beta formula(s)")->check(CLI::IsMember({"enumerate", "opnorm", "binary", "all"}));
  gap->add_option("--max-n", max_n, "largest n for exhaustive enumeration");
  gap->add_option("--tol", tol, "override all three relative tolerances");
  gap->add_option("--singular-tol", singular_tol, "pivot threshold relative to max|A| (default 1e-10)");
  gap->add_option("--strict-tol", strict_tol, "(A^-1 1|1) zero test, relative (default 1e-9)");
  gap->add_option("--eig-tol", eig_tol, "projected eigenvalue threshold, relative (default 1e-9)");
  gap->add_option("--report", report_kind, "output form")->check(CLI::IsMember({"text", "machine"}));
  gap->add_option("--seed", seed, "seed for randomized checks");
  gap->add_flag("--witness", witness, "include the extremal witness y0");
  gap->add_flag("--bnb", bnb, "use branch and bound above --max-n");
  gap->add_option("--bnb-budget", bnb_budget, "branch-and-bound node budget");
  gap->add_option("--threads", threads, "enumeration threads (0 = all cores)");
  gap->add_option("--verify", verify, "random trials of the gap inequality (0 = skip)");
  gap->add_flag("--timing", timing, "include wall time in the report");
  gap->add_flag("--raw", raw, "treat a matrix document as A itself (optional \"u\" field, default all-ones)");
  auto* g1 = gap->add_option("--discrete", gen_discrete_n, "generate the n-point discrete space");
  auto* g2 = gap->add_option("--cycle", gen_cycle_n, "generate the n-cycle with its path metric");
  auto* g3 = gap->add_option("--path", gen_path_n, "generate the unit path on n vertices");
  auto* g4 = gap->add_option("--star", gen_star_w, "generate a star with the given edge weights")->delimiter(',');
  auto* g5 = gap->add_option("--random-tree", gen_tree_n, "generate a random tree on n vertices");
  g1->excludes(g2, g3, g4, g5);
  g2->excludes(g3, g4, g5);
  g3->excludes(g4, g5);
  g4->excludes(g5);
  gap->add_option("--tree-seed", tree_seed, "seed for --random-tree");
  gap->add_option("--w-min", w_min, "smallest random edge weight");
  gap->add_option("--w-max", w_max, "largest random edge weight");

  // oracle ------------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "compare the pipeline against closed forms");
  std::string family = "all";
  cli::SuiteOptions suite;
  std::string oracle_report = "text";
  oracle->add_option("--family", family, "families to run")->check(CLI::IsMember({"all", "discrete", "cycles", "trees"}));
  oracle->add_option("--seed", suite.seed, "seed for random trees");
  oracle->add_option("--trees", suite.tree_count, "number of random trees");
  oracle->add_option("--tree-max-n", suite.tree_max_n, "largest random tree");
  oracle->add_option("--discrete-max", suite.discrete_max, "largest discrete space");
  oracle->add_option("--cycle-max", suite.cycle_max, "largest cycle");
  oracle->add_flag("--inject-fault", suite.inject_fault, "perturb one distance by 1e-3 (negative control)");
  oracle->add_option("--report", oracle_report, "output form")->check(CLI::IsMember({"text", "machine"}));
  oracle->add_option("--threads", suite.threads, "enumeration threads");

  // bench -------------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "time the hypercube enumeration");
  cli::BenchOptions bopts;
  std::optional<std::uint64_t> bench_budget;
  bench->add_option("--sizes", bopts.sizes, "enumeration sizes")->delimiter(',');
  bench->add_option("--naive-max", bopts.naive_max, "largest n for the naive comparison");
  bench->add_option("--seed", bopts.seed, "seed for the random trees");
  bench->add_option("--threads", bopts.threads, "enumeration threads (0 = all cores)");
  bench->add_option("--bnb-budget", bench_budget, "also run branch and bound at n = 20 with this node budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*gap) {
      cli::InputDocument doc;
      if (gen_discrete_n) {
        doc = cli::generator_document({.name = "discrete", .n = *gen_discrete_n});
      } else if (gen_cycle_n) {
        doc = cli::generator_document({.name = "cycle", .n = *gen_cycle_n});
      } else if (gen_path_n) {
        doc = cli::generator_document({.name = "path", .n = *gen_path_n});
      } else if (!gen_star_w.empty()) {
        doc = cli::generator_document({"star", gen_star_w.size() + 1, gen_star_w});
      } else if (gen_tree_n) {
        doc = cli::generator_document({"random_tree", *gen_tree_n, {}, tree_seed, w_min, w_max});
      } else {
        doc = cli::parse_input(read_input(input_path), cli::format_from_string(format));
      }
      if (p) doc.p = *p;

      cli::RunOptions ro;
      ro.gap.method = method_from_string(method);
      ro.gap.enumeration.max_enum_n = max_n;
      ro.gap.enumeration.threads = threads;
      ro.gap.bnb = bnb;
      ro.gap.bnb_budget = bnb_budget;
      if (tol) ro.tols.singular = ro.tols.strict = ro.tols.eig = *tol;
      if (singular_tol) ro.tols.singular = *singular_tol;
      if (strict_tol) ro.tols.strict = *strict_tol;
      if (eig_tol) ro.tols.eig = *eig_tol;
      ro.include_witness = witness;
      ro.include_timing = timing;
      ro.verify_trials = verify;
      ro.seed = seed;
      ro.raw = raw;

      const cli::Report r = cli::run_gap(doc, ro);
      std::cout << (report_kind == "machine" ? cli::emit_machine(r) : cli::emit_text(r));
      for (const auto& w : r.diagnostics.warnings) std::cerr << "warning: " << w << "\n";
      if (r.cross_checks.formulas_agree && !*r.cross_checks.formulas_agree) {
        std::cerr << "warning: beta formulas disagree beyond 1e-8 relative\n";
      }
      return 0;
    }
    if (*oracle) {
      suite.discrete = family == "all" || family == "discrete";
      suite.cycles = family == "all" || family == "cycles";
      suite.trees = family == "all" || family == "trees";
      const cli::SuiteReport r = cli::run_oracle_suite(suite);
      std::cout << (oracle_report == "machine" ? cli::emit_machine(r) : cli::emit_text(r));
      return r.all_pass ? 0 : exit_code(ErrorCode::OracleMismatch);
    }
    if (*bench) {
      bopts.bnb_budget = bench_budget;
      std::cout << cli::emit_text(cli::run_bench(bopts));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
