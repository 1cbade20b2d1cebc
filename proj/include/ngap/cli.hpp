#pragma once

// Front-end plumbing for the ngap tool: input documents, reports, and the
// gap / oracle-suite / benchmark runners. Kept out of tools/ so it can be
// tested directly.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ngap/closed_forms.hpp"
#include "ngap/gap.hpp"
#include "ngap/metric.hpp"
#include "ngap/negtype.hpp"

namespace ngap::cli {

enum class InputKind { Matrix, EdgeList, Generator };

enum class InputFormat { Auto, Json, Csv };
InputFormat format_from_string(std::string_view s);

struct GeneratorSpec {
  /// discrete, cycle, path, star, random_tree
  std::string name;
  std::size_t n = 0;
  Vector weights{};
  std::uint64_t seed = 0;
  double w_min = 0.1;
  double w_max = 10.0;

  bool operator==(const GeneratorSpec&) const = default;
};

struct InputDocument {
  InputKind kind = InputKind::Matrix;
  std::optional<SymMatrix> matrix;
  std::optional<WeightedGraph> graph;
  std::optional<GeneratorSpec> generator;
  double p = 1.0;
  /// optional functional "u" of a matrix document (raw mode only)
  std::optional<Vector> functional;
};

/// Structured document:
///   {"n": 2, "distances": [[0,1],[1,0]], "p": 1}      (rows or flat row-major)
///   {"n": 5, "edges": [[1,2,1], [2,3,1], ...]}        (1-based ids)
///   {"cycle": 7}  {"discrete": 4}  {"path": 4}  {"path": {"weights": [2,5]}}
///   {"star": [1,2,4]}  {"random_tree": {"n": 10, "seed": 7, "w_min": 0.1, "w_max": 10}}
/// or a CSV square matrix (comma or whitespace separated, '#' comments).
/// Throws ParseError (malformed text, with line/column) and SchemaError
/// (well-formed text with the wrong shape).
InputDocument parse_input(std::string_view text, InputFormat format = InputFormat::Auto);

InputDocument generator_document(GeneratorSpec spec, double p = 1.0);

/// Graph described by a document (edge list or graph-valued generator).
std::optional<WeightedGraph> document_graph(const InputDocument& doc);
MetricSpace document_metric(const InputDocument& doc);
/// Closed-form result when the document is a family with a known formula
/// and p = 1.
std::optional<OracleResult> document_oracle(const InputDocument& doc);

struct CrossChecks {
  std::optional<double> beta_hypercube;
  std::optional<double> beta_opnorm;
  std::optional<double> beta_binary;
  std::optional<double> oracle_gamma;
  std::optional<double> oracle_beta;
  /// all computed beta values agree within 1e-8 relative
  std::optional<bool> formulas_agree;
  /// |gamma - oracle_gamma| <= 1e-9 oracle_gamma
  std::optional<bool> oracle_agree;

  bool operator==(const CrossChecks&) const = default;
};

struct Diagnostics {
  Vector projected_spectrum;
  bool nonsingular = false;
  double min_pivot_ratio = 0.0;
  std::optional<double> ainv_u_dot_u;
  std::optional<double> m;
  std::optional<Vector> z;
  bool negative_type_marginal = false;
  bool strictness_marginal = false;
  std::vector<std::string> warnings;

  bool operator==(const Diagnostics&) const = default;
};

struct InequalityCheck {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double max_scaled_slack = 0.0;
  std::optional<double> witness_residual;
  std::optional<bool> maximality_confirmed;

  bool operator==(const InequalityCheck&) const = default;
};

struct Report {
  Verdict verdict = Verdict::NotNegativeType;
  std::size_t n = 0;
  double p = 1.0;
  std::optional<double> gamma;
  std::optional<double> beta;
  std::optional<SignVector> s_star;
  std::optional<Vector> witness;
  std::string method;
  bool certified = true;
  CrossChecks cross_checks;
  Diagnostics diagnostics;
  std::optional<InequalityCheck> inequality;
  std::optional<double> wall_time;

  bool operator==(const Report&) const = default;
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
/// Machine-readable form: JSON, doubles in shortest round-trip form.
std::string emit_machine(const Report& r);
Report parse_machine(std::string_view text);
/// Human-readable form, 6 significant digits.
std::string emit_text(const Report& r);

struct RunOptions {
  GapOptions gap;
  Tolerances tols;
  bool include_witness = false;
  bool include_timing = false;
  /// random alpha trials for the gap inequality check (0 = skip)
  std::uint64_t verify_trials = 0;
  std::uint64_t seed = 1;
  /// take a matrix document as A itself (no metric checks, no exponent),
  /// with the document's "u" or the all-ones functional
  bool raw = false;
};

/// metric -> A -> classify -> (strict) B -> beta -> Gamma, witness and
/// cross-checks. Gamma = 0 for non-strict spaces, absent for spaces not of
/// negative type. Module errors propagate as ngap::Error. Raw mode skips
/// the metric checks and the inequality and oracle comparisons.
Report run_gap(const InputDocument& doc, const RunOptions& opts = {});

struct SuiteOptions {
  bool discrete = true;
  bool cycles = true;
  bool trees = true;
  std::size_t discrete_max = 12;
  std::size_t cycle_max = 15;
  std::size_t tree_count = 20;
  std::size_t tree_max_n = 12;
  std::uint64_t seed = 1;
  /// perturb one distance (tree: one edge weight) by 1e-3 in the pipeline
  /// input as a negative control
  bool inject_fault = false;
  unsigned threads = 1;
};

struct SuiteEntry {
  std::string family;
  std::string label;
  std::size_t n = 0;
  Verdict verdict = Verdict::NotNegativeType;
  double oracle_gamma = 0.0;
  std::optional<double> pipeline_gamma;
  double rel_error = 0.0;
  bool pass = false;
  std::string error;

  bool operator==(const SuiteEntry&) const = default;
};

struct SuiteReport {
  std::vector<SuiteEntry> entries;
  bool all_pass = true;
};

SuiteReport run_oracle_suite(const SuiteOptions& opts = {});
std::string emit_machine(const SuiteReport& r);
std::string emit_text(const SuiteReport& r);

struct BenchOptions {
  std::vector<std::size_t> sizes{16, 20, 24};
  std::size_t naive_max = 12;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::optional<std::uint64_t> bnb_budget;
};

struct BenchRow {
  std::size_t n = 0;
  double beta = 0.0;
  double seconds = 0.0;
};

struct NaiveRow {
  std::size_t n = 0;
  double gray_beta = 0.0;
  double naive_beta = 0.0;
  double gray_seconds = 0.0;
  double naive_seconds = 0.0;
  bool identical = false;
};

struct BnbRow {
  std::size_t n = 0;
  std::uint64_t budget = 0;
  double beta = 0.0;
  bool certified = false;
  std::uint64_t nodes = 0;
};

struct BenchReport {
  std::vector<BenchRow> enumeration;
  std::vector<NaiveRow> naive;
  std::vector<BnbRow> bnb;
};

BenchReport run_bench(const BenchOptions& opts = {});
std::string emit_text(const BenchReport& r);

/// B of the path metric of a seeded random tree (weights in [0.1, 10]).
SymMatrix random_tree_B(std::size_t n, std::uint64_t seed);

}  // namespace ngap::cli
