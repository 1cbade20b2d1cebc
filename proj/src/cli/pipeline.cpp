#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "ngap/cli.hpp"
#include "ngap/errors.hpp"

namespace ngap::cli {

using nlohmann::json;

namespace {

bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

}  // namespace

Report run_gap(const InputDocument& doc, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  std::optional<MetricSpace> x;
  std::optional<NegTypeMatrix> a_storage;
  if (opts.raw) {
    if (doc.kind != InputKind::Matrix) throw Error(ErrorCode::SchemaError, "raw mode needs a matrix document");
    const std::size_t n = doc.matrix->size();
    a_storage = raw_matrix(*doc.matrix, doc.functional.value_or(Vector(n, 1.0)));
  } else {
    x = document_metric(doc);
    a_storage = power_matrix(*x, doc.p);
  }
  const NegTypeMatrix& a = *a_storage;

  Report r;
  r.n = a.a.size();
  r.p = doc.p;
  if (x) r.diagnostics.warnings = x->warnings();

  const NegTypeReport nr = classify(a, opts.tols);
  r.verdict = nr.verdict;
  Diagnostics& d = r.diagnostics;
  d.projected_spectrum = nr.projected_spectrum;
  d.nonsingular = nr.nonsingular;
  d.min_pivot_ratio = nr.min_pivot_ratio;
  d.ainv_u_dot_u = nr.ainv_u_dot_u;
  d.m = nr.m;
  d.z = nr.z;
  d.negative_type_marginal = nr.negative_type_marginal;
  d.strictness_marginal = nr.strictness_marginal;

  switch (nr.verdict) {
    case Verdict::NotNegativeType:
      r.method = "none";
      break;
    case Verdict::NegativeTypeNonStrict:
      r.gamma = 0.0;
      r.method = "non-strict";
      break;
    case Verdict::StrictNegativeType: {
      const GapMatrices gm = build_B(a, opts.tols);
      GapResult g = compute_gap(gm, opts.gap);
      r.gamma = g.gamma;
      r.beta = g.beta;
      r.s_star = g.s_star;
      r.method = g.method;
      r.certified = g.certified;
      CrossChecks& c = r.cross_checks;
      c.beta_hypercube = g.beta_by_hypercube;
      c.beta_opnorm = g.beta_by_opnorm;
      c.beta_binary = g.beta_by_binary;
      bool agree = true;
      for (const auto& v : {c.beta_hypercube, c.beta_opnorm, c.beta_binary}) {
        if (v) agree = agree && rel_close(*v, g.beta, 1e-8);
      }
      c.formulas_agree = agree;
      if (opts.include_witness) r.witness = g.witness_y0;
      if (opts.verify_trials > 0 && x) {
        const GapInequalityReport q =
            verify_gap_inequality(*x, doc.p, g.gamma, opts.verify_trials, opts.seed, g.witness_y0);
        r.inequality = InequalityCheck{q.trials, q.failures, q.max_scaled_slack, q.witness_residual,
                                       q.maximality_confirmed};
      }
      break;
    }
  }

  if (auto oracle = opts.raw ? std::nullopt : document_oracle(doc)) {
    CrossChecks& c = r.cross_checks;
    c.oracle_gamma = oracle->gamma;
    if (std::isfinite(oracle->beta)) c.oracle_beta = oracle->beta;
    if (r.gamma) {
      c.oracle_agree = oracle->gamma == 0.0 ? *r.gamma == 0.0 : rel_close(*r.gamma, oracle->gamma, 1e-9);
    } else {
      c.oracle_agree = false;
    }
  }

  if (opts.include_timing) {
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

InputDocument perturbed(const InputDocument& doc) {
  if (doc.kind == InputKind::Generator && doc.generator->name != "discrete") {
    WeightedGraph g = *document_graph(doc);
    std::vector<Edge> edges = g.edges();
    if (doc.generator->name == "cycle") {
      // distance perturbation on the path metric itself
      const MetricSpace x = path_metric(g);
      SymMatrix m = x.distances();
      m.set(0, 1, m(0, 1) + 1e-3);
      InputDocument out;
      out.kind = InputKind::Matrix;
      out.matrix = m;
      out.p = doc.p;
      return out;
    }
    edges.front().w += 1e-3;
    InputDocument out;
    out.kind = InputKind::EdgeList;
    out.graph = WeightedGraph(g.vertex_count(), std::move(edges));
    out.p = doc.p;
    return out;
  }
  SymMatrix m = document_metric(doc).distances();
  m.set(0, 1, m(0, 1) + 1e-3);
  InputDocument out;
  out.kind = InputKind::Matrix;
  out.matrix = m;
  out.p = doc.p;
  return out;
}

SuiteEntry run_entry(const std::string& family, const std::string& label, const InputDocument& doc,
                     const SuiteOptions& opts) {
  SuiteEntry e;
  e.family = family;
  e.label = label;
  const OracleResult oracle = *document_oracle(doc);
  e.oracle_gamma = oracle.gamma;
  RunOptions ro;
  ro.gap.enumeration.threads = opts.threads;
  try {
    const Report r = run_gap(opts.inject_fault ? perturbed(doc) : doc, ro);
    e.n = r.n;
    e.verdict = r.verdict;
    e.pipeline_gamma = r.gamma;
    if (r.gamma) {
      e.rel_error = oracle.gamma > 0.0 ? std::abs(*r.gamma - oracle.gamma) / oracle.gamma : std::abs(*r.gamma);
      e.pass = oracle.gamma > 0.0 ? e.rel_error <= 1e-9
                                  : (*r.gamma == 0.0 && r.verdict == Verdict::NegativeTypeNonStrict);
    }
  } catch (const Error& err) {
    e.error = err.what();
    e.pass = false;
  }
  return e;
}

}  // namespace

SuiteReport run_oracle_suite(const SuiteOptions& opts) {
  SuiteReport rep;
  auto add = [&](SuiteEntry e) {
    rep.all_pass = rep.all_pass && e.pass;
    rep.entries.push_back(std::move(e));
  };
  if (opts.discrete) {
    for (std::size_t n = 2; n <= opts.discrete_max; ++n) {
      add(run_entry("discrete", "discrete(" + std::to_string(n) + ")", generator_document({.name = "discrete", .n = n}), opts));
    }
  }
  if (opts.cycles) {
    for (std::size_t n = 3; n <= opts.cycle_max; ++n) {
      add(run_entry("cycles", "cycle(" + std::to_string(n) + ")", generator_document({.name = "cycle", .n = n}), opts));
    }
  }
  if (opts.trees) {
    std::mt19937_64 rng(opts.seed);
    const std::size_t hi = std::max<std::size_t>(2, opts.tree_max_n);
    for (std::size_t t = 0; t < opts.tree_count; ++t) {
      std::uniform_int_distribution<std::size_t> size(2, hi);
      GeneratorSpec g;
      g.name = "random_tree";
      g.n = size(rng);
      g.seed = rng();
      add(run_entry("trees", "random_tree(n=" + std::to_string(g.n) + ", seed=" + std::to_string(g.seed) + ")",
                    generator_document(g), opts));
    }
  }
  return rep;
}

std::string emit_machine(const SuiteReport& r) {
  json j;
  j["all_pass"] = r.all_pass;
  json entries = json::array();
  for (const SuiteEntry& e : r.entries) {
    json ej;
    ej["family"] = e.family;
    ej["label"] = e.label;
    ej["n"] = e.n;
    ej["verdict"] = std::string(to_string(e.verdict));
    ej["oracle_gamma"] = e.oracle_gamma;
    if (e.pipeline_gamma) ej["pipeline_gamma"] = *e.pipeline_gamma;
    ej["rel_error"] = e.rel_error;
    ej["pass"] = e.pass;
    if (!e.error.empty()) ej["error"] = e.error;
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

std::string emit_text(const SuiteReport& r) {
  std::ostringstream o;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-44s %4s  %-22s %14s %14s %10s  %s\n", "instance", "n", "verdict",
                "oracle gamma", "pipeline gamma", "rel err", "result");
  o << buf;
  for (const SuiteEntry& e : r.entries) {
    char pipe[32] = "-";
    if (e.pipeline_gamma) std::snprintf(pipe, sizeof pipe, "%.6g", *e.pipeline_gamma);
    std::snprintf(buf, sizeof buf, "%-44s %4zu  %-22s %14.6g %14s %10.2e  %s\n", e.label.c_str(), e.n,
                  std::string(to_string(e.verdict)).c_str(), e.oracle_gamma, pipe, e.rel_error,
                  e.pass ? "ok" : "MISMATCH");
    o << buf;
    if (!e.error.empty()) o << "    error: " << e.error << "\n";
  }
  o << (r.all_pass ? "all instances agree with the closed forms\n" : "ORACLE MISMATCH\n");
  return o.str();
}

// ---------------------------------------------------------------------------

SymMatrix random_tree_B(std::size_t n, std::uint64_t seed) {
  const WeightedGraph t = gen_random_tree(n, 0.1, 10.0, seed);
  return build_B(power_matrix(path_metric(t), 1.0)).b;
}

BenchReport run_bench(const BenchOptions& opts) {
  using clock = std::chrono::steady_clock;
  auto seconds_since = [](clock::time_point t0) {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };
  BenchReport rep;
  for (std::size_t n : opts.sizes) {
    const SymMatrix b = random_tree_B(n, opts.seed + n);
    EnumOptions eo;
    eo.threads = opts.threads;
    eo.max_enum_n = std::max<std::size_t>(n, eo.max_enum_n);
    const auto t0 = clock::now();
    const HypercubeResult h = beta_hypercube(b, eo);
    rep.enumeration.push_back({n, h.beta, seconds_since(t0)});
  }
  for (std::size_t n = 4; n <= opts.naive_max; n += 2) {
    const SymMatrix b = random_tree_B(n, opts.seed + 1000 + n);
    auto t0 = clock::now();
    const HypercubeResult g = beta_hypercube(b);
    const double tg = seconds_since(t0);
    t0 = clock::now();
    const HypercubeResult nv = beta_hypercube_naive(b);
    const double tn = seconds_since(t0);
    rep.naive.push_back({n, g.beta, nv.beta, tg, tn, g.beta == nv.beta && g.s_star == nv.s_star});
  }
  if (opts.bnb_budget) {
    const std::size_t n = 20;
    const SymMatrix b = random_tree_B(n, opts.seed + n);
    const BnbResult bb = branch_and_bound(b, *opts.bnb_budget);
    rep.bnb.push_back({n, *opts.bnb_budget, bb.beta, bb.certified, bb.nodes});
  }
  return rep;
}

std::string emit_text(const BenchReport& r) {
  std::ostringstream o;
  char buf[256];
  o << "Gray-code enumeration (random-tree B)\n";
  std::snprintf(buf, sizeof buf, "  %4s %20s %12s\n", "n", "beta", "seconds");
  o << buf;
  for (const BenchRow& row : r.enumeration) {
    std::snprintf(buf, sizeof buf, "  %4zu %20.12g %12.4f\n", row.n, row.beta, row.seconds);
    o << buf;
  }
  o << "Gray-code vs naive enumeration\n";
  std::snprintf(buf, sizeof buf, "  %4s %20s %20s %12s %12s  %s\n", "n", "gray beta", "naive beta", "gray s",
                "naive s", "identical");
  o << buf;
  for (const NaiveRow& row : r.naive) {
    std::snprintf(buf, sizeof buf, "  %4zu %20.12g %20.12g %12.4f %12.4f  %s\n", row.n, row.gray_beta,
                  row.naive_beta, row.gray_seconds, row.naive_seconds, row.identical ? "yes" : "NO");
    o << buf;
  }
  for (const BnbRow& row : r.bnb) {
    std::snprintf(buf, sizeof buf, "branch and bound n=%zu budget=%llu: beta=%.12g certified=%s nodes=%llu\n",
                  row.n, static_cast<unsigned long long>(row.budget), row.beta, row.certified ? "yes" : "no",
                  static_cast<unsigned long long>(row.nodes));
    o << buf;
  }
  return o.str();
}

}  // namespace ngap::cli
