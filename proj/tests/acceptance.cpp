// Acceptance checks: one PASS/FAIL line per criterion. Reference values are
// computed here from the closed-form expressions, not taken from the
// library's closed_forms module, except where a criterion names it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ngap/cli.hpp"
#include "ngap/closed_forms.hpp"
#include "ngap/errors.hpp"
#include "ngap/gap.hpp"

using namespace ngap;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

struct Criterion {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

struct Instance {
  std::string label;
  MetricSpace x;
  double p;
  // strict instances only
  std::optional<double> expected_gamma;
  std::optional<WeightedGraph> tree;
};

cli::Report pipeline(const MetricSpace& x, double p, bool witness = true) {
  cli::InputDocument doc;
  doc.kind = cli::InputKind::Matrix;
  doc.matrix = x.distances();
  doc.p = p;
  cli::RunOptions o;
  o.include_witness = witness;
  return cli::run_gap(doc, o);
}

std::vector<WeightedGraph> acceptance_trees() {
  std::vector<WeightedGraph> out;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> size(2, 12);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = size(rng);
    out.push_back(gen_random_tree(n, 0.1, 10.0, rng()));
  }
  return out;
}

double recip_sum(const WeightedGraph& t) {
  double s = 0.0;
  for (const Edge& e : t.edges()) s += 1.0 / e.w;
  return s;
}

// Laplacian of the tree with reciprocal weights, assembled from the edge
// list directly.
SymMatrix half_reciprocal_laplacian(const WeightedGraph& t) {
  SymMatrix l(t.vertex_count());
  for (const Edge& e : t.edges()) {
    const double c = 0.5 / e.w;
    l.set(e.u, e.u, l(e.u, e.u) + c);
    l.set(e.v, e.v, l(e.v, e.v) + c);
    l.set(e.u, e.v, l(e.u, e.v) - c);
  }
  return l;
}

double max_entry_diff(const SymMatrix& a, const SymMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  }
  return d;
}

// Strict instances of criteria 1-3 with their expected Gamma.
std::vector<Instance> strict_family_instances() {
  std::vector<Instance> out;
  for (std::size_t n = 2; n <= 12; ++n) {
    const double h = std::floor(n / 2.0), c = std::ceil(n / 2.0);
    out.push_back({"discrete(" + std::to_string(n) + ")", gen_discrete(n), 1.0, 0.5 * (1.0 / h + 1.0 / c), {}});
  }
  for (std::size_t n = 3; n <= 15; n += 2) {
    const double nn = static_cast<double>(n);
    out.push_back({"cycle(" + std::to_string(n) + ")", path_metric(gen_cycle(n)), 1.0,
                   0.5 * nn / (nn * nn - 2 * nn - 1), {}});
  }
  int k = 0;
  for (const WeightedGraph& t : acceptance_trees()) {
    out.push_back({"tree#" + std::to_string(k++), path_metric(t), 1.0, 1.0 / recip_sum(t), t});
  }
  return out;
}

// Random strict instances for the enumeration, branch-and-bound and scale
// checks: tree metrics, tree metrics at p = 1/2, and jittered discrete
// spaces (distances in [1, 1.5] always satisfy the triangle inequality).
SymMatrix random_strict_b(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  switch (seed % 3) {
    case 0: return build_B(power_matrix(path_metric(gen_random_tree(n, 0.1, 10.0, seed)), 1.0)).b;
    case 1: return build_B(power_matrix(path_metric(gen_random_tree(n, 0.1, 10.0, seed)), 0.5)).b;
    default: {
      std::uniform_real_distribution<double> u(1.0, 1.5);
      SymMatrix d(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, u(rng));
      }
      return build_B(power_matrix(validate_metric(d), 1.0)).b;
    }
  }
}

int failures = 0;

void report(int id, const std::string& title, const Criterion& c, double secs) {
  std::printf("[%s] %2d  %-58s (%.2fs)%s%s\n", c.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
              c.pass ? "" : "  ", c.detail.c_str());
  std::fflush(stdout);
  if (!c.pass) ++failures;
}

void run(int id, const std::string& title, const std::function<void(Criterion&)>& body, double budget = 0.0) {
  Criterion c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  const double secs = seconds_since(t0);
  if (budget > 0.0) c.require(secs < budget, "took " + std::to_string(secs) + " s, budget " + std::to_string(budget) + " s");
  report(id, title, c, secs);
}

}  // namespace

int main() {
  const std::vector<Instance> strict = strict_family_instances();
  const std::vector<WeightedGraph> trees = acceptance_trees();

  run(1, "discrete n = 2..12: Gamma = (1/floor + 1/ceil)/2, < 1 s", [](Criterion& c) {
    for (std::size_t n = 2; n <= 12; ++n) {
      const double want = 0.5 * (1.0 / std::floor(n / 2.0) + 1.0 / std::ceil(n / 2.0));
      const cli::Report r = pipeline(gen_discrete(n), 1.0, false);
      c.require(r.gamma && rel_close(*r.gamma, want, 1e-9), "discrete(" + std::to_string(n) + ")");
    }
  }, 1.0);

  run(2, "cycles: odd Gamma = n/(2(n^2-2n-1)), even non-strict, < 5 s", [](Criterion& c) {
    for (std::size_t n = 3; n <= 15; n += 2) {
      const double nn = static_cast<double>(n);
      const cli::Report r = pipeline(path_metric(gen_cycle(n)), 1.0, false);
      c.require(r.verdict == Verdict::StrictNegativeType, "C" + std::to_string(n) + " verdict");
      c.require(r.gamma && rel_close(*r.gamma, 0.5 * nn / (nn * nn - 2 * nn - 1), 1e-9), "C" + std::to_string(n));
    }
    for (std::size_t n = 4; n <= 14; n += 2) {
      const cli::Report r = pipeline(path_metric(gen_cycle(n)), 1.0, false);
      c.require(r.verdict == Verdict::NegativeTypeNonStrict, "C" + std::to_string(n) + " verdict");
      c.require(r.gamma && *r.gamma == 0.0, "C" + std::to_string(n) + " gamma");
    }
  }, 5.0);

  run(3, "50 random trees: Gamma = (sum 1/w)^-1 within 1e-8, < 10 s", [&](Criterion& c) {
    for (std::size_t k = 0; k < trees.size(); ++k) {
      const cli::Report r = pipeline(path_metric(trees[k]), 1.0, false);
      c.require(r.gamma && rel_close(*r.gamma, 1.0 / recip_sum(trees[k]), 1e-8), "tree#" + std::to_string(k));
    }
  }, 10.0);

  run(4, "trees: build_B = L/2 within 1e-9 relative", [&](Criterion& c) {
    for (std::size_t k = 0; k < trees.size(); ++k) {
      const SymMatrix b = build_B(power_matrix(path_metric(trees[k]), 1.0)).b;
      const SymMatrix want = half_reciprocal_laplacian(trees[k]);
      c.require(max_entry_diff(b, want) <= 1e-9 * want.max_abs(), "tree#" + std::to_string(k));
    }
  });

  run(5, "inverse_cycle / inverse_tree times A = I within 1e-10", [&](Criterion& c) {
    for (std::size_t n = 3; n <= 15; n += 2) {
      const SymMatrix a = power_matrix(path_metric(gen_cycle(n)), 1.0).a;
      c.require(identity_deviation(multiply(a, inverse_cycle(n))) <= 1e-10, "C" + std::to_string(n));
    }
    for (std::size_t k = 0; k < trees.size(); ++k) {
      const SymMatrix a = power_matrix(path_metric(trees[k]), 1.0).a;
      c.require(identity_deviation(multiply(a, inverse_tree(trees[k]))) <= 1e-10, "tree#" + std::to_string(k));
    }
  });

  run(6, "hypercube, op-norm and 4 x binary beta agree within 1e-8", [&](Criterion& c) {
    for (const Instance& in : strict) {
      const cli::Report r = pipeline(in.x, in.p, false);
      const auto& cc = r.cross_checks;
      const bool ok = r.beta && cc.beta_hypercube && cc.beta_opnorm && cc.beta_binary &&
                      rel_close(*cc.beta_opnorm, *cc.beta_hypercube, 1e-8) &&
                      rel_close(*cc.beta_binary, *cc.beta_hypercube, 1e-8);
      c.require(ok, in.label);
    }
  });

  run(7, "witness y0: sum 0, o(Ay0) <= 1, |y0|_1 = (-Ay0|y0) = beta, equality", [&](Criterion& c) {
    for (const Instance& in : strict) {
      const cli::Report r = pipeline(in.x, in.p, true);
      const NegTypeMatrix a = power_matrix(in.x, in.p);
      const Vector& y = *r.witness;
      const double beta = *r.beta;
      const double l1 = norm1(y);
      const double ayy = quad_form(a.a, y, y);
      c.require(std::abs(std::accumulate(y.begin(), y.end(), 0.0)) <= 1e-9, in.label + " sum");
      c.require(oscillation(a.a.multiply(y), a.u) <= 1.0 + 1e-9, in.label + " oscillation");
      c.require(rel_close(l1, beta, 1e-7), in.label + " l1");
      c.require(rel_close(-ayy, beta, 1e-7), in.label + " -A norm");
      c.require(std::abs(0.5 * *r.gamma * l1 * l1 + ayy) <= 1e-6 * beta, in.label + " equality");
    }
  });

  run(8, "1000 random alpha per instance satisfy the gap inequality; 1.0001 Gamma fails", [&](Criterion& c) {
    std::uint64_t seed = 1;
    for (const Instance& in : strict) {
      const cli::Report r = pipeline(in.x, in.p, true);
      const GapInequalityReport q = verify_gap_inequality(in.x, in.p, *r.gamma, 1000, seed++, *r.witness);
      c.require(q.failures == 0, in.label + " inequality");
      c.require(q.maximality_confirmed && *q.maximality_confirmed, in.label + " maximality");
    }
  });

  run(9, "Gray-code = naive exhaustive on 20 random strict n <= 12", [](Criterion& c) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const std::size_t n = 3 + seed % 10;
      const SymMatrix b = random_strict_b(seed, n);
      const HypercubeResult g = beta_hypercube(b);
      const HypercubeResult naive = beta_hypercube_naive(b);
      c.require(g.beta == naive.beta && g.s_star == naive.s_star, "seed " + std::to_string(seed));
    }
  });

  run(10, "branch and bound = enumeration for n <= 20; C7 beta = 136/7", [](Criterion& c) {
    std::vector<SymMatrix> bs;
    for (std::uint64_t seed = 1; seed <= 15; ++seed) bs.push_back(random_strict_b(100 + seed, 6 + seed % 15));
    bs.push_back(build_B(power_matrix(path_metric(gen_cycle(15)), 1.0)).b);
    bs.push_back(build_B(power_matrix(path_metric(gen_random_tree(20, 0.1, 10.0, 3)), 1.0)).b);
    for (std::size_t k = 0; k < bs.size(); ++k) {
      const BnbResult r = branch_and_bound(bs[k], 50'000'000);
      const HypercubeResult h = beta_hypercube(bs[k]);
      c.require(r.certified, "instance " + std::to_string(k) + " not certified");
      c.require(r.beta == h.beta && r.s_star == h.s_star, "instance " + std::to_string(k));
    }
    const BnbResult c7 = branch_and_bound(build_B(power_matrix(path_metric(gen_cycle(7)), 1.0)).b, 50'000'000);
    c.require(c7.certified && rel_close(c7.beta, 136.0 / 7.0, 1e-9), "C7");
  });

  run(11, "Gamma(c d) = c Gamma(d), same s*, c in {0.5, 3}, 10 instances", [](Criterion& c) {
    std::vector<MetricSpace> xs;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) xs.push_back(path_metric(gen_random_tree(4 + seed, 0.1, 10.0, seed)));
    for (std::size_t n : {3u, 5u, 7u}) xs.push_back(path_metric(gen_cycle(n)));
    xs.push_back(gen_discrete(6));
    xs.push_back(path_metric(gen_star({1.0, 2.0, 4.0, 0.5})));
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const cli::Report base = pipeline(xs[k], 1.0, false);
      for (double s : {0.5, 3.0}) {
        const cli::Report r = pipeline(validate_metric(xs[k].distances() * s), 1.0, false);
        c.require(rel_close(*r.gamma, s * *base.gamma, 1e-9), "instance " + std::to_string(k) + " gamma");
        c.require(*r.s_star == *base.s_star, "instance " + std::to_string(k) + " s*");
      }
    }
  });

  run(12, "n = 24 hypercube < 120 s single-threaded; parallel bit-identical", [](Criterion& c) {
    const SymMatrix b = cli::random_tree_B(24, 1);
    EnumOptions seq;
    seq.threads = 1;
    const auto t0 = Clock::now();
    const HypercubeResult s = beta_hypercube(b, seq);
    const double secs = seconds_since(t0);
    c.require(secs < 120.0, "sequential took " + std::to_string(secs) + " s");
    EnumOptions par;
    par.threads = std::max(2u, std::thread::hardware_concurrency());
    const HypercubeResult p = beta_hypercube(b, par);
    c.require(p.beta == s.beta && p.s_star == s.s_star, "parallel result differs");
    std::printf("       n = 24 sequential scan: %.2f s, beta = %.17g\n", secs, s.beta);
  });

  std::printf("%s: %d of 12 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
