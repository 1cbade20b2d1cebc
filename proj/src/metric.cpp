#include "ngap/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "ngap/errors.hpp"

namespace ngap {

MetricSpace validate_metric(const SymMatrix& raw, double triangle_rel_tol) {
  const std::size_t n = raw.size();
  double maxd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (raw(i, i) != 0.0) {
      throw Error(ErrorCode::NonzeroDiagonal, "d(" + std::to_string(i + 1) + "," +
                                                  std::to_string(i + 1) + ") = " +
                                                  std::to_string(raw(i, i)));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = raw(i, j);
      if (!std::isfinite(d) || d < 0.0) {
        throw Error(ErrorCode::NegativeDistance, "d(" + std::to_string(i + 1) + "," +
                                                     std::to_string(j + 1) + ") = " +
                                                     std::to_string(d));
      }
      maxd = std::max(maxd, d);
    }
  }

  const double slack = triangle_rel_tol * maxd;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (raw(i, j) > raw(i, k) + raw(k, j) + slack) {
          std::ostringstream msg;
          msg << "d(" << i + 1 << "," << j + 1 << ") = " << raw(i, j) << " > d(" << i + 1 << ","
              << k + 1 << ") + d(" << k + 1 << "," << j + 1 << ") = " << raw(i, k) + raw(k, j)
              << " for triple (" << i + 1 << "," << j + 1 << "," << k + 1 << ")";
          throw Error(ErrorCode::TriangleViolation, msg.str());
        }
      }
    }
  }

  // Duplicate collapse: each point maps to the lowest index at distance zero.
  std::vector<std::size_t> rep_of(n);
  std::vector<std::size_t> kept;
  std::vector<std::string> warnings;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t target = kept.size();
    for (std::size_t r = 0; r < kept.size(); ++r) {
      if (raw(kept[r], j) <= slack) {
        target = r;
        break;
      }
    }
    if (target == kept.size()) {
      kept.push_back(j);
    } else {
      warnings.push_back("point " + std::to_string(j + 1) + " duplicates point " +
                         std::to_string(kept[target] + 1) + "; collapsed");
    }
    rep_of[j] = target;
  }

  return MetricSpace(raw.principal(kept), std::move(rep_of), std::move(warnings));
}

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ == 0) throw Error(ErrorCode::InvalidSize, "graph needs at least one vertex");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : edges_) {
    if (e.u >= n_ || e.v >= n_) {
      throw Error(ErrorCode::InvalidSize, "edge (" + std::to_string(e.u + 1) + "," +
                                              std::to_string(e.v + 1) + ") references a vertex outside 1.." +
                                              std::to_string(n_));
    }
    if (e.u == e.v) {
      throw Error(ErrorCode::SchemaError, "self-loop at vertex " + std::to_string(e.u + 1));
    }
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw Error(ErrorCode::InvalidWeight, "edge (" + std::to_string(e.u + 1) + "," +
                                                std::to_string(e.v + 1) + ") has weight " +
                                                std::to_string(e.w));
    }
    if (!seen.insert(std::minmax(e.u, e.v)).second) {
      throw Error(ErrorCode::SchemaError, "duplicate edge (" + std::to_string(e.u + 1) + "," +
                                              std::to_string(e.v + 1) + ")");
    }
  }
}

std::vector<std::size_t> WeightedGraph::degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

bool WeightedGraph::connected() const {
  std::vector<std::vector<std::size_t>> adj(n_);
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> seen(n_, false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        q.push(w);
      }
    }
  }
  return count == n_;
}

NegTypeMatrix power_matrix(const MetricSpace& x, double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::SchemaError, "exponent p must be a finite value >= 0");
  }
  const std::size_t n = x.size();
  SymMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = x(i, j);
      a.set(i, j, p == 0.0 ? 1.0 : (p == 1.0 ? d : std::pow(d, p)));
    }
  }
  return {std::move(a), p, Vector(n, 1.0)};
}

NegTypeMatrix raw_matrix(SymMatrix a, Vector u) {
  if (u.size() != a.size()) {
    throw Error(ErrorCode::DimensionMismatch, "functional has " + std::to_string(u.size()) +
                                                  " entries, matrix is " + std::to_string(a.size()));
  }
  return {std::move(a), std::nullopt, std::move(u)};
}

MetricSpace path_metric(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<Vector> d(n, Vector(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const Edge& e : g.edges()) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.w);
    d[e.v][e.u] = d[e.u][e.v];
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d[i][k];
      if (dik == inf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + d[k][j];
        if (via < d[i][j]) d[i][j] = via;
      }
    }
  }
  for (std::size_t j = 1; j < n; ++j) {
    if (d[0][j] == inf) {
      throw Error(ErrorCode::DisconnectedGraph,
                  "vertex " + std::to_string(j + 1) + " is unreachable from vertex 1");
    }
  }
  // Floyd-Warshall on a symmetric input keeps d symmetric up to rounding in
  // summation order; take the upper triangle.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d[j][i] = d[i][j];
  }
  return validate_metric(SymMatrix::from_rows(d));
}

MetricSpace gen_discrete(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidSize, "discrete space needs n >= 2");
  SymMatrix d = SymMatrix::constant(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) d.set(i, i, 0.0);
  return validate_metric(d);
}

WeightedGraph gen_cycle(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidSize, "cycle needs n >= 3");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph gen_path(std::size_t n, const Vector& weights) {
  if (n < 2) throw Error(ErrorCode::InvalidSize, "path needs n >= 2");
  if (weights.size() != n - 1) {
    throw Error(ErrorCode::InvalidSize, "path on " + std::to_string(n) + " vertices needs " +
                                            std::to_string(n - 1) + " weights");
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, weights[i]});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph gen_path(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidSize, "path needs n >= 2");
  return gen_path(n, Vector(n - 1, 1.0));
}

WeightedGraph gen_tree(std::size_t n, std::vector<Edge> edges) {
  if (n < 2) throw Error(ErrorCode::InvalidSize, "tree needs n >= 2");
  WeightedGraph g(n, std::move(edges));
  if (!g.is_tree()) {
    throw Error(ErrorCode::NotATree, std::to_string(g.edges().size()) + " edges on " +
                                         std::to_string(n) + " vertices do not form a spanning tree");
  }
  return g;
}

WeightedGraph gen_star(const Vector& weights) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < weights.size(); ++i) edges.push_back({0, i + 1, weights[i]});
  return gen_tree(weights.size() + 1, std::move(edges));
}

WeightedGraph gen_random_tree(std::size_t n, double w_lo, double w_hi, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InvalidSize, "tree needs n >= 2");
  if (!(w_lo > 0.0) || !(w_hi >= w_lo) || !std::isfinite(w_hi)) {
    throw Error(ErrorCode::InvalidWeight, "weight range must satisfy 0 < lo <= hi");
  }
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    std::uniform_real_distribution<double> weight(w_lo, w_hi);
    const std::size_t p = parent(rng);
    edges.push_back({p, v, weight(rng)});
  }
  return gen_tree(n, std::move(edges));
}

}  // namespace ngap
