#pragma once

// Finite metric spaces, weighted graphs and their path metrics, and the
// p-power distance matrix A = (d(x_i, x_j)^p).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ngap/linalg.hpp"

namespace ngap {

/// A validated finite metric. Points are distinct (zero off-diagonal
/// distances were collapsed by validate_metric).
class MetricSpace {
 public:
  std::size_t size() const noexcept { return d_.size(); }
  const SymMatrix& distances() const noexcept { return d_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_(i, j); }

  /// For every point of the raw input, the index of the point representing
  /// it after duplicate collapse.
  const std::vector<std::size_t>& representative() const noexcept { return representative_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  friend MetricSpace validate_metric(const SymMatrix& raw, double triangle_rel_tol);
  MetricSpace(SymMatrix d, std::vector<std::size_t> rep, std::vector<std::string> warnings)
      : d_(std::move(d)), representative_(std::move(rep)), warnings_(std::move(warnings)) {}

  SymMatrix d_;
  std::vector<std::size_t> representative_;
  std::vector<std::string> warnings_;
};

inline constexpr double kTriangleRelTol = 1e-12;

/// Checks the metric axioms and collapses duplicate points (off-diagonal
/// zero distance) onto the lowest-index representative with a warning.
/// Throws NonzeroDiagonal, NegativeDistance, TriangleViolation.
MetricSpace validate_metric(const SymMatrix& raw, double triangle_rel_tol = kTriangleRelTol);

struct Edge {
  std::size_t u;  // 0-based
  std::size_t v;
  double w;
  bool operator==(const Edge&) const = default;
};

/// Simple graph with positive edge weights. Connectivity is checked by
/// path_metric; everything else is checked here.
class WeightedGraph {
 public:
  /// Throws InvalidSize (n = 0 or vertex out of range), SchemaError
  /// (self-loop, duplicate edge), InvalidWeight (w <= 0 or not finite).
  WeightedGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::vector<std::size_t> degrees() const;
  bool connected() const;
  bool is_tree() const { return edges_.size() + 1 == n_ && connected(); }

  bool operator==(const WeightedGraph&) const = default;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

struct NegTypeMatrix {
  SymMatrix a;
  /// exponent; empty for a raw matrix that did not come from a metric
  std::optional<double> p;
  Vector u;
};

/// Entrywise d^p with 0 on the diagonal for every p >= 0 (so p = 0 gives
/// 11^T - I). u is the all-ones vector.
NegTypeMatrix power_matrix(const MetricSpace& x, double p);

/// Raw symmetric matrix with an arbitrary functional u (general setting).
NegTypeMatrix raw_matrix(SymMatrix a, Vector u);

/// Shortest weighted path distances (Floyd-Warshall). Throws
/// DisconnectedGraph.
MetricSpace path_metric(const WeightedGraph& g);

MetricSpace gen_discrete(std::size_t n);
WeightedGraph gen_cycle(std::size_t n);
WeightedGraph gen_path(std::size_t n, const Vector& weights);
WeightedGraph gen_path(std::size_t n);
/// Throws NotATree unless the edges form a spanning tree on n vertices.
WeightedGraph gen_tree(std::size_t n, std::vector<Edge> edges);
WeightedGraph gen_star(const Vector& weights);
/// Vertex i > 0 attaches to a uniformly chosen earlier vertex; weights are
/// uniform in [w_lo, w_hi]. Deterministic in seed.
WeightedGraph gen_random_tree(std::size_t n, double w_lo, double w_hi, std::uint64_t seed);

}  // namespace ngap
