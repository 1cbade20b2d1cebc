#pragma once

// Closed-form values for three families: discrete spaces, cycles with the
// path metric, and weighted metric trees. These are ground truth for the
// generic pipeline and are evaluated without any factorization or search.

#include <optional>

#include "ngap/gap.hpp"
#include "ngap/linalg.hpp"
#include "ngap/metric.hpp"

namespace ngap {

struct OracleResult {
  double gamma = 0.0;
  /// infinity for non-strict spaces (gamma = 0)
  double beta = 0.0;
  std::optional<SymMatrix> ainv;
  std::optional<SymMatrix> b;
  std::optional<SymMatrix> laplacian;
  /// explicit maximizer where one is known: a 0/1 vector for odd cycles, a
  /// +-1 two-colouring for trees
  std::optional<Vector> maximizer;
  /// max over {0,1}^n of (Bx|x) for odd cycles
  std::optional<double> binary_max;
};

/// Gamma = (1/floor(n/2) + 1/ceil(n/2)) / 2; beta = n (even), n - 1/n (odd).
OracleResult gamma_discrete(std::size_t n);

/// Gamma = 0 for even n; n / (2 (n^2 - 2n - 1)) for odd n = 2k + 1, with
/// the explicit 0/1 maximizer and binary maximum (4k^2 - 2) / (2k + 1).
OracleResult gamma_cycle(std::size_t n);

/// Gamma = (sum_e 1/w(e))^{-1}; beta = 2 sum_e 1/w(e). Throws NotATree.
OracleResult gamma_tree(const WeightedGraph& t);

/// Cyclic shift C: (Cx)_i = x_{i+1 mod n}, as a dense matrix.
Matrix cyclic_shift(std::size_t n);

/// A^{-1} = -2I - C^k - C^{k+1} + (2k+1)/(k(k+1)) 11^T for the distance
/// matrix of the cycle on n = 2k + 1 vertices. Throws EvenCycle.
SymMatrix inverse_cycle(std::size_t n);

/// B = 2I + C^k + C^{k+1} - 4/(2k+1) 11^T for the odd cycle.
SymMatrix B_cycle(std::size_t n);

/// alpha_i = 1 iff i in {1..m, 2m+1..3m+1} (k = 2m) or
/// {1..m, 2m+2..3m+2} (k = 2m+1), 1-based.
Vector cycle_maximizer(std::size_t n);

/// Laplacian of the tree with every edge weight replaced by its reciprocal.
SymMatrix reciprocal_laplacian(const WeightedGraph& t);

/// A^{-1} = -L/2 + (2 sum_e w(e))^{-1} delta delta^T, delta_i = 2 - deg(i).
SymMatrix inverse_tree(const WeightedGraph& t);

/// B = L / 2.
SymMatrix B_tree(const WeightedGraph& t);

/// Breadth-first parity colouring from vertex 1: +1 at even depth.
SignVector tree_two_colouring(const WeightedGraph& t);

/// x_e = (2 w(e))^{-1/2} (e_i - e_j), i coloured +1 and j coloured -1;
/// orthonormal in F for (x|y) = (-A x | y). One vector per edge, in edge
/// order.
std::vector<Vector> tree_orthonormal_basis(const WeightedGraph& t);

}  // namespace ngap
