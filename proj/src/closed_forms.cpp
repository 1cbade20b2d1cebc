#include "ngap/closed_forms.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "ngap/errors.hpp"

namespace ngap {

namespace {

void require_tree(const WeightedGraph& t) {
  if (!t.is_tree()) {
    throw Error(ErrorCode::NotATree, std::to_string(t.edges().size()) + " edges on " +
                                         std::to_string(t.vertex_count()) +
                                         " vertices do not form a spanning tree");
  }
}

double reciprocal_weight_sum(const WeightedGraph& t) {
  double s = 0.0;
  for (const Edge& e : t.edges()) s += 1.0 / e.w;
  return s;
}

/// a I + sum_c coef_c C^{shift_c} + d 11^T, symmetric for the shift pairs used
SymMatrix circulant(std::size_t n, double diag, std::size_t k, double shift_coef, double ones) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double v = ones;
      if (i == j) v += diag;
      // (C^s)_{ij} = 1 iff j = i + s mod n
      const std::size_t fwd = (j + n - i) % n;
      if (fwd == k || fwd == k + 1) v += shift_coef;
      m.set(i, j, v);
    }
  }
  return m;
}

}  // namespace

OracleResult gamma_discrete(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidSize, "discrete space needs n >= 2");
  const double lo = static_cast<double>(n / 2);
  const double hi = static_cast<double>((n + 1) / 2);
  OracleResult r;
  r.gamma = 0.5 * (1.0 / lo + 1.0 / hi);
  const double nd = static_cast<double>(n);
  r.beta = n % 2 == 0 ? nd : nd - 1.0 / nd;
  SymMatrix ainv = SymMatrix::constant(n, 1.0 / (nd - 1.0)) - SymMatrix::identity(n);
  r.ainv = std::move(ainv);
  r.b = SymMatrix::identity(n) - SymMatrix::constant(n, 1.0 / nd);
  return r;
}

OracleResult gamma_cycle(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidSize, "cycle needs n >= 3");
  OracleResult r;
  if (n % 2 == 0) {
    r.gamma = 0.0;
    r.beta = std::numeric_limits<double>::infinity();
    return r;
  }
  const double nd = static_cast<double>(n);
  const double k = static_cast<double>((n - 1) / 2);
  r.gamma = 0.5 * nd / (nd * nd - 2.0 * nd - 1.0);
  r.binary_max = (4.0 * k * k - 2.0) / (2.0 * k + 1.0);
  r.beta = 4.0 * *r.binary_max;
  r.ainv = inverse_cycle(n);
  r.b = B_cycle(n);
  r.maximizer = cycle_maximizer(n);
  return r;
}

OracleResult gamma_tree(const WeightedGraph& t) {
  require_tree(t);
  const double s = reciprocal_weight_sum(t);
  OracleResult r;
  r.gamma = 1.0 / s;
  r.beta = 2.0 * s;
  r.ainv = inverse_tree(t);
  r.laplacian = reciprocal_laplacian(t);
  r.b = B_tree(t);
  r.maximizer = to_vector(tree_two_colouring(t));
  return r;
}

Matrix cyclic_shift(std::size_t n) {
  Matrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) c(i, (i + 1) % n) = 1.0;
  return c;
}

SymMatrix inverse_cycle(std::size_t n) {
  if (n < 3 || n % 2 == 0) {
    throw Error(ErrorCode::EvenCycle, "closed-form inverse needs an odd cycle n >= 3, got " + std::to_string(n));
  }
  const std::size_t k = (n - 1) / 2;
  const double kd = static_cast<double>(k);
  return circulant(n, -2.0, k, -1.0, (2.0 * kd + 1.0) / (kd * (kd + 1.0)));
}

SymMatrix B_cycle(std::size_t n) {
  if (n < 3 || n % 2 == 0) {
    throw Error(ErrorCode::EvenCycle, "closed-form B needs an odd cycle n >= 3, got " + std::to_string(n));
  }
  const std::size_t k = (n - 1) / 2;
  return circulant(n, 2.0, k, 1.0, -4.0 / (2.0 * static_cast<double>(k) + 1.0));
}

Vector cycle_maximizer(std::size_t n) {
  if (n < 3 || n % 2 == 0) throw Error(ErrorCode::EvenCycle, "maximizer is defined for odd cycles");
  const std::size_t k = (n - 1) / 2;
  const std::size_t m = k / 2;
  Vector x(n, 0.0);
  auto set_range = [&](std::size_t lo, std::size_t hi) {  // 1-based, inclusive
    for (std::size_t i = lo; i <= hi; ++i) x[i - 1] = 1.0;
  };
  if (m >= 1) set_range(1, m);
  if (k % 2 == 0) {
    set_range(2 * m + 1, 3 * m + 1);
  } else {
    set_range(2 * m + 2, 3 * m + 2);
  }
  return x;
}

SymMatrix reciprocal_laplacian(const WeightedGraph& t) {
  SymMatrix l(t.vertex_count());
  for (const Edge& e : t.edges()) {
    const double c = 1.0 / e.w;
    l.set(e.u, e.u, l(e.u, e.u) + c);
    l.set(e.v, e.v, l(e.v, e.v) + c);
    l.set(e.u, e.v, l(e.u, e.v) - c);
  }
  return l;
}

SymMatrix inverse_tree(const WeightedGraph& t) {
  require_tree(t);
  double total = 0.0;
  for (const Edge& e : t.edges()) total += e.w;
  const auto deg = t.degrees();
  Vector delta(t.vertex_count());
  for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = 2.0 - static_cast<double>(deg[i]);
  return reciprocal_laplacian(t) * -0.5 + outer(delta, 1.0 / (2.0 * total));
}

SymMatrix B_tree(const WeightedGraph& t) {
  require_tree(t);
  return reciprocal_laplacian(t) * 0.5;
}

SignVector tree_two_colouring(const WeightedGraph& t) {
  require_tree(t);
  const std::size_t n = t.vertex_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Edge& e : t.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  SignVector colour(n, 0);
  std::queue<std::size_t> q;
  colour[0] = 1;
  q.push(0);
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    for (std::size_t w : adj[v]) {
      if (colour[w] == 0) {
        colour[w] = -colour[v];
        q.push(w);
      }
    }
  }
  return colour;
}

std::vector<Vector> tree_orthonormal_basis(const WeightedGraph& t) {
  const SignVector colour = tree_two_colouring(t);
  std::vector<Vector> basis;
  for (const Edge& e : t.edges()) {
    const std::size_t i = colour[e.u] > 0 ? e.u : e.v;
    const std::size_t j = colour[e.u] > 0 ? e.v : e.u;
    Vector x(t.vertex_count(), 0.0);
    const double s = 1.0 / std::sqrt(2.0 * e.w);
    x[i] = s;
    x[j] = -s;
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace ngap
