#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <numeric>
#include <queue>
#include <string>

#include "ngap/errors.hpp"
#include "ngap/gap.hpp"

namespace ngap {

namespace {

struct Node {
  double bound;
  double fixed_value;
  std::uint64_t signs;  // bit i set means s_i = +1
  std::uint32_t depth;  // number of fixed coordinates

  bool operator<(const Node& o) const { return bound < o.bound; }
};

class Search {
 public:
  Search(const SymMatrix& b, std::uint64_t budget) : b_(b), n_(b.size()), budget_(budget), lam_(n_ + 1, 0.0) {
    // lam_[k] = lambda_max of the trailing block on coordinates k..n-1
    for (std::size_t k = 1; k < n_; ++k) {
      std::vector<std::size_t> idx(n_ - k);
      std::iota(idx.begin(), idx.end(), k);
      lam_[k] = std::max(0.0, eigenvalues_sym(b_.principal(idx)).back());
    }
    double abs_total = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (double v : b_.row(i)) abs_total += std::abs(v);
    }
    abs_total_ = abs_total;
  }

  double abs_total() const { return abs_total_; }
  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return nodes_ >= budget_; }

  double evaluate(std::uint64_t signs) const {
    const Vector s = to_vector(decode(signs));
    return quad_form(b_, s, s);
  }

  SignVector decode(std::uint64_t signs) const {
    SignVector s(n_);
    for (std::size_t i = 0; i < n_; ++i) s[i] = ((signs >> i) & 1u) ? 1 : -1;
    return s;
  }

  /// 1-flip hill climbing from a couple of deterministic starts.
  std::uint64_t local_search() const {
    std::uint64_t best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    std::uint64_t alt = 0;
    for (std::size_t i = 0; i < n_; i += 2) alt |= std::uint64_t{1} << i;
    for (std::uint64_t start : {alt, (n_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1)}) {
      SignVector s = decode(start | 1u);
      Vector g = b_.multiply(to_vector(s));
      bool improved = true;
      while (improved) {
        improved = false;
        for (std::size_t j = 1; j < n_; ++j) {
          const double delta = -4.0 * s[j] * g[j] + 4.0 * b_(j, j);
          if (delta > 1e-12 * abs_total_) {
            const auto col = b_.row(j);
            for (std::size_t i = 0; i < n_; ++i) g[i] -= 2.0 * s[j] * col[i];
            s[j] = -s[j];
            improved = true;
          }
        }
      }
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (s[i] > 0) code |= std::uint64_t{1} << i;
      }
      const double v = evaluate(code);
      if (v > best_v) {
        best_v = v;
        best = code;
      }
    }
    return best;
  }

  /// h_j = sum_{i < depth} B_ji s_i for j >= depth.
  Vector cross(std::uint64_t signs, std::uint32_t depth) const {
    Vector h(n_, 0.0);
    for (std::size_t i = 0; i < depth; ++i) {
      const double si = ((signs >> i) & 1u) ? 1.0 : -1.0;
      const auto col = b_.row(i);
      for (std::size_t j = depth; j < n_; ++j) h[j] += si * col[j];
    }
    return h;
  }

  /// Child of (signs, depth) fixing s_depth = sign; h is the parent's cross
  /// vector. Returns the child node and its cross vector.
  Node child(const Node& parent, const Vector& h, int sign, Vector& h_child) const {
    const std::size_t k = parent.depth;
    Node c;
    c.depth = parent.depth + 1;
    c.signs = parent.signs | (sign > 0 ? (std::uint64_t{1} << k) : 0);
    c.fixed_value = parent.fixed_value + 2.0 * sign * h[k] + b_(k, k);
    h_child = h;
    const auto col = b_.row(k);
    double cross_bound = 0.0;
    for (std::size_t j = k + 1; j < n_; ++j) {
      h_child[j] += sign * col[j];
      cross_bound += std::abs(h_child[j]);
    }
    c.bound = c.fixed_value + 2.0 * cross_bound + lam_[c.depth] * static_cast<double>(n_ - c.depth);
    return c;
  }

  Node root() const {
    Node r{0.0, b_(0, 0), 1u, 1};
    const Vector h = cross(r.signs, 1);
    double cross_bound = 0.0;
    for (std::size_t j = 1; j < n_; ++j) cross_bound += std::abs(h[j]);
    r.bound = r.fixed_value + 2.0 * cross_bound + lam_[1] * static_cast<double>(n_ - 1);
    return r;
  }

  /// Best-first search for the maximum value. Returns false if the budget
  /// ran out before the bound gap closed.
  bool maximize(std::uint64_t& incumbent, double& incumbent_value) {
    std::priority_queue<Node> open;
    open.push(root());
    Vector h_child;
    while (!open.empty()) {
      const Node top = open.top();
      if (top.bound <= incumbent_value) return true;
      if (exhausted()) return false;
      open.pop();
      ++nodes_;
      if (top.depth == n_) {
        if (top.fixed_value > incumbent_value) {
          incumbent_value = top.fixed_value;
          incumbent = top.signs;
        }
        continue;
      }
      const Vector h = cross(top.signs, top.depth);
      for (int sign : {-1, 1}) {
        const Node c = child(top, h, sign, h_child);
        if (c.depth == n_) {
          ++nodes_;
          if (c.fixed_value > incumbent_value) {
            incumbent_value = c.fixed_value;
            incumbent = c.signs;
          }
        } else if (c.bound > incumbent_value) {
          open.push(c);
        }
      }
    }
    return true;
  }

  /// Depth-first in lexicographic order (-1 before +1); first leaf with
  /// value >= threshold. Returns false on budget exhaustion.
  bool first_at_least(const Node& node, const Vector& h, double threshold, std::optional<std::uint64_t>& hit) {
    if (exhausted()) return false;
    ++nodes_;
    if (node.depth == n_) {
      if (node.fixed_value >= threshold) hit = node.signs;
      return true;
    }
    Vector h_child;
    for (int sign : {-1, 1}) {
      const Node c = child(node, h, sign, h_child);
      if (c.bound < threshold) continue;
      if (!first_at_least(c, h_child, threshold, hit)) return false;
      if (hit) return true;
    }
    return true;
  }

 private:
  const SymMatrix& b_;
  std::size_t n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  Vector lam_;
  double abs_total_ = 0.0;
};

}  // namespace

BnbResult branch_and_bound(const SymMatrix& b, std::uint64_t budget, const EnumOptions& opts) {
  const std::size_t n = b.size();
  if (n > 63) throw Error(ErrorCode::TooLarge, "branch and bound supports n <= 63, got " + std::to_string(n));

  BnbResult r;
  if (n == 1) {
    r.s_star = {1};
    r.beta = b(0, 0);
    r.certified = true;
    return r;
  }

  Search search(b, budget);
  std::uint64_t incumbent = search.local_search();
  double incumbent_value = search.evaluate(incumbent);

  const bool closed = search.maximize(incumbent, incumbent_value);
  if (closed) {
    const double threshold = incumbent_value - opts.tie_rel * search.abs_total();
    const Node root = search.root();
    std::optional<std::uint64_t> hit;
    const bool done = search.first_at_least(root, search.cross(root.signs, 1), threshold, hit);
    if (done && hit) {
      incumbent = *hit;
      r.certified = true;
    }
  }
  r.nodes = search.nodes();
  r.s_star = search.decode(incumbent);
  const Vector sv = to_vector(r.s_star);
  r.beta = quad_form(b, sv, sv);
  return r;
}

}  // namespace ngap
