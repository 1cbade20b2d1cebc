// Exhaustive scans over the hypercube.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>

#include "ngap/errors.hpp"
#include "ngap/gap.hpp"

namespace ngap {

namespace {

constexpr std::uint64_t kRecomputeEvery = std::uint64_t{1} << 16;

void check_size(const SymMatrix& b, const EnumOptions& opts) {
  if (b.size() > opts.max_enum_n) {
    throw Error(ErrorCode::TooLarge, "n = " + std::to_string(b.size()) + " exceeds max_enum_n = " +
                                         std::to_string(opts.max_enum_n));
  }
  if (b.size() > 62) throw Error(ErrorCode::TooLarge, "enumeration is limited to n <= 62");
}

double abs_sum(const SymMatrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (double v : b.row(i)) s += std::abs(v);
  }
  return s;
}

unsigned resolve_threads(unsigned t) {
  if (t != 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

int resolve_partition_bits(std::size_t n, int requested) {
  const int free_bits = static_cast<int>(n) - 1;
  if (requested < 0) return std::min(free_bits, 6);
  return std::min(free_bits, requested);
}

template <class Fn>
void for_each_block(std::size_t blocks, unsigned threads, Fn&& fn) {
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, blocks));
  if (threads <= 1) {
    for (std::size_t blk = 0; blk < blocks; ++blk) fn(blk);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t blk = next++; blk < blocks; blk = next++) fn(blk);
    });
  }
  for (auto& th : pool) th.join();
}

/// Sign state with incrementally maintained g = B s and v = (B s | s).
class SignState {
 public:
  SignState(const SymMatrix& b, SignVector s) : b_(b), s_(std::move(s)), g_(b.size()) { recompute(); }

  void flip(std::size_t j) {
    const double sj = s_[j];
    value_ += -4.0 * sj * g_[j] + 4.0 * b_(j, j);
    const auto col = b_.row(j);
    const double two_sj = 2.0 * sj;
    for (std::size_t i = 0; i < g_.size(); ++i) g_[i] -= two_sj * col[i];
    s_[j] = -s_[j];
    if (++flips_ % kRecomputeEvery == 0) recompute();
  }

  void recompute() {
    const std::size_t n = s_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = b_.row(i);
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += r[j] * s_[j];
      g_[i] = acc;
    }
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += g_[i] * s_[i];
    value_ = v;
  }

  double value() const noexcept { return value_; }
  double g_abs_sum() const noexcept {
    double acc = 0.0;
    for (double x : g_) acc += std::abs(x);
    return acc;
  }
  const SignVector& signs() const noexcept { return s_; }

 private:
  const SymMatrix& b_;
  SignVector s_;
  Vector g_;
  double value_ = 0.0;
  std::uint64_t flips_ = 0;
};

/// Block layout of the sign space with s_1 = +1: the next k entries are the
/// block id (most significant first), the remaining m entries are scanned.
struct Layout {
  std::size_t n;
  int k;
  int m;

  std::size_t blocks() const { return std::size_t{1} << k; }
  std::uint64_t states_per_block() const { return std::uint64_t{1} << m; }
  /// index of low bit `bit` (0 = least significant = last coordinate)
  std::size_t index_of_low_bit(int bit) const { return n - 1 - static_cast<std::size_t>(bit); }

  SignVector block_start(std::size_t blk) const {
    SignVector s(n, -1);
    s[0] = 1;
    for (int i = 1; i <= k; ++i) s[i] = ((blk >> (k - i)) & 1u) ? 1 : -1;
    return s;
  }
};

Layout make_layout(std::size_t n, const EnumOptions& opts) {
  const int k = resolve_partition_bits(n, opts.partition_bits);
  return {n, k, static_cast<int>(n) - 1 - k};
}

/// Lexicographically first state with value >= threshold, in lex order
/// (-1 < +1), or nullopt.
std::optional<SignVector> first_at_least(const SymMatrix& b, const Layout& layout, double threshold,
                                         unsigned threads) {
  const std::size_t blocks = layout.blocks();
  std::vector<std::optional<SignVector>> hits(blocks);
  std::atomic<std::size_t> earliest{blocks};
  for_each_block(blocks, threads, [&](std::size_t blk) {
    if (blk > earliest.load()) return;
    SignState st(b, layout.block_start(blk));
    const std::uint64_t count = layout.states_per_block();
    for (std::uint64_t c = 0; c < count; ++c) {
      if (c > 0) {
        const int top = std::countr_zero(c);
        for (int bit = 0; bit <= top; ++bit) st.flip(layout.index_of_low_bit(bit));
      }
      if (st.value() >= threshold) {
        hits[blk] = st.signs();
        std::size_t cur = earliest.load();
        while (blk < cur && !earliest.compare_exchange_weak(cur, blk)) {
        }
        return;
      }
    }
  });
  for (auto& h : hits) {
    if (h) return std::move(h);
  }
  return std::nullopt;
}

}  // namespace

Vector to_vector(const SignVector& s) { return Vector(s.begin(), s.end()); }

HypercubeResult beta_hypercube(const SymMatrix& b, const EnumOptions& opts) {
  check_size(b, opts);
  const std::size_t n = b.size();
  const Layout layout = make_layout(n, opts);
  const unsigned threads = resolve_threads(opts.threads);

  std::vector<double> block_max(layout.blocks(), -std::numeric_limits<double>::infinity());
  for_each_block(layout.blocks(), threads, [&](std::size_t blk) {
    SignState st(b, layout.block_start(blk));
    double best = st.value();
    const std::uint64_t count = layout.states_per_block();
    for (std::uint64_t t = 1; t < count; ++t) {
      st.flip(layout.index_of_low_bit(std::countr_zero(t)));
      best = std::max(best, st.value());
    }
    block_max[blk] = best;
  });
  const double vmax = *std::max_element(block_max.begin(), block_max.end());
  const double threshold = vmax - opts.tie_rel * abs_sum(b);

  auto hit = first_at_least(b, layout, threshold, threads);
  // The maximizing state itself always clears the threshold.
  HypercubeResult r;
  r.s_star = std::move(*hit);
  const Vector sv = to_vector(r.s_star);
  r.beta = quad_form(b, sv, sv);
  return r;
}

HypercubeResult beta_hypercube_naive(const SymMatrix& b, const EnumOptions& opts) {
  check_size(b, opts);
  const std::size_t n = b.size();
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  auto state = [n](std::uint64_t c) {
    SignVector s(n, 1);
    for (std::size_t i = 1; i < n; ++i) s[i] = ((c >> (n - 1 - i)) & 1u) ? 1 : -1;
    return s;
  };
  auto eval = [&](const SignVector& s) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) v += b(i, j) * s[i] * s[j];
    }
    return v;
  };
  std::vector<double> values(count);
  for (std::uint64_t c = 0; c < count; ++c) values[c] = eval(state(c));
  const double vmax = *std::max_element(values.begin(), values.end());
  const double threshold = vmax - opts.tie_rel * abs_sum(b);
  const auto first = std::find_if(values.begin(), values.end(), [&](double v) { return v >= threshold; });
  HypercubeResult r;
  r.s_star = state(static_cast<std::uint64_t>(first - values.begin()));
  const Vector sv = to_vector(r.s_star);
  r.beta = quad_form(b, sv, sv);
  return r;
}

ScanResult beta_opnorm(const SymMatrix& b, const EnumOptions& opts) {
  check_size(b, opts);
  const Layout layout = make_layout(b.size(), opts);
  std::vector<ScanResult> per_block(layout.blocks());
  for_each_block(layout.blocks(), resolve_threads(opts.threads), [&](std::size_t blk) {
    SignState st(b, layout.block_start(blk));
    ScanResult best{st.g_abs_sum(), st.signs()};
    const std::uint64_t count = layout.states_per_block();
    for (std::uint64_t t = 1; t < count; ++t) {
      st.flip(layout.index_of_low_bit(std::countr_zero(t)));
      const double v = st.g_abs_sum();
      if (v > best.value) best = {v, st.signs()};
    }
    per_block[blk] = std::move(best);
  });
  ScanResult out = per_block.front();
  for (const auto& r : per_block) {
    if (r.value > out.value) out = r;
  }
  return out;
}

ScanResult beta_binary(const SymMatrix& b, const EnumOptions& opts) {
  check_size(b, opts);
  const std::size_t n = b.size();
  // Full 2^n scan of {0,1}^n, partitioned on the leading k coordinates.
  const int k = std::min(static_cast<int>(n), std::max(0, resolve_partition_bits(n, opts.partition_bits)));
  const int m = static_cast<int>(n) - k;
  const std::size_t blocks = std::size_t{1} << k;
  std::vector<ScanResult> per_block(blocks);

  for_each_block(blocks, resolve_threads(opts.threads), [&](std::size_t blk) {
    std::vector<int> x(n, 0);
    for (int i = 0; i < k; ++i) x[i] = ((blk >> (k - 1 - i)) & 1u) ? 1 : 0;
    Vector g(n, 0.0);
    auto recompute = [&](double& v) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto r = b.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += r[j] * x[j];
        g[i] = acc;
      }
      v = 0.0;
      for (std::size_t i = 0; i < n; ++i) v += g[i] * x[i];
    };
    double v = 0.0;
    recompute(v);
    auto signs = [&] {
      SignVector s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = 2 * x[i] - 1;
      return s;
    };
    ScanResult best{v, signs()};
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t t = 1; t < count; ++t) {
      const std::size_t j = n - 1 - static_cast<std::size_t>(std::countr_zero(t));
      const auto col = b.row(j);
      if (x[j] == 0) {
        v += 2.0 * g[j] + b(j, j);
        for (std::size_t i = 0; i < n; ++i) g[i] += col[i];
        x[j] = 1;
      } else {
        v += -2.0 * g[j] + b(j, j);
        for (std::size_t i = 0; i < n; ++i) g[i] -= col[i];
        x[j] = 0;
      }
      if (t % kRecomputeEvery == 0) recompute(v);
      if (v > best.value) best = {v, signs()};
    }
    per_block[blk] = std::move(best);
  });
  ScanResult out = per_block.front();
  for (const auto& r : per_block) {
    if (r.value > out.value) out = r;
  }
  out.value *= 4.0;
  return out;
}

}  // namespace ngap
