#pragma once

// The negative-type gap Gamma = 2 / beta of a strict instance, with beta
// obtained three ways from the PSD matrix B (ker B = [u]):
//
//   hypercube:  beta = max_{s in {-1,1}^n} (B s | s)
//   binary:     beta = 4 max_{x in {0,1}^n} (B x | x)
//   op-norm:    beta = max_{s in {-1,1}^n} ||B s||_1   (infinity -> 1 norm)
//
// and a witness y0 in F attaining equality in
//   (Gamma/2) ||y||_1^2 + (A y | y) <= 0.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ngap/linalg.hpp"
#include "ngap/metric.hpp"
#include "ngap/negtype.hpp"

namespace ngap {

using SignVector = std::vector<int>;

Vector to_vector(const SignVector& s);

struct EnumOptions {
  std::size_t max_enum_n = 24;
  /// worker threads for the partitioned scans; 0 means hardware concurrency
  unsigned threads = 1;
  /// the sign space is split into 2^k blocks by fixing s_2..s_{k+1};
  /// negative selects min(n - 1, 6). Results do not depend on threads.
  int partition_bits = -1;
  /// states whose value is within tie_rel * sum|B_ij| of the maximum are
  /// treated as ties
  double tie_rel = 1e-10;
};

struct HypercubeResult {
  /// (B s* | s*) recomputed from scratch
  double beta = 0.0;
  /// lexicographically smallest maximizer (-1 < +1) with s_1 = +1
  SignVector s_star;
};

/// Gray-code enumeration over the 2^(n-1) sign vectors with s_1 = +1,
/// single-flip O(n) updates of g = B s. Throws TooLarge when n >
/// max_enum_n.
HypercubeResult beta_hypercube(const SymMatrix& b, const EnumOptions& opts = {});

/// Plain O(2^n n^2) evaluation with the same tie rule; benchmark baseline.
HypercubeResult beta_hypercube_naive(const SymMatrix& b, const EnumOptions& opts = {});

struct ScanResult {
  double value = 0.0;
  /// first maximizer in scan order (for binary, mapped to 2x - 1)
  SignVector argmax;
};

/// max ||B s||_1 over sign vectors. Throws TooLarge.
ScanResult beta_opnorm(const SymMatrix& b, const EnumOptions& opts = {});

/// 4 * max (B x | x) over x in {0,1}^n. Throws TooLarge.
ScanResult beta_binary(const SymMatrix& b, const EnumOptions& opts = {});

struct BnbResult {
  double beta = 0.0;
  SignVector s_star;
  bool certified = false;
  std::uint64_t nodes = 0;
};

/// Best-first branch and bound over sign prefixes, then a lexicographic
/// depth-first pass for the tie-broken maximizer. Node bound: fixed part
/// plus 2 sum_j |(B_RF s_F)_j| plus lambda_max(B_RR) |R|. When the node
/// budget runs out the best sign vector found so far is returned with
/// certified = false. Throws TooLarge for n > 63.
BnbResult branch_and_bound(const SymMatrix& b, std::uint64_t budget, const EnumOptions& opts = {});

/// y0 = ((x|z)/M) z - A^{-1} x with x = s - ((s|u)/||u||^2) u.
Vector make_witness(const GapMatrices& gm, const SignVector& s_star);

enum class Method { Enumerate, OpNorm, Binary, All };
std::string_view to_string(Method m) noexcept;
Method method_from_string(std::string_view s);

struct GapOptions {
  Method method = Method::All;
  EnumOptions enumeration;
  /// use branch and bound when n exceeds max_enum_n
  bool bnb = false;
  std::uint64_t bnb_budget = 50'000'000;
};

struct GapResult {
  double gamma = 0.0;
  double beta = 0.0;
  SignVector s_star;
  Vector witness_y0;
  std::optional<double> beta_by_hypercube;
  std::optional<double> beta_by_opnorm;
  std::optional<double> beta_by_binary;
  /// "gray-code", "branch-and-bound", "opnorm", "binary"
  std::string method;
  bool certified = true;
  double wall_time = 0.0;
};

/// beta by the requested method(s), Gamma = 2 / beta, witness from s*.
GapResult compute_gap(const GapMatrices& gm, const GapOptions& opts = {});

struct GapInequalityReport {
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// max over trials of lhs / ((sum|alpha|)^2 max d^p)
  double max_scaled_slack = 0.0;
  /// (Gamma/2)||y0||_1^2 + (A y0|y0) at the witness
  std::optional<double> witness_residual;
  /// true when Gamma (1 + 1e-4) is violated at the witness
  std::optional<bool> maximality_confirmed;
};

/// Random alpha with sum alpha = 0 (uniform draws minus their mean) checked
/// against (Gamma/2)(sum|alpha_i|)^2 + sum alpha_i alpha_j d_ij^p
/// <= 1e-9 (sum|alpha_i|)^2 max d^p.
GapInequalityReport verify_gap_inequality(const MetricSpace& x, double p, double gamma,
                                          std::size_t trials, std::uint64_t seed,
                                          const std::optional<Vector>& witness = std::nullopt);

}  // namespace ngap
