#include "ngap/gap.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <string>

#include "ngap/errors.hpp"

namespace ngap {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Enumerate: return "enumerate";
    case Method::OpNorm: return "opnorm";
    case Method::Binary: return "binary";
    case Method::All: return "all";
  }
  return "unknown";
}

Method method_from_string(std::string_view s) {
  for (Method m : {Method::Enumerate, Method::OpNorm, Method::Binary, Method::All}) {
    if (to_string(m) == s) return m;
  }
  throw Error(ErrorCode::SchemaError, "unknown method '" + std::string(s) + "'");
}

Vector make_witness(const GapMatrices& gm, const SignVector& s_star) {
  const std::size_t n = gm.u.size();
  if (s_star.size() != n) throw Error(ErrorCode::DimensionMismatch, "sign vector size differs from n");
  Vector x = to_vector(s_star);
  const double shift = dot(x, gm.u) / dot(gm.u, gm.u);
  for (std::size_t i = 0; i < n; ++i) x[i] -= shift * gm.u[i];
  const double coef = dot(x, gm.z) / gm.m;
  const Vector ainv_x = gm.ainv.multiply(x);
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = coef * gm.z[i] - ainv_x[i];
  return y;
}

GapResult compute_gap(const GapMatrices& gm, const GapOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const SymMatrix& b = gm.b;
  const std::size_t n = b.size();
  GapResult r;

  const bool want_enum = opts.method == Method::Enumerate || opts.method == Method::All;
  const bool want_opnorm = opts.method == Method::OpNorm || opts.method == Method::All;
  const bool want_binary = opts.method == Method::Binary || opts.method == Method::All;

  if (n > opts.enumeration.max_enum_n) {
    if (!opts.bnb) {
      throw Error(ErrorCode::TooLarge, "n = " + std::to_string(n) + " exceeds max_enum_n = " +
                                           std::to_string(opts.enumeration.max_enum_n) +
                                           " and branch and bound is disabled");
    }
    BnbResult bb = branch_and_bound(b, opts.bnb_budget, opts.enumeration);
    r.beta = bb.beta;
    r.s_star = std::move(bb.s_star);
    r.certified = bb.certified;
    r.beta_by_hypercube = bb.beta;
    r.method = "branch-and-bound";
  } else {
    if (want_enum) {
      HypercubeResult h = beta_hypercube(b, opts.enumeration);
      r.beta = h.beta;
      r.s_star = std::move(h.s_star);
      r.beta_by_hypercube = h.beta;
      r.method = "gray-code";
    }
    if (want_opnorm) {
      ScanResult o = beta_opnorm(b, opts.enumeration);
      r.beta_by_opnorm = o.value;
      if (!want_enum) {
        r.beta = o.value;
        r.s_star = std::move(o.argmax);
        r.method = "opnorm";
      }
    }
    if (want_binary) {
      ScanResult o = beta_binary(b, opts.enumeration);
      r.beta_by_binary = o.value;
      if (!want_enum && !want_opnorm) {
        r.beta = o.value;
        r.s_star = std::move(o.argmax);
        r.method = "binary";
      }
    }
  }

  r.gamma = 2.0 / r.beta;
  r.witness_y0 = make_witness(gm, r.s_star);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

GapInequalityReport verify_gap_inequality(const MetricSpace& x, double p, double gamma,
                                          std::size_t trials, std::uint64_t seed,
                                          const std::optional<Vector>& witness) {
  const SymMatrix a = power_matrix(x, p).a;
  const std::size_t n = a.size();
  const double scale = a.max_abs();
  auto lhs = [&](double g, const Vector& alpha) {
    const double l1 = norm1(alpha);
    return 0.5 * g * l1 * l1 + quad_form(a, alpha, alpha);
  };

  GapInequalityReport rep;
  rep.trials = trials;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector alpha(n);
  for (std::size_t t = 0; t < trials; ++t) {
    double mean = 0.0;
    for (double& v : alpha) {
      v = unif(rng);
      mean += v;
    }
    mean /= static_cast<double>(n);
    for (double& v : alpha) v -= mean;
    const double l1 = norm1(alpha);
    const double denom = l1 * l1 * scale;
    const double value = lhs(gamma, alpha);
    if (value > 1e-9 * denom) ++rep.failures;
    const double scaled = denom > 0.0 ? value / denom : 0.0;
    rep.max_scaled_slack = t == 0 ? scaled : std::max(rep.max_scaled_slack, scaled);
  }

  if (witness) {
    rep.witness_residual = lhs(gamma, *witness);
    rep.maximality_confirmed = lhs(gamma * (1.0 + 1e-4), *witness) > 0.0;
  }
  return rep;
}

}  // namespace ngap
