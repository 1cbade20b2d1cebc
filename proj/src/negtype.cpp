#include "ngap/negtype.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ngap/errors.hpp"

namespace ngap {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::NotNegativeType: return "NotNegativeType";
    case Verdict::NegativeTypeNonStrict: return "NegativeTypeNonStrict";
    case Verdict::StrictNegativeType: return "StrictNegativeType";
  }
  return "Unknown";
}

Verdict verdict_from_string(std::string_view s) {
  for (Verdict v : {Verdict::NotNegativeType, Verdict::NegativeTypeNonStrict, Verdict::StrictNegativeType}) {
    if (to_string(v) == s) return v;
  }
  throw Error(ErrorCode::SchemaError, "unknown verdict '" + std::string(s) + "'");
}

namespace {

void require_functional(std::span<const double> u) {
  if (norm_inf(u) == 0.0) throw Error(ErrorCode::ZeroFunctional, "functional u must be nonzero");
}

struct Analysis {
  NegTypeReport report;
  std::optional<Factorization> fact;
};

Analysis analyse(const NegTypeMatrix& a, const Tolerances& tols) {
  const std::size_t n = a.a.size();
  if (n < 2) throw Error(ErrorCode::InvalidSize, "negative-type analysis needs at least two points");
  if (a.u.size() != n) throw Error(ErrorCode::DimensionMismatch, "functional size differs from matrix size");
  require_functional(a.u);

  Analysis out;
  NegTypeReport& r = out.report;
  const double scale = a.a.max_abs();

  if (a.p.has_value()) {
    r.has_positive_direction = true;
  } else {
    const Vector spectrum = eigenvalues_sym(a.a);
    r.has_positive_direction = spectrum.back() > tols.eig * scale;
    if (!r.has_positive_direction) {
      throw Error(ErrorCode::PositiveDirectionMissing,
                  "matrix is of negative type on all of R^n (largest eigenvalue " +
                      std::to_string(spectrum.back()) + ")");
    }
  }

  r.projected_spectrum = eigenvalues_sym(project_to_F(a.a, a.u));
  const double eig_threshold = tols.eig * scale;
  const double top = r.projected_spectrum.back();
  r.negative_type_marginal = std::abs(top) <= tols.marginal_factor * eig_threshold;

  Factorization f = factor(a.a, tols.singular);
  r.nonsingular = !f.singular;
  r.min_pivot_ratio = f.min_pivot_ratio;
  bool dot_nonzero = false;
  if (r.nonsingular) {
    const SymMatrix ainv = invert(f);
    Vector y = solve(f, a.u);
    const double d = dot(y, a.u);
    const double u1 = norm1(a.u);
    const double strict_threshold = tols.strict * ainv.max_abs() * u1 * u1;
    dot_nonzero = std::abs(d) > strict_threshold;
    r.strictness_marginal = std::abs(d) <= tols.marginal_factor * strict_threshold ||
                            f.min_pivot_ratio <= tols.marginal_factor * tols.singular;
    r.ainv_u = std::move(y);
    r.ainv_u_dot_u = d;
  } else {
    r.strictness_marginal = true;
  }

  if (top > eig_threshold) {
    r.verdict = Verdict::NotNegativeType;
  } else if (r.nonsingular && dot_nonzero) {
    r.verdict = Verdict::StrictNegativeType;
    const double m = 1.0 / *r.ainv_u_dot_u;
    Vector z = *r.ainv_u;
    for (double& v : z) v *= m;
    r.m = m;
    r.z = std::move(z);
  } else {
    r.verdict = Verdict::NegativeTypeNonStrict;
  }
  out.fact = std::move(f);
  return out;
}

}  // namespace

SymMatrix project_to_F(const SymMatrix& a, std::span<const double> u) {
  const std::size_t n = a.size();
  if (u.size() != n) throw Error(ErrorCode::DimensionMismatch, "functional size differs from matrix size");
  require_functional(u);
  if (n < 2) throw Error(ErrorCode::InvalidSize, "F is trivial for n = 1");

  // Householder reflector H = I - beta v v^T with H u proportional to e_1;
  // columns 2..n of H span u-perp.
  Vector v(u.begin(), u.end());
  const double unorm = norm2(u);
  v[0] += std::copysign(unorm, u[0]);
  const double beta = 2.0 / dot(v, v);
  const Vector w = a.multiply(v);
  const double vw = dot(v, w);

  SymMatrix out(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double hah = a(i, j) - beta * (v[i] * w[j] + w[i] * v[j]) + beta * beta * vw * v[i] * v[j];
      out.set(i - 1, j - 1, hah);
    }
  }
  return out;
}

NegTypeReport classify(const NegTypeMatrix& a, const Tolerances& tols) {
  return analyse(a, tols).report;
}

MZ compute_M_z(const NegTypeMatrix& a, const Tolerances& tols) {
  NegTypeReport r = classify(a, tols);
  if (r.verdict != Verdict::StrictNegativeType) {
    throw Error(ErrorCode::NotStrict, "verdict is " + std::string(to_string(r.verdict)));
  }
  return {*r.m, std::move(*r.z)};
}

GapMatrices build_B(const NegTypeMatrix& a, const Tolerances& tols) {
  Analysis an = analyse(a, tols);
  NegTypeReport& r = an.report;
  if (r.verdict != Verdict::StrictNegativeType) {
    throw Error(ErrorCode::NotStrict, "verdict is " + std::string(to_string(r.verdict)));
  }
  const double m = *r.m;
  SymMatrix ainv = invert(*an.fact);
  SymMatrix b = outer(*r.z, 1.0 / m) - ainv;
  SymMatrix c = outer(a.u, m) - a.a;
  return {std::move(b), std::move(c), std::move(ainv), m, std::move(*r.z), a.u};
}

double oscillation(std::span<const double> x, std::span<const double> u) {
  if (x.size() != u.size()) throw Error(ErrorCode::DimensionMismatch, "oscillation: size mismatch");
  require_functional(u);
  double o = 0.0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0.0) {
      o = std::max(o, std::abs(x[i]));
      continue;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (u[j] == 0.0) continue;
      o = std::max(o, std::abs(u[i] * x[j] - u[j] * x[i]) / (std::abs(u[i]) + std::abs(u[j])));
    }
  }
  return o;
}

}  // namespace ngap
