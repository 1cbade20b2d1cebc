#pragma once

// Negative-type classification of A on F = {x : (x|u) = 0} and the derived
// objects of the strict case.
//
// With A nonsingular and (A^{-1}u|u) != 0, A is strictly of negative type
// on F; the supremum M of (Ax|x) over F_1 = {(x|u) = 1} is then attained at
// the unique z = M A^{-1} u, with M = 1 / (A^{-1}u|u). From these:
//
//   C = M u u^T - A            positive semi-definite, ker C = [z]
//   B = (1/M) z z^T - A^{-1}   positive semi-definite, ker B = [u]
//
// and (B A x | A x) = (C x | x) for every x.

#include <optional>
#include <string_view>

#include "ngap/linalg.hpp"
#include "ngap/metric.hpp"

namespace ngap {

enum class Verdict { NotNegativeType, NegativeTypeNonStrict, StrictNegativeType };

std::string_view to_string(Verdict v) noexcept;
Verdict verdict_from_string(std::string_view s);

struct Tolerances {
  /// singularity threshold for the factorization, relative to max|A|
  double singular = kDefaultSingularTol;
  /// |(A^{-1}u|u)| must exceed strict * max|A^{-1}| * ||u||_1^2
  double strict = 1e-9;
  /// projected eigenvalues above eig * max|A| rule out negative type
  double eig = 1e-9;
  /// a quantity within this factor of its threshold is flagged marginal
  double marginal_factor = 10.0;
};

struct NegTypeReport {
  Verdict verdict = Verdict::NotNegativeType;
  Vector projected_spectrum;
  bool has_positive_direction = false;
  bool nonsingular = false;
  double min_pivot_ratio = 0.0;
  std::optional<Vector> ainv_u;
  std::optional<double> ainv_u_dot_u;
  std::optional<double> m;
  std::optional<Vector> z;
  bool negative_type_marginal = false;
  bool strictness_marginal = false;
};

struct GapMatrices {
  SymMatrix b;
  SymMatrix c;
  SymMatrix ainv;
  double m;
  Vector z;
  Vector u;
};

/// Q^T A Q for an orthonormal basis Q of u-perp (Householder reflector).
/// Throws ZeroFunctional.
SymMatrix project_to_F(const SymMatrix& a, std::span<const double> u);

/// Throws InvalidSize for fewer than two points and, for raw matrices
/// (no exponent), PositiveDirectionMissing when A has no positive
/// eigenvalue. Matrices built from metric spaces always have a positive
/// direction: (Aw|w) = d(x_i,x_j)^p / 2 at w = (e_i + e_j) / 2.
NegTypeReport classify(const NegTypeMatrix& a, const Tolerances& tols = {});

struct MZ {
  double m;
  Vector z;
};

/// Throws NotStrict.
MZ compute_M_z(const NegTypeMatrix& a, const Tolerances& tols = {});

/// Throws NotStrict.
GapMatrices build_B(const NegTypeMatrix& a, const Tolerances& tols = {});

/// Oscillation of x with respect to u:
///   max( max_{i,j in supp u} |u_i x_j - u_j x_i| / (|u_i| + |u_j|),
///        max_{i not in supp u} |x_i| ).
/// For u = 1 this is max_ij |x_i - x_j| / 2. Throws ZeroFunctional.
double oscillation(std::span<const double> x, std::span<const double> u);

}  // namespace ngap
