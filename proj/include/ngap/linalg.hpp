#pragma once

// Dense symmetric linear algebra for small matrices (n up to a few hundred).
//
// Everything here is a pure function of its inputs. The kernel covers what
// the negative-type pipeline needs: a pivoted symmetric-indefinite
// factorization (distance matrices have a zero diagonal and mixed-sign
// spectra, so Cholesky is not an option), solves and inverses built on it,
// a cyclic Jacobi eigenvalue solver, and bilinear forms.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ngap {

using Vector = std::vector<double>;

/// Symmetric n-by-n matrix with full row-major storage. Symmetry is an
/// invariant: from_rows rejects asymmetric input and set() writes both
/// triangles.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t n);

  static SymMatrix identity(std::size_t n);
  static SymMatrix constant(std::size_t n, double value);

  /// Throws AsymmetricInput when |a(i,j) - a(j,i)| exceeds
  /// rel_tol * max|a|, DimensionMismatch when not square or empty.
  /// Accepted input is symmetrized to the exact average.
  static SymMatrix from_rows(const std::vector<Vector>& rows, double rel_tol = 0.0);
  static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value) noexcept {
    data_[i * n_ + j] = value;
    data_[j * n_ + i] = value;
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * n_, n_};
  }

  double max_abs() const noexcept;
  double frobenius() const noexcept;
  double trace() const noexcept;

  Vector multiply(std::span<const double> x) const;

  SymMatrix operator+(const SymMatrix& other) const;
  SymMatrix operator-(const SymMatrix& other) const;
  SymMatrix operator*(double s) const;

  /// Principal submatrix on the given (sorted or unsorted) indices.
  SymMatrix principal(std::span<const std::size_t> idx) const;

  /// Symmetric permutation: result(i,j) = a(perm[i], perm[j]).
  SymMatrix permuted(std::span<const std::size_t> perm) const;

  bool operator==(const SymMatrix&) const = default;

 private:
  std::size_t n_;
  Vector data_;
};

/// General dense row-major matrix; used for products of symmetric factors
/// (which are not symmetric in general) and for orthonormal bases.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vector data;

  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) noexcept { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data[i * cols + j]; }
};

Matrix multiply(const SymMatrix& a, const SymMatrix& b);

/// max_ij |m(i,j) - delta_ij|
double identity_deviation(const Matrix& m);

/// s * x x^T
SymMatrix outer(std::span<const double> x, double s = 1.0);

/// P A P^T = L D L^T with unit lower-triangular L and block-diagonal D
/// (1x1 and 2x2 blocks), Bunch-Kaufman partial pivoting.
struct Factorization {
  std::size_t n = 0;
  /// working index i corresponds to original index permutation[i]
  std::vector<std::size_t> permutation;
  Matrix lower{0, 0};
  /// D stored as diagonal plus subdiagonal (nonzero only inside 2x2 blocks)
  Vector diag;
  Vector subdiag;
  /// 1 or 2 for the block starting at each working index, 0 for the second
  /// row of a 2x2 block
  std::vector<int> block;
  bool singular = false;
  /// smallest pivot magnitude divided by max|m(i,j)|; a 2x2 pivot counts by
  /// the smaller absolute eigenvalue of its block
  double min_pivot_ratio = 0.0;
  double scale = 0.0;
};

inline constexpr double kDefaultSingularTol = 1e-10;

/// Never throws; singularity is reported through Factorization::singular.
Factorization factor(const SymMatrix& m, double tol = kDefaultSingularTol);

/// Throws SingularSystem when f is singular, DimensionMismatch on size.
Vector solve(const Factorization& f, std::span<const double> b);

SymMatrix invert(const Factorization& f);

/// Full spectrum in ascending order (cyclic Jacobi).
Vector eigenvalues_sym(const SymMatrix& m);

struct EigenDecomposition {
  Vector values;    // ascending
  Matrix vectors;   // column k is the eigenvector of values[k]
};
EigenDecomposition eigen_sym(const SymMatrix& m);

/// (m x | y); throws DimensionMismatch.
double quad_form(const SymMatrix& m, std::span<const double> x, std::span<const double> y);

double dot(std::span<const double> x, std::span<const double> y);
double norm1(std::span<const double> x) noexcept;
double norm2(std::span<const double> x) noexcept;
double norm_inf(std::span<const double> x) noexcept;

}  // namespace ngap
