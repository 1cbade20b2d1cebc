#include "ngap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ngap/errors.hpp"

namespace ngap {

namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

SymMatrix::SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "matrix dimension must be at least 1");
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
  return m;
}

SymMatrix SymMatrix::constant(std::size_t n, double value) {
  SymMatrix m(n);
  std::fill(m.data_.begin(), m.data_.end(), value);
  return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<Vector>& rows, double rel_tol) {
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(i + 1) + " has " +
                                                    std::to_string(rows[i].size()) +
                                                    " entries, expected " + std::to_string(n));
    }
    for (double v : rows[i]) scale = std::max(scale, std::abs(v));
  }
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double a = rows[i][j];
      const double b = rows[j][i];
      if (std::abs(a - b) > rel_tol * scale) {
        throw Error(ErrorCode::AsymmetricInput, "entry (" + std::to_string(i + 1) + "," +
                                                    std::to_string(j + 1) + ") = " +
                                                    std::to_string(a) + " but (" +
                                                    std::to_string(j + 1) + "," +
                                                    std::to_string(i + 1) + ") = " +
                                                    std::to_string(b));
      }
      m.set(i, j, a == b ? a : 0.5 * (a + b));
    }
  }
  return m;
}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<Vector> r;
  r.reserve(rows.size());
  for (const auto& row : rows) r.emplace_back(row);
  return from_rows(r);
}

double SymMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::frobenius() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double SymMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i];
  return t;
}

Vector SymMatrix::multiply(std::span<const double> x) const {
  require_same(x.size(), n_, "matrix-vector product");
  Vector y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* r = data_.data() + i * n_;
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

SymMatrix SymMatrix::operator+(const SymMatrix& other) const {
  require_same(n_, other.n_, "matrix sum");
  SymMatrix r(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += other.data_[k];
  return r;
}

SymMatrix SymMatrix::operator-(const SymMatrix& other) const {
  require_same(n_, other.n_, "matrix difference");
  SymMatrix r(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= other.data_[k];
  return r;
}

SymMatrix SymMatrix::operator*(double s) const {
  SymMatrix r(*this);
  for (double& v : r.data_) v *= s;
  return r;
}

SymMatrix SymMatrix::principal(std::span<const std::size_t> idx) const {
  SymMatrix r(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) r.data_[i * idx.size() + j] = (*this)(idx[i], idx[j]);
  }
  return r;
}

SymMatrix SymMatrix::permuted(std::span<const std::size_t> perm) const {
  require_same(perm.size(), n_, "permutation");
  return principal(perm);
}

Matrix multiply(const SymMatrix& a, const SymMatrix& b) {
  require_same(a.size(), b.size(), "matrix product");
  const std::size_t n = a.size();
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

double identity_deviation(const Matrix& m) {
  double dev = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      dev = std::max(dev, std::abs(m(i, j) - (i == j ? 1.0 : 0.0)));
    }
  }
  return dev;
}

SymMatrix outer(std::span<const double> x, double s) {
  SymMatrix r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i; j < x.size(); ++j) r.set(i, j, s * x[i] * x[j]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Bunch-Kaufman

namespace {

void swap_symmetric(Matrix& w, Matrix& lower, std::vector<std::size_t>& perm, std::size_t k,
                    std::size_t a, std::size_t b) {
  if (a == b) return;
  const std::size_t n = w.rows;
  for (std::size_t j = 0; j < n; ++j) std::swap(w(a, j), w(b, j));
  for (std::size_t i = 0; i < n; ++i) std::swap(w(i, a), w(i, b));
  for (std::size_t j = 0; j < k; ++j) std::swap(lower(a, j), lower(b, j));
  std::swap(perm[a], perm[b]);
}

}  // namespace

Factorization factor(const SymMatrix& m, double tol) {
  const std::size_t n = m.size();
  const double alpha = (1.0 + std::sqrt(17.0)) / 8.0;

  Factorization f;
  f.n = n;
  f.permutation.resize(n);
  std::iota(f.permutation.begin(), f.permutation.end(), std::size_t{0});
  f.lower = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) f.lower(i, i) = 1.0;
  f.diag.assign(n, 0.0);
  f.subdiag.assign(n, 0.0);
  f.block.assign(n, 0);
  f.scale = m.max_abs();

  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(i, j) = m(i, j);
  }

  const double threshold = tol * f.scale;
  double min_pivot = std::numeric_limits<double>::infinity();
  auto record_pivot = [&](double magnitude) {
    min_pivot = std::min(min_pivot, magnitude);
    if (!(magnitude >= threshold) || magnitude == 0.0) f.singular = true;
  };

  std::size_t k = 0;
  while (k < n) {
    const double absakk = std::abs(w(k, k));
    std::size_t imax = k;
    double colmax = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(w(i, k)) > colmax) {
        colmax = std::abs(w(i, k));
        imax = i;
      }
    }

    if (std::max(absakk, colmax) == 0.0) {
      // Zero column: nothing to eliminate.
      f.block[k] = 1;
      f.diag[k] = 0.0;
      record_pivot(0.0);
      ++k;
      continue;
    }

    int size = 1;
    std::size_t kp = k;
    if (absakk < alpha * colmax) {
      double rowmax = 0.0;
      for (std::size_t j = k; j < n; ++j) {
        if (j != imax) rowmax = std::max(rowmax, std::abs(w(imax, j)));
      }
      if (absakk * rowmax >= alpha * colmax * colmax) {
        kp = k;
      } else if (std::abs(w(imax, imax)) >= alpha * rowmax) {
        kp = imax;
      } else {
        kp = imax;
        size = 2;
      }
    }

    if (size == 1) {
      swap_symmetric(w, f.lower, f.permutation, k, k, kp);
      const double d = w(k, k);
      f.block[k] = 1;
      f.diag[k] = d;
      record_pivot(std::abs(d));
      if (d != 0.0) {
        for (std::size_t i = k + 1; i < n; ++i) f.lower(i, k) = w(i, k) / d;
        for (std::size_t i = k + 1; i < n; ++i) {
          const double li = f.lower(i, k);
          if (li == 0.0) continue;
          for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= li * w(j, k);
        }
      }
      ++k;
    } else {
      swap_symmetric(w, f.lower, f.permutation, k, k + 1, kp);
      const double a = w(k, k);
      const double b = w(k + 1, k);
      const double c = w(k + 1, k + 1);
      f.block[k] = 2;
      f.block[k + 1] = 0;
      f.diag[k] = a;
      f.diag[k + 1] = c;
      f.subdiag[k] = b;
      const double mid = 0.5 * (a + c);
      const double rad = std::hypot(0.5 * (a - c), b);
      record_pivot(std::min(std::abs(mid - rad), std::abs(mid + rad)));
      const double det = a * c - b * b;
      if (det != 0.0) {
        for (std::size_t i = k + 2; i < n; ++i) {
          const double p = w(i, k);
          const double q = w(i, k + 1);
          f.lower(i, k) = (p * c - q * b) / det;
          f.lower(i, k + 1) = (q * a - p * b) / det;
        }
        for (std::size_t i = k + 2; i < n; ++i) {
          const double l1 = f.lower(i, k);
          const double l2 = f.lower(i, k + 1);
          for (std::size_t j = k + 2; j < n; ++j) w(i, j) -= l1 * w(j, k) + l2 * w(j, k + 1);
        }
      }
      k += 2;
    }
  }

  f.min_pivot_ratio = f.scale > 0.0 ? min_pivot / f.scale : 0.0;
  return f;
}

Vector solve(const Factorization& f, std::span<const double> b) {
  if (f.singular) throw Error(ErrorCode::SingularSystem, "cannot solve with a singular factorization");
  require_same(b.size(), f.n, "solve right-hand side");
  const std::size_t n = f.n;
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = b[f.permutation[i]];

  for (std::size_t j = 0; j < n; ++j) {
    const double yj = y[j];
    if (yj == 0.0) continue;
    for (std::size_t i = j + 1; i < n; ++i) y[i] -= f.lower(i, j) * yj;
  }
  for (std::size_t k = 0; k < n;) {
    if (f.block[k] == 1) {
      y[k] /= f.diag[k];
      ++k;
    } else {
      const double a = f.diag[k];
      const double bb = f.subdiag[k];
      const double c = f.diag[k + 1];
      const double det = a * c - bb * bb;
      const double p = y[k];
      const double q = y[k + 1];
      y[k] = (c * p - bb * q) / det;
      y[k + 1] = (a * q - bb * p) / det;
      k += 2;
    }
  }
  for (std::size_t j = n; j-- > 0;) {
    double s = y[j];
    for (std::size_t i = j + 1; i < n; ++i) s -= f.lower(i, j) * y[i];
    y[j] = s;
  }

  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[f.permutation[i]] = y[i];
  return x;
}

SymMatrix invert(const Factorization& f) {
  if (f.singular) throw Error(ErrorCode::SingularSystem, "cannot invert a singular factorization");
  const std::size_t n = f.n;
  Matrix cols(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector x = solve(f, e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) cols(i, j) = x[i];
  }
  SymMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) r.set(i, j, 0.5 * (cols(i, j) + cols(j, i)));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi

EigenDecomposition eigen_sym(const SymMatrix& m) {
  const std::size_t n = m.size();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
  }
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  const double target = 1e-12 * m.frobenius();
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    }
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  EigenDecomposition out{Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Vector eigenvalues_sym(const SymMatrix& m) { return eigen_sym(m).values; }

double dot(std::span<const double> x, std::span<const double> y) {
  require_same(x.size(), y.size(), "inner product");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double quad_form(const SymMatrix& m, std::span<const double> x, std::span<const double> y) {
  require_same(x.size(), m.size(), "quadratic form");
  require_same(y.size(), m.size(), "quadratic form");
  return dot(m.multiply(x), y);
}

double norm1(std::span<const double> x) noexcept {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

double norm2(std::span<const double> x) noexcept {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double norm_inf(std::span<const double> x) noexcept {
  double s = 0.0;
  for (double v : x) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace ngap
