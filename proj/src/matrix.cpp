#include "lieflow/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "lieflow/errors.hpp"

namespace lieflow {

SquareMatrix::SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

SquareMatrix::SquareMatrix(std::size_t n, std::span<const double> row_major)
    : n_(n), a_(row_major.begin(), row_major.end()) {
  if (a_.size() != n * n) {
    throw std::invalid_argument("SquareMatrix: expected " + std::to_string(n * n) +
                                " entries, got " + std::to_string(a_.size()));
  }
  if (!all_finite()) throw std::invalid_argument("SquareMatrix: non-finite entry");
}

SquareMatrix::SquareMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : n_(rows.size()) {
  a_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw std::invalid_argument("SquareMatrix: ragged initializer");
    a_.insert(a_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw std::invalid_argument("SquareMatrix: non-finite entry");
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::diagonal(std::span<const double> d) {
  SquareMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  if (!m.all_finite()) throw std::invalid_argument("SquareMatrix: non-finite entry");
  return m;
}

SquareMatrix SquareMatrix::diagonal(std::initializer_list<double> d) {
  return diagonal(std::span<const double>(d.begin(), d.size()));
}

SquareMatrix SquareMatrix::transpose() const {
  SquareMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double SquareMatrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

double SquareMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool SquareMatrix::all_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

SquareMatrix& SquareMatrix::operator+=(const SquareMatrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("SquareMatrix: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

SquareMatrix& SquareMatrix::operator-=(const SquareMatrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("SquareMatrix: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

SquareMatrix& SquareMatrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("SquareMatrix: dimension mismatch");
  const std::size_t n = a.n_;
  SquareMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) { return (a - b).max_abs(); }

double asymmetry(const SquareMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - a(j, i)));
  return m;
}

double lower_part_max(const SquareMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < i; ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

double off_diagonal_max(const SquareMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

SquareMatrix inverse(const SquareMatrix& m, double threshold) {
  const std::size_t n = m.dim();
  const double scale = m.max_abs();
  if (n == 0) return m;
  if (scale == 0.0) throw SingularMatrix("inverse: zero matrix");

  SquareMatrix a = m;
  SquareMatrix inv = SquareMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) <= threshold * scale) {
      throw SingularMatrix("inverse: pivot " + std::to_string(a(piv, col)) +
                           " below relative threshold in column " + std::to_string(col));
    }
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const double p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

double determinant(const SquareMatrix& m) {
  const std::size_t n = m.dim();
  SquareMatrix a = m;
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) return 0.0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

TriOrthFactors factor_tri_orth(const SquareMatrix& q, double threshold) {
  const std::size_t n = q.dim();
  const double scale = q.max_abs();
  if (scale == 0.0) throw SingularMatrix("factor_tri_orth: zero matrix");

  // Row i of q equals sum_{j >= i} b(i, j) * u_row(j). Working upward, the
  // rows of u below i are already fixed, so b(i, j) for j > i are the
  // projections and the remainder gives b(i, i) * u_row(i).
  SquareMatrix b(n), u(n);
  std::vector<double> v(n);
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = 0; k < n; ++k) v[k] = q(ii, k);
    // Two Gram-Schmidt passes keep u orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = ii + 1; j < n; ++j) {
        double p = 0.0;
        for (std::size_t k = 0; k < n; ++k) p += v[k] * u(j, k);
        for (std::size_t k = 0; k < n; ++k) v[k] -= p * u(j, k);
        b(ii, j) += p;
      }
    }
    const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (norm <= threshold * scale) {
      throw SingularMatrix("factor_tri_orth: row " + std::to_string(ii) +
                           " is linearly dependent on the rows below it");
    }
    b(ii, ii) = norm;
    for (std::size_t k = 0; k < n; ++k) u(ii, k) = v[k] / norm;
  }
  return {std::move(b), std::move(u)};
}

namespace {

double off_frobenius(const SquareMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SymmetricEigen symmetric_eigen(const SquareMatrix& s) {
  constexpr double kSymmetryTol = 1e-10;
  constexpr double kOffTol = 1e-12;
  constexpr int kMaxSweeps = 100;

  if (asymmetry(s) > kSymmetryTol) {
    throw NotSymmetric("symmetric_eigen: asymmetry " + std::to_string(asymmetry(s)));
  }
  const std::size_t n = s.dim();
  SquareMatrix a = s;
  // Symmetrize exactly so rotations act on a genuinely symmetric matrix.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (s(i, j) + s(j, i));
  SquareMatrix v = SquareMatrix::identity(n);

  const double thresh = kOffTol * std::max(1.0, a.max_abs());
  for (int sweep = 0; sweep < kMaxSweeps && off_frobenius(a) > thresh; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle zeroing a(p, q); t = tan(theta), smaller root.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  SymmetricEigen out{std::vector<double>(n), SquareMatrix(n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) out.rotation(r, c) = v(r, order[c]);
  }
  return out;
}

}  // namespace lieflow
