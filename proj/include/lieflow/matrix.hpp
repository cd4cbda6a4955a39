#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lieflow {

/// Dense real n x n matrix, row-major.
///
/// Frame matrices follow the convention E_i' = Q(j, i) E_j: column i holds
/// the components of the i-th new frame vector, so the row index is the
/// upper (contravariant) index.
class SquareMatrix {
 public:
  SquareMatrix() = default;

  /// Zero matrix of dimension n.
  explicit SquareMatrix(std::size_t n);

  /// Builds from row-major entries; throws std::invalid_argument if the
  /// entry count is not n*n or any entry is non-finite.
  SquareMatrix(std::size_t n, std::span<const double> row_major);

  /// Nested initializer, e.g. SquareMatrix{{1, 2}, {3, 4}}.
  SquareMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SquareMatrix identity(std::size_t n);
  static SquareMatrix diagonal(std::span<const double> d);
  static SquareMatrix diagonal(std::initializer_list<double> d);

  std::size_t dim() const { return n_; }

  double& operator()(std::size_t row, std::size_t col) { return a_[row * n_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return a_[row * n_ + col]; }

  std::span<const double> data() const { return a_; }

  SquareMatrix transpose() const;
  double trace() const;
  double max_abs() const;
  bool all_finite() const;

  SquareMatrix& operator+=(const SquareMatrix& o);
  SquareMatrix& operator-=(const SquareMatrix& o);
  SquareMatrix& operator*=(double s);

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(SquareMatrix a, double s) { return a *= s; }
  friend SquareMatrix operator*(double s, SquareMatrix a) { return a *= s; }
  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Largest absolute entry of a - b. Dimensions must match.
double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b);

/// Largest absolute entry of a - a^T.
double asymmetry(const SquareMatrix& a);

/// Largest absolute strictly-lower entry.
double lower_part_max(const SquareMatrix& a);

/// Largest absolute off-diagonal entry.
double off_diagonal_max(const SquareMatrix& a);

/// Default relative pivot threshold for inverse/factorization.
inline constexpr double kSingularityThreshold = 1e-12;

/// Gauss-Jordan inverse with partial pivoting. Throws SingularMatrix when a
/// pivot falls below threshold * max_abs(m).
SquareMatrix inverse(const SquareMatrix& m, double threshold = kSingularityThreshold);

double determinant(const SquareMatrix& m);

struct TriOrthFactors {
  SquareMatrix b;  ///< upper triangular, positive diagonal
  SquareMatrix u;  ///< orthogonal
};

/// q = b * u with the triangular factor on the left (an RQ factorization).
/// Rows of q are orthonormalized from the last row to the first; the
/// positive-diagonal normalization makes the factors unique.
TriOrthFactors factor_tri_orth(const SquareMatrix& q,
                               double threshold = kSingularityThreshold);

struct SymmetricEigen {
  std::vector<double> values;  ///< descending
  SquareMatrix rotation;       ///< columns are eigenvectors
};

/// Cyclic Jacobi eigensolver. Throws NotSymmetric if |s - s^T| > 1e-10.
SymmetricEigen symmetric_eigen(const SquareMatrix& s);

}  // namespace lieflow
