#pragma once

// Seeded generators and independent oracles shared by the unit and
// acceptance suites. Nothing here calls the library routine it is used
// to check.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

#include "lieflow/lie.hpp"
#include "lieflow/matrix.hpp"

namespace lieflow::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  double normal() { return std::normal_distribution<double>()(eng_); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline Unimodular3Params random_params(Rng& rng, double lo, double hi) {
  return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi),
          rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

inline SquareMatrix random_matrix(Rng& rng, std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.normal();
  return m;
}

/// Random matrix with condition kept moderate by a diagonal shift.
inline SquareMatrix random_invertible(Rng& rng, std::size_t n) {
  SquareMatrix m = random_matrix(rng, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) += (m(i, i) >= 0 ? 2.0 : -2.0);
  return m;
}

inline SquareMatrix random_symmetric(Rng& rng, std::size_t n) {
  SquareMatrix m = random_matrix(rng, n);
  return 0.5 * (m + m.transpose());
}

inline SquareMatrix random_upper(Rng& rng, std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = rng.uniform(0.5, 2.0);
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  }
  return m;
}

/// Orthogonal factor of a random Gaussian matrix.
inline SquareMatrix random_orthogonal(Rng& rng, std::size_t n) {
  return factor_tri_orth(random_matrix(rng, n)).u;
}

/// Arbitrary antisymmetric array; generally violates the Jacobi identity.
inline StructureConstants random_antisymmetric(Rng& rng, std::size_t n, double scale = 1.0) {
  StructureConstants c(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) c.set(k, i, j, scale * rng.uniform(-1.0, 1.0));
  return c;
}

/// Semidirect product R x| R^2: [E3, E1] = p E1 + q E2, [E3, E2] = r E1 + s E2,
/// [E1, E2] = 0. Jacobi holds for every (p, q, r, s); unimodular iff p + s = 0.
inline StructureConstants semidirect3(double p, double q, double r, double s) {
  StructureConstants c(3);
  c.set(0, 2, 0, p);
  c.set(1, 2, 0, q);
  c.set(0, 2, 1, r);
  c.set(1, 2, 1, s);
  return c;
}

/// 3x3 inverse by the adjugate; independent of the library's Gauss-Jordan.
inline SquareMatrix adjugate_inverse3(const SquareMatrix& m) {
  const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                     m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                     m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  SquareMatrix inv(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const std::size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv(i, j) = (m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0)) / det;
    }
  return inv;
}

/// Raw five-index change of frame C'^k_ij = q(s,i) q(m,j) C^l_sm qinv(k,l),
/// evaluated over every (i, j) without using antisymmetry.
inline std::array<double, 27> raw_transform3(const StructureConstants& c, const SquareMatrix& q) {
  const SquareMatrix qinv = adjugate_inverse3(q);
  std::array<double, 27> out{};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double v = 0;
        for (std::size_t s = 0; s < 3; ++s)
          for (std::size_t m = 0; m < 3; ++m)
            for (std::size_t l = 0; l < 3; ++l) v += q(s, i) * q(m, j) * c(l, s, m) * qinv(k, l);
        out[(k * 3 + i) * 3 + j] = v;
      }
  return out;
}

inline double max_abs_diff(const StructureConstants& a, const StructureConstants& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.dim(); ++k)
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(k, i, j) - b(k, i, j)));
  return m;
}

inline double levi_civita(std::size_t i, std::size_t j, std::size_t k) {
  if (i == j || j == k || i == k) return 0.0;
  return ((i + 1) % 3 == j) ? 1.0 : -1.0;
}

/// Classical fixed-step RK4 for small state vectors, independent of the
/// library's matrix integrators.
template <std::size_t N, class F>
std::array<double, N> rk4_vec(F&& f, std::array<double, N> y, double t0, double t1, std::size_t steps) {
  const double h = (t1 - t0) / static_cast<double>(steps);
  auto axpy = [](const std::array<double, N>& a, double s, const std::array<double, N>& b) {
    std::array<double, N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  double t = t0;
  for (std::size_t k = 0; k < steps; ++k) {
    const auto k1 = f(t, y);
    const auto k2 = f(t + h / 2, axpy(y, h / 2, k1));
    const auto k3 = f(t + h / 2, axpy(y, h / 2, k2));
    const auto k4 = f(t + h, axpy(y, h, k3));
    for (std::size_t i = 0; i < N; ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    t = t0 + static_cast<double>(k + 1) * h;
  }
  return y;
}

}  // namespace lieflow::testing
