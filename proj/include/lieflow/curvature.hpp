#pragma once

#include <cstddef>
#include <vector>

#include "lieflow/lie.hpp"
#include "lieflow/matrix.hpp"

namespace lieflow {

/// Levi-Civita connection of the metric in which the frame is orthonormal:
/// nabla_{E_i} E_j = gamma(i, j, k) E_k.
class Connection {
 public:
  explicit Connection(std::size_t n) : n_(n), g_(n * n * n, 0.0) {}

  std::size_t dim() const { return n_; }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) { return g_[(i * n_ + j) * n_ + k]; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return g_[(i * n_ + j) * n_ + k];
  }

  /// max |Gamma^j_ki + Gamma^i_kj|; zero for a metric connection.
  double metric_defect() const;

 private:
  std::size_t n_;
  std::vector<double> g_;
};

/// Ricci tensor in an orthonormal frame split into four parts:
///   r1_jk = -1/2 C^s_mj C^m_sk          (Killing-form part)
///   r2_jk =  1/2 C^m_ms (C^k_sj + C^j_sk) (vanishes for unimodular algebras)
///   r3_jk =  1/4 C^j_sm C^k_sm
///   r4_jk = -1/2 C^m_sj C^m_sk
struct RicciDecomposition {
  SquareMatrix r1, r2, r3, r4;
  SquareMatrix total;  ///< r1 + r2 + r3 + r4
  double scalar = 0;   ///< trace(total)

  const SquareMatrix& part(int alpha) const;
};

/// Gamma^k_ij = 1/2 (C^k_ij + C^j_ki + C^i_kj).
Connection connection(const StructureConstants& c);

RicciDecomposition ricci_parts(const StructureConstants& c);

/// Ricci by contracting the curvature of the connection:
///   R_jk = Gamma^l_jk Gamma^s_sl - Gamma^l_sk Gamma^s_jl - C^l_sj Gamma^s_lk.
/// This route assumes the Jacobi identity; on antisymmetric arrays that
/// violate it the result differs from ricci_parts.
SquareMatrix ricci_via_connection(const StructureConstants& c);

/// Single-expression form of the sum r1 + r2 + r3 + r4, written with its
/// own index loops.
SquareMatrix ricci_combined(const StructureConstants& c);

/// Covariant change of frame of a bilinear form: (q^T a q)_ij = q(p, i) q(r, j) a(p, r).
SquareMatrix transform_symmetric(const SquareMatrix& a, const SquareMatrix& q);

}  // namespace lieflow
