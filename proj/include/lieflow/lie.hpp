#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lieflow/matrix.hpp"

namespace lieflow {

/// Structure constants C^k_ij of [E_i, E_j] = C^k_ij E_k in a fixed frame.
///
/// Only entries with i < j are independent; writes go through set(), which
/// mirrors the value with opposite sign and leaves the diagonal zero, so
/// antisymmetry holds exactly for every value of this type.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t n) : n_(n), c_(n * n * n, 0.0) {}

  std::size_t dim() const { return n_; }

  /// C^k_ij (zero-based indices).
  double operator()(std::size_t k, std::size_t i, std::size_t j) const {
    return c_[(k * n_ + i) * n_ + j];
  }

  /// Sets C^k_ij = v and C^k_ji = -v. Throws std::invalid_argument for i == j
  /// with nonzero v or for non-finite v.
  void set(std::size_t k, std::size_t i, std::size_t j, double v);

  double max_abs() const;

  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> c_;
};

/// The six parameters of a three-dimensional unimodular algebra, in the
/// display order a1, a2, a3, b1, b2, b3.
struct Unimodular3Params {
  double a1 = 0, a2 = 0, a3 = 0;
  double b1 = 0, b2 = 0, b3 = 0;

  std::array<double, 6> as_array() const { return {a1, a2, a3, b1, b2, b3}; }
  static Unimodular3Params from_array(const std::array<double, 6>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }
  friend bool operator==(const Unimodular3Params&, const Unimodular3Params&) = default;
};

/// Nonzero entries (i < j, one-based in the comments):
///   C^1_12 = b1, C^1_13 = -b2, C^1_23 = a1
///   C^2_12 = b3, C^2_13 = -a2, C^2_23 = b2
///   C^3_12 = a3, C^3_13 = -b3, C^3_23 = b1
StructureConstants from_unimodular3(const Unimodular3Params& p);

/// Inverse of from_unimodular3. Throws DomainError if c is not 3D or its
/// unimodular defect exceeds tol * max(1, max|c|).
Unimodular3Params to_unimodular3(const StructureConstants& c, double tol = 1e-10);

/// max over (i,j,k,l) of |sum_s C^s_ij C^l_sk + C^s_jk C^l_si + C^s_ki C^l_sj|.
double jacobi_defect(const StructureConstants& c);

/// max_i |sum_s C^s_si|, the largest trace of ad(E_i).
double unimodular_defect(const StructureConstants& c);

/// Constants in the frame E'_i = q(j, i) E_j:
///   C'^k_ij = q(s, i) q(m, j) C^l_sm qinv(k, l).
/// Chaining composes as transform(transform(c, q1), q2) == transform(c, q1 * q2).
StructureConstants transform(const StructureConstants& c, const SquareMatrix& q);

/// Names accepted by preset(), in listing order.
const std::vector<std::string>& preset_names();

/// so3, heisenberg, e2, e11, sl2r, abelian. Throws UnknownPreset.
Unimodular3Params preset(std::string_view name);

}  // namespace lieflow
