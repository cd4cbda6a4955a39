#include "lieflow/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lieflow {

double Connection::metric_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        worst = std::max(worst, std::abs((*this)(k, i, j) + (*this)(k, j, i)));
  return worst;
}

const SquareMatrix& RicciDecomposition::part(int alpha) const {
  switch (alpha) {
    case 1: return r1;
    case 2: return r2;
    case 3: return r3;
    case 4: return r4;
    default: throw std::out_of_range("RicciDecomposition::part: alpha must be 1..4");
  }
}

Connection connection(const StructureConstants& c) {
  const std::size_t n = c.dim();
  Connection gamma(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        gamma(i, j, k) = 0.5 * (c(k, i, j) + c(j, k, i) + c(i, k, j));
  return gamma;
}

RicciDecomposition ricci_parts(const StructureConstants& c) {
  const std::size_t n = c.dim();
  RicciDecomposition out{SquareMatrix(n), SquareMatrix(n), SquareMatrix(n), SquareMatrix(n),
                         SquareMatrix(n), 0.0};

  std::vector<double> ad_trace(n, 0.0);  // C^m_ms
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t m = 0; m < n; ++m) ad_trace[s] += c(m, m, s);

  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      double p1 = 0, p2 = 0, p3 = 0, p4 = 0;
      for (std::size_t s = 0; s < n; ++s) {
        p2 += ad_trace[s] * (c(k, s, j) + c(j, s, k));
        for (std::size_t m = 0; m < n; ++m) {
          p1 += c(s, m, j) * c(m, s, k);
          p3 += c(j, s, m) * c(k, s, m);
          p4 += c(m, s, j) * c(m, s, k);
        }
      }
      out.r1(j, k) = -0.5 * p1;
      out.r2(j, k) = 0.5 * p2;
      out.r3(j, k) = 0.25 * p3;
      out.r4(j, k) = -0.5 * p4;
    }
  }
  out.total = out.r1 + out.r2 + out.r3 + out.r4;
  out.scalar = out.total.trace();
  return out;
}

SquareMatrix ricci_via_connection(const StructureConstants& c) {
  const std::size_t n = c.dim();
  const Connection g = connection(c);
  SquareMatrix r(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      double v = 0.0;
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t l = 0; l < n; ++l)
          v += g(j, k, l) * g(s, l, s) - g(s, k, l) * g(j, l, s) - c(l, s, j) * g(l, k, s);
      r(j, k) = v;
    }
  return r;
}

SquareMatrix ricci_combined(const StructureConstants& c) {
  const std::size_t n = c.dim();
  SquareMatrix r(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      double v = 0.0;
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t m = 0; m < n; ++m) {
          v += -0.5 * c(s, m, j) * c(m, s, k) + 0.25 * c(j, m, s) * c(k, m, s) -
               0.5 * c(s, m, j) * c(s, m, k) + 0.5 * c(m, m, s) * (c(k, s, j) + c(j, s, k));
        }
      r(j, k) = v;
    }
  return r;
}

SquareMatrix transform_symmetric(const SquareMatrix& a, const SquareMatrix& q) {
  if (a.dim() != q.dim()) throw std::invalid_argument("transform_symmetric: dimension mismatch");
  return q.transpose() * a * q;
}

}  // namespace lieflow
