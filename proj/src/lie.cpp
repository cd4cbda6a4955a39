#include "lieflow/lie.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lieflow/errors.hpp"

namespace lieflow {

void StructureConstants::set(std::size_t k, std::size_t i, std::size_t j, double v) {
  if (k >= n_ || i >= n_ || j >= n_) throw std::out_of_range("StructureConstants::set: index");
  if (!std::isfinite(v)) throw std::invalid_argument("StructureConstants::set: non-finite value");
  if (i == j) {
    if (v != 0.0) throw std::invalid_argument("StructureConstants::set: C^k_ii must be zero");
    return;
  }
  c_[(k * n_ + i) * n_ + j] = v;
  c_[(k * n_ + j) * n_ + i] = -v;
}

double StructureConstants::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

StructureConstants from_unimodular3(const Unimodular3Params& p) {
  StructureConstants c(3);
  c.set(0, 0, 1, p.b1);
  c.set(0, 0, 2, -p.b2);
  c.set(0, 1, 2, p.a1);
  c.set(1, 0, 1, p.b3);
  c.set(1, 0, 2, -p.a2);
  c.set(1, 1, 2, p.b2);
  c.set(2, 0, 1, p.a3);
  c.set(2, 0, 2, -p.b3);
  c.set(2, 1, 2, p.b1);
  return c;
}

Unimodular3Params to_unimodular3(const StructureConstants& c, double tol) {
  if (c.dim() != 3) throw DomainError("to_unimodular3: dimension must be 3");
  const double scale = std::max(1.0, c.max_abs());
  const double defect = unimodular_defect(c);
  if (defect > tol * scale) {
    throw DomainError("to_unimodular3: constants are not unimodular (defect " +
                      std::to_string(defect) + ")");
  }
  // Each b appears twice; average the two copies.
  Unimodular3Params p;
  p.a1 = c(0, 1, 2);
  p.a2 = -c(1, 0, 2);
  p.a3 = c(2, 0, 1);
  p.b1 = 0.5 * (c(0, 0, 1) + c(2, 1, 2));
  p.b2 = 0.5 * (-c(0, 0, 2) + c(1, 1, 2));
  p.b3 = 0.5 * (c(1, 0, 1) - c(2, 0, 2));
  return p;
}

double jacobi_defect(const StructureConstants& c) {
  const std::size_t n = c.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          double s = 0.0;
          for (std::size_t m = 0; m < n; ++m)
            s += c(m, i, j) * c(l, m, k) + c(m, j, k) * c(l, m, i) + c(m, k, i) * c(l, m, j);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

double unimodular_defect(const StructureConstants& c) {
  const std::size_t n = c.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t m = 0; m < n; ++m) s += c(m, m, i);
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

StructureConstants transform(const StructureConstants& c, const SquareMatrix& q) {
  const std::size_t n = c.dim();
  if (q.dim() != n) throw std::invalid_argument("transform: dimension mismatch");
  const SquareMatrix qinv = inverse(q);

  // Bracket of the new frame vectors in old coordinates, then re-expressed.
  StructureConstants out(n);
  std::vector<double> bracket(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::fill(bracket.begin(), bracket.end(), 0.0);
      for (std::size_t s = 0; s < n; ++s) {
        const double qsi = q(s, i);
        if (qsi == 0.0) continue;
        for (std::size_t m = 0; m < n; ++m) {
          const double w = qsi * q(m, j);
          if (w == 0.0) continue;
          for (std::size_t l = 0; l < n; ++l) bracket[l] += w * c(l, s, m);
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        double v = 0.0;
        for (std::size_t l = 0; l < n; ++l) v += bracket[l] * qinv(k, l);
        out.set(k, i, j, v);
      }
    }
  }
  return out;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"so3", "heisenberg", "e2", "e11", "sl2r", "abelian"};
  return names;
}

Unimodular3Params preset(std::string_view name) {
  if (name == "so3") return {1, 1, 1, 0, 0, 0};
  if (name == "heisenberg") return {1, 0, 0, 0, 0, 0};
  if (name == "e2") return {1, 1, 0, 0, 0, 0};
  if (name == "e11") return {1, -1, 0, 0, 0, 0};
  if (name == "sl2r") return {1, 1, -1, 0, 0, 0};
  if (name == "abelian") return {};
  throw UnknownPreset("unknown preset '" + std::string(name) + "'");
}

}  // namespace lieflow
