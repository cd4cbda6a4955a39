#include "lieflow/catalog3d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lieflow/curvature.hpp"
#include "lieflow/errors.hpp"

namespace lieflow {

std::string_view to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::CaseI: return "CaseI";
    case CaseLabel::CaseII: return "CaseII";
    case CaseLabel::CaseIII: return "CaseIII";
    case CaseLabel::NonDiagonalR1: return "NonDiagonalR1";
  }
  return "?";
}

std::array<double, 3> diagonality_residuals(const Unimodular3Params& p) {
  return {p.b1 * p.b3 - p.a3 * p.b2, p.b2 * p.b3 - p.a2 * p.b1, p.b1 * p.b2 - p.a1 * p.b3};
}

CaseLabel classify(const Unimodular3Params& p, double tol) {
  double scale = 1.0;
  for (double v : p.as_array()) scale = std::max(scale, std::abs(v));

  const std::array<double, 3> b = {p.b1, p.b2, p.b3};
  const auto nonzero_b =
      std::count_if(b.begin(), b.end(), [&](double v) { return std::abs(v) > tol * scale; });
  if (nonzero_b == 0) return CaseLabel::CaseI;

  const auto res = diagonality_residuals(p);
  const bool diagonal =
      std::all_of(res.begin(), res.end(), [&](double r) { return std::abs(r) <= tol * scale * scale; });
  if (!diagonal) return CaseLabel::NonDiagonalR1;
  if (nonzero_b == 1) return CaseLabel::CaseII;
  if (nonzero_b == 3) return CaseLabel::CaseIII;
  // Two nonzero b's cannot satisfy all three residuals.
  return CaseLabel::NonDiagonalR1;
}

SquareMatrix r1_display(const Unimodular3Params& p) {
  const auto [a1, a2, a3, b1, b2, b3] = p.as_array();
  return SquareMatrix{
      {-2 * a2 * a3 + 2 * b3 * b3, 2 * a3 * b2 - 2 * b1 * b3, 2 * a2 * b1 - 2 * b2 * b3},
      {2 * a3 * b2 - 2 * b1 * b3, -2 * a1 * a3 + 2 * b1 * b1, -2 * b1 * b2 + 2 * a1 * b3},
      {2 * a2 * b1 - 2 * b2 * b3, -2 * b1 * b2 + 2 * a1 * b3, -2 * a1 * a2 + 2 * b2 * b2},
  };
}

R1Diagonalization diagonalize_r1(const Unimodular3Params& p) {
  const StructureConstants c = from_unimodular3(p);
  const SquareMatrix r1 = ricci_parts(c).r1;
  if (off_diagonal_max(r1) <= 1e-14 * std::max(1.0, r1.max_abs())) {
    return {SquareMatrix::identity(3), c};
  }
  SquareMatrix rot = symmetric_eigen(r1).rotation;
  if (determinant(rot) < 0) {
    for (std::size_t r = 0; r < 3; ++r) rot(r, 2) = -rot(r, 2);
  }
  StructureConstants c_new = transform(c, rot);
  return {std::move(rot), std::move(c_new)};
}

Unimodular3Params solve_a(double b1, double b2, double b3) {
  if (b1 == 0 || b2 == 0 || b3 == 0) throw DomainError("solve_a: all b must be nonzero");
  return {b1 * b2 / b3, b2 * b3 / b1, b1 * b3 / b2, b1, b2, b3};
}

Case3Angles case3_angles(double b1, double b2, double b3) {
  if (!(b1 > 0 && b2 > 0 && b3 > 0) || !std::isfinite(b1 * b2 * b3)) {
    throw DomainError("case3: b1, b2, b3 must be positive and finite");
  }
  // Quotient of the first two relations: tan(beta)^2 = b2^2 / b1^2.
  // Product of the first two: b1 b2 = rho cos(alpha). Substituting rho into
  // the third: tan(alpha) = b3 sqrt(b1^2 + b2^2) / (b1 b2).
  Case3Angles out;
  out.beta = std::atan2(b2, b1);
  out.alpha = std::atan2(b3 * std::hypot(b1, b2), b1 * b2);
  const double ca = std::cos(out.alpha);
  if (!(ca > 0) || !(std::sin(out.alpha) > 0)) throw DomainError("case3: alpha outside (0, pi/2)");
  out.rho = b1 * b2 / ca;
  if (!(out.rho > 0) || !std::isfinite(out.rho)) throw DomainError("case3: rho not positive");
  return out;
}

double case3_reduced_constant(const Case3Angles& a) {
  const double sa = std::sin(a.alpha), ca = std::cos(a.alpha);
  const double sb = std::sin(a.beta), cb = std::cos(a.beta);
  const double radicand = a.rho / (ca * cb * sb);
  if (!(sa > 0) || !(radicand > 0) || !std::isfinite(radicand)) {
    throw DomainError("case3: non-positive radicand or denominator");
  }
  return std::sqrt(radicand) / sa;
}

Case3Reduction case3_reduce(double b1, double b2, double b3) {
  const Case3Angles ang = case3_angles(b1, b2, b3);
  const double sa = std::sin(ang.alpha), ca = std::cos(ang.alpha);
  const double sb = std::sin(ang.beta), cb = std::cos(ang.beta);

  // New frame vectors, as component rows:
  //   E1 = (cos a, sin a sin b, sin a cos b)
  //   E2 = (sin a, -cos a sin b, -cos a cos b)
  //   E3 = (0, cos b, -sin b)
  // They become the columns of the frame matrix.
  const SquareMatrix rows{
      {ca, sa * sb, sa * cb},
      {sa, -ca * sb, -ca * cb},
      {0.0, cb, -sb},
  };
  Case3Reduction out;
  out.angles = ang;
  out.frame = rows.transpose();
  out.params = solve_a(b1, b2, b3);
  out.c_new = transform(from_unimodular3(out.params), out.frame);
  return out;
}

SquareMatrix closed_form_ricci_case1(double a1, double a2, double a3, double f, double g, double h) {
  if (f == 0 || g == 0 || h == 0) throw DomainError("closed_form_ricci_case1: f, g, h must be nonzero");
  const double f2 = f * f, g2 = g * g, h2 = h * h;
  const double f4 = f2 * f2, g4 = g2 * g2, h4 = h2 * h2;
  SquareMatrix r(3);
  r(0, 0) = a2 * a3 * f2 + a1 * a1 * g2 * h2 / (2 * f2) - f2 * (a3 * a3 * g4 + a2 * a2 * h4) / (2 * g2 * h2);
  r(1, 1) = a1 * a3 * g2 + a2 * a2 * f2 * h2 / (2 * g2) - g2 * (a3 * a3 * f4 + a1 * a1 * h4) / (2 * f2 * h2);
  const double mix = a2 * f2 - a1 * g2;
  r(2, 2) = (a3 * a3 * f4 * g4 - mix * mix * h4) / (2 * f2 * g2 * h2);
  return r;
}

SquareMatrix closed_form_ricci_case2(double a1, double a3, double b1, double f, double g, double h,
                                     double w) {
  if (f == 0 || g == 0 || h == 0) throw DomainError("closed_form_ricci_case2: f, g, h must be nonzero");
  const double f2 = f * f, f3 = f2 * f, f4 = f2 * f2;
  const double g2 = g * g, h2 = h * h, h4 = h2 * h2;
  const double w2 = w * w, w3 = w2 * w, w4 = w2 * w2;
  const double a1s = a1 * a1, a3s = a3 * a3, b1s = b1 * b1;

  // Shared quartic of R11 and R33.
  const double quartic = a1s * w4 - 4 * a1 * b1 * f * w3 + (4 * b1s + 2 * a1 * a3) * f2 * w2 -
                         4 * a3 * b1 * f3 * w - a1s * h4 + a3s * f4;

  SquareMatrix r(3);
  r(0, 0) = -g2 * quartic / (2 * f2 * h2);
  r(2, 2) = g2 * quartic / (2 * f2 * h2);
  r(0, 2) = r(2, 0) = -g2 *
                      (a1s * w3 - 3 * a1 * b1 * f * w2 + (a1s * h2 + (2 * b1s + a1 * a3) * f2) * w -
                       a1 * b1 * f * h2 - a3 * b1 * f3) /
                      (f2 * h);
  r(1, 1) = -g2 *
            (a1s * w4 - 4 * a1 * b1 * f * w3 + (2 * a1s * h2 + (4 * b1s + 2 * a1 * a3) * f2) * w2 -
             4 * (a1 * b1 * f * h2 + a3 * b1 * f3) * w + a1s * h4 + (4 * b1s - 2 * a1 * a3) * f2 * h2 +
             a3s * f4) /
            (2 * f2 * h2);
  return r;
}

SquareMatrix case2_frame(double f, double g, double h, double w) {
  return SquareMatrix{{f, 0, 0}, {0, g, 0}, {w, 0, h}};
}

}  // namespace lieflow
