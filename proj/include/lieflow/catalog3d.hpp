#pragma once

#include <array>
#include <string_view>

#include "lieflow/lie.hpp"
#include "lieflow/matrix.hpp"

namespace lieflow {

enum class CaseLabel { CaseI, CaseII, CaseIII, NonDiagonalR1 };

std::string_view to_string(CaseLabel c);

/// Residuals of the conditions under which r1 is diagonal in the given frame:
///   b1 b3 - a3 b2,  b2 b3 - a2 b1,  b1 b2 - a1 b3.
std::array<double, 3> diagonality_residuals(const Unimodular3Params& p);

inline constexpr double kClassifyTol = 1e-9;

/// With s = max(1, max |parameter|): a b counts as zero when |b| <= tol * s,
/// and a residual as zero when |residual| <= tol * s^2.
CaseLabel classify(const Unimodular3Params& p, double tol = kClassifyTol);

/// The displayed Killing-form matrix of the six-parameter family, which is
/// -2 times r1 (e.g. entry (1,1) is -2 a2 a3 + 2 b3^2).
SquareMatrix r1_display(const Unimodular3Params& p);

struct R1Diagonalization {
  SquareMatrix rotation;  ///< orthogonal, det +1
  StructureConstants c_new;
};

/// Rotates the frame so that r1 becomes diagonal. Returns the identity when
/// r1 is already diagonal.
R1Diagonalization diagonalize_r1(const Unimodular3Params& p);

struct Case3Angles {
  double rho = 0, alpha = 0, beta = 0;
};

struct Case3Reduction {
  Case3Angles angles;
  /// Frame matrix q with E'_i = q(j, i) E_j: column i holds the components
  /// of the i-th new frame vector.
  SquareMatrix frame;
  StructureConstants c_new;
  Unimodular3Params params;  ///< input algebra, with a solved from the b's
};

/// The a-parameters that make all three diagonality residuals vanish for
/// nonzero b: a1 = b1 b2 / b3, a2 = b2 b3 / b1, a3 = b1 b3 / b2.
Unimodular3Params solve_a(double b1, double b2, double b3);

/// Solves for (rho, alpha, beta) with
///   b1^2 = rho cos(b) cos(a) / sin(b)
///   b2^2 = rho sin(b) cos(a) / cos(b)
///   b3^2 = sin(a)^2 rho sin(b) cos(b) / cos(a)
/// Throws DomainError unless all b are positive.
Case3Angles case3_angles(double b1, double b2, double b3);

/// Magnitude of the single surviving constant C^1_23 after the reduction:
/// (1 / sin a) sqrt(rho / (cos a cos b sin b)).
double case3_reduced_constant(const Case3Angles& a);

/// Rotates an all-b-nonzero algebra (with a from solve_a) to a frame in
/// which only C^1_23 survives. Throws DomainError for non-positive b.
Case3Reduction case3_reduce(double b1, double b2, double b3);

/// Diagonal Ricci of the a-only family in the frame diag(f, g, h).
/// Throws DomainError if f, g or h is zero.
SquareMatrix closed_form_ricci_case1(double a1, double a2, double a3, double f, double g, double h);

/// Ricci of the (a1, 0, a3, b1, 0, 0) family in the lower-triangular frame
/// with f, g, h on the diagonal and w at row 3, column 1. Nonzero entries
/// are R11, R22, R33 and R13 = R31.
///
/// The R13 numerator carries a1 a3 in the coefficient of f^2 w; the
/// commonly quoted cubic coefficient a1^2 a3 disagrees with the general
/// pipeline whenever a1 != 1 and w != 0.
SquareMatrix closed_form_ricci_case2(double a1, double a3, double b1, double f, double g, double h,
                                     double w);

/// The lower-triangular frame used by closed_form_ricci_case2.
SquareMatrix case2_frame(double f, double g, double h, double w);

}  // namespace lieflow
