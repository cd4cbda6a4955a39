#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "lieflow/lie.hpp"
#include "lieflow/matrix.hpp"

namespace lieflow {

enum class Method { rk4_fixed, rk_adaptive };

enum class Termination { completed, collapsed, step_underflow, max_steps };

std::string_view to_string(Method m);
std::string_view to_string(Termination t);

struct FlowConfig {
  Method method = Method::rk_adaptive;
  double h0 = 1e-3;  ///< fixed step, or the first trial step when adaptive
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double t_end = 1.0;
  std::size_t max_steps = 10'000'000;
  /// On max |b| entry. Near a blow-up at t* the frame grows like
  /// (t* - t)^(-1/2), so 1e4 keeps steps far above min_step and the
  /// resolution of t.
  double collapse_threshold = 1e4;
  double min_step = 1e-14;
  /// Upper bound on adaptive steps; keeps sample spacing fine enough for
  /// finite-difference diagnostics.
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t sample_every = 1;  ///< record every N-th accepted step
  bool normalized = false;

  /// Throws InvalidConfig.
  void validate() const;
};

/// A point on the frame curve B(t). b is upper triangular with positive
/// diagonal; the frame E_i(t) = b(j, i) E_j(0) is orthonormal for g(t).
struct FlowState {
  double t = 0;
  SquareMatrix b;
};

struct Sample {
  double t = 0;
  SquareMatrix b;
  SquareMatrix g;      ///< metric in the initial frame
  SquareMatrix ricci;  ///< Ricci tensor in the moving orthonormal frame
  double scalar = 0;
};

struct Trajectory {
  std::vector<Sample> samples;
  Termination termination = Termination::completed;
  std::optional<double> collapse_time_estimate;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

/// The unique upper-triangular m with m + m^T = 2 r: diagonal r_ii,
/// strictly upper 2 r_ij, strictly lower zero.
SquareMatrix triangular_lift(const SquareMatrix& r);

/// Ricci matrix that drives the flow at frame q: the Ricci tensor of
/// transform(c_base, q), traceless-projected when normalized.
SquareMatrix driving_ricci(const StructureConstants& c_base, const SquareMatrix& q, bool normalized);

/// dB/dt = B * triangular_lift(R). Exactly upper triangular.
SquareMatrix rhs(const StructureConstants& c_base, const FlowState& state, bool normalized);

/// g = b^-T b^-1, the metric expressed in the initial frame.
SquareMatrix metric_in_initial_frame(const SquareMatrix& b);

/// Rc_ab = binv(i, a) binv(j, b) r_ij, the moving-frame tensor r expressed in
/// the initial frame.
SquareMatrix ricci_in_initial_frame(const SquareMatrix& b, const SquareMatrix& r_frame);

/// Integrates the flow from b0 (upper triangular, positive diagonal) up to
/// cfg.t_end. Throws InvalidConfig for a bad config or b0.
Trajectory integrate(const StructureConstants& c_base, const SquareMatrix& b0, const FlowConfig& cfg);

/// Antisymmetric gauge term K(t) for the general-linear lift.
using Gauge = std::function<SquareMatrix(double)>;

/// dQ/dt = Q (triangular_lift(R) + K(t)). Any antisymmetric K leaves the
/// symmetric part of Q^-1 dQ/dt equal to 2R, so the metric is unchanged.
SquareMatrix rhs_general(const StructureConstants& c_base, double t, const SquareMatrix& q,
                         const Gauge& gauge, bool normalized);

struct GeneralTrajectory {
  std::vector<double> t;
  std::vector<SquareMatrix> q;
  Termination termination = Termination::completed;
};

/// Same stepping and termination rules as integrate(), on the full GL(n)
/// curve. No triangular projection is applied.
GeneralTrajectory integrate_general(const StructureConstants& c_base, const SquareMatrix& q0,
                                    const Gauge& gauge, const FlowConfig& cfg);

}  // namespace lieflow
