#include "lieflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lieflow/curvature.hpp"
#include "lieflow/errors.hpp"

namespace lieflow {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::rk4_fixed: return "rk4";
    case Method::rk_adaptive: return "adaptive";
  }
  return "?";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::collapsed: return "collapsed";
    case Termination::step_underflow: return "step_underflow";
    case Termination::max_steps: return "max_steps";
  }
  return "?";
}

void FlowConfig::validate() const {
  auto fail = [](const std::string& what) { throw InvalidConfig("FlowConfig: " + what); };
  if (!(h0 > 0) || !std::isfinite(h0)) fail("h0 must be positive");
  if (!(t_end > 0) || !std::isfinite(t_end)) fail("t_end must be positive");
  if (!(rel_tol > 0) || !(abs_tol > 0)) fail("tolerances must be positive");
  if (!(min_step > 0) || !(min_step < h0)) fail("min_step must be in (0, h0)");
  if (!(max_step > 0)) fail("max_step must be positive");
  if (!(collapse_threshold > 0)) fail("collapse_threshold must be positive");
  if (max_steps == 0) fail("max_steps must be positive");
  if (sample_every == 0) fail("sample_every must be positive");
}

SquareMatrix triangular_lift(const SquareMatrix& r) {
  const std::size_t n = r.dim();
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = r(i, i);
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = r(i, j) + r(j, i);
  }
  return m;
}

SquareMatrix driving_ricci(const StructureConstants& c_base, const SquareMatrix& q, bool normalized) {
  SquareMatrix r = ricci_parts(transform(c_base, q)).total;
  if (normalized) {
    // Left-invariant metrics have constant scalar curvature, so the volume
    // average in the normalized equation is just trace(R).
    const double shift = r.trace() / static_cast<double>(r.dim());
    for (std::size_t i = 0; i < r.dim(); ++i) r(i, i) -= shift;
  }
  return r;
}

// Why the triangular lift is the whole story: orthonormality of E_i(t)
// under g(t) together with dg/dt = -2 Rc gives
//   A + A^T = 2 R,   A = B^-1 dB/dt.
// For B upper triangular, A is upper triangular too, and the only upper
// triangular matrix with symmetric part R is triangular_lift(R). For a
// diagonal frame this is (1/f) df/dt = R_11 and so on.
SquareMatrix rhs(const StructureConstants& c_base, const FlowState& state, bool normalized) {
  const SquareMatrix m = triangular_lift(driving_ricci(c_base, state.b, normalized));
  SquareMatrix db = state.b * m;
  for (std::size_t i = 0; i < db.dim(); ++i)
    for (std::size_t j = 0; j < i; ++j) db(i, j) = 0.0;
  return db;
}

SquareMatrix metric_in_initial_frame(const SquareMatrix& b) {
  const SquareMatrix binv = inverse(b);
  SquareMatrix g = binv.transpose() * binv;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j) g(j, i) = g(i, j);
  return g;
}

SquareMatrix ricci_in_initial_frame(const SquareMatrix& b, const SquareMatrix& r_frame) {
  return transform_symmetric(r_frame, inverse(b));
}

namespace {

using Field = std::function<SquareMatrix(double, const SquareMatrix&)>;

SquareMatrix rk4_step(const Field& f, double t, const SquareMatrix& y, double h) {
  const SquareMatrix k1 = f(t, y);
  const SquareMatrix k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
  const SquareMatrix k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
  const SquareMatrix k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct EmbeddedStep {
  SquareMatrix y;    // fifth-order solution
  SquareMatrix err;  // fifth minus fourth order
};

// Dormand-Prince 5(4) tableau.
EmbeddedStep dopri_step(const Field& f, double t, const SquareMatrix& y, double h) {
  const SquareMatrix k1 = f(t, y);
  const SquareMatrix k2 = f(t + h / 5.0, y + h * (1.0 / 5.0) * k1);
  const SquareMatrix k3 = f(t + 3.0 * h / 10.0, y + h * ((3.0 / 40.0) * k1 + (9.0 / 40.0) * k2));
  const SquareMatrix k4 =
      f(t + 4.0 * h / 5.0, y + h * ((44.0 / 45.0) * k1 - (56.0 / 15.0) * k2 + (32.0 / 9.0) * k3));
  const SquareMatrix k5 =
      f(t + 8.0 * h / 9.0, y + h * ((19372.0 / 6561.0) * k1 - (25360.0 / 2187.0) * k2 +
                                    (64448.0 / 6561.0) * k3 - (212.0 / 729.0) * k4));
  const SquareMatrix k6 =
      f(t + h, y + h * ((9017.0 / 3168.0) * k1 - (355.0 / 33.0) * k2 + (46732.0 / 5247.0) * k3 +
                        (49.0 / 176.0) * k4 - (5103.0 / 18656.0) * k5));
  SquareMatrix y5 = y + h * ((35.0 / 384.0) * k1 + (500.0 / 1113.0) * k3 + (125.0 / 192.0) * k4 -
                             (2187.0 / 6784.0) * k5 + (11.0 / 84.0) * k6);
  const SquareMatrix k7 = f(t + h, y5);
  SquareMatrix err = h * ((71.0 / 57600.0) * k1 - (71.0 / 16695.0) * k3 + (71.0 / 1920.0) * k4 -
                          (17253.0 / 339200.0) * k5 + (22.0 / 525.0) * k6 - (1.0 / 40.0) * k7);
  return {std::move(y5), std::move(err)};
}

double error_norm(const SquareMatrix& err, const SquareMatrix& y_old, const SquareMatrix& y_new,
                  const FlowConfig& cfg) {
  const auto e = err.data();
  const auto a = y_old.data();
  const auto b = y_new.data();
  double worst = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(a[k]), std::abs(b[k]));
    worst = std::max(worst, std::abs(e[k]) / scale);
  }
  return std::isnan(worst) ? std::numeric_limits<double>::infinity() : worst;
}

struct DriveResult {
  Termination termination = Termination::completed;
  std::optional<double> collapse_time;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

// on_accept(t, y, last) is called for t = 0 and after every accepted step;
// `last` marks the final state of the run.
template <class Project, class OnAccept>
DriveResult drive(const Field& f, SquareMatrix y, const FlowConfig& cfg, Project&& project,
                  OnAccept&& on_accept) {
  DriveResult res;
  double t = 0.0;
  on_accept(t, y, false);

  auto finish = [&](Termination term) {
    res.termination = term;
    if (term == Termination::collapsed) res.collapse_time = t;
    on_accept(t, y, true);
    return res;
  };
  auto blown_up = [&](const SquareMatrix& m) {
    return !m.all_finite() || m.max_abs() > cfg.collapse_threshold;
  };

  std::size_t attempts = 0;
  if (cfg.method == Method::rk4_fixed) {
    std::size_t k = 0;
    while (t < cfg.t_end) {
      if (attempts++ >= cfg.max_steps) return finish(Termination::max_steps);
      double t_next = std::min(static_cast<double>(k + 1) * cfg.h0, cfg.t_end);
      if (cfg.t_end - t_next < 1e-9 * cfg.h0) t_next = cfg.t_end;
      const double h = t_next - t;
      SquareMatrix y_new;
      try {
        y_new = rk4_step(f, t, y, h);
      } catch (const SingularMatrix&) {
        // Retry as four quarter steps before giving up on the frame.
        try {
          y_new = y;
          for (int q = 0; q < 4; ++q) y_new = rk4_step(f, t + q * h / 4, y_new, h / 4);
        } catch (const SingularMatrix&) {
          return finish(Termination::step_underflow);
        }
      }
      if (blown_up(y_new)) {
        t = t_next;
        if (y_new.all_finite()) y = project(std::move(y_new));
        ++res.accepted;
        return finish(Termination::collapsed);
      }
      y = project(std::move(y_new));
      t = t_next;
      ++k;
      ++res.accepted;
      if (t >= cfg.t_end) return finish(Termination::completed);
      on_accept(t, y, false);
    }
    return finish(Termination::completed);
  }

  double h = std::min(cfg.h0, cfg.max_step);
  while (t < cfg.t_end) {
    if (attempts++ >= cfg.max_steps) return finish(Termination::max_steps);
    // Absorb a sliver left by round-off in t rather than stepping across it.
    const bool last = h * (1 + 1e-8) >= cfg.t_end - t;
    const double h_try = last ? cfg.t_end - t : h;

    double err = std::numeric_limits<double>::infinity();
    SquareMatrix y_new;
    try {
      EmbeddedStep step = dopri_step(f, t, y, h_try);
      if (step.y.all_finite() && step.err.all_finite()) {
        err = error_norm(step.err, y, step.y, cfg);
        y_new = std::move(step.y);
      }
    } catch (const SingularMatrix&) {
      // Treated as a rejected step; the step size shrinks below.
    }

    if (err <= 1.0) {
      t = last ? cfg.t_end : t + h_try;
      y = project(std::move(y_new));
      ++res.accepted;
      if (blown_up(y)) return finish(Termination::collapsed);
      if (t >= cfg.t_end) return finish(Termination::completed);
      on_accept(t, y, false);
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      // A truncated final step says nothing about the natural step size.
      h = std::min(last ? h : h_try * factor, cfg.max_step);
      if (h < cfg.min_step) return finish(Termination::step_underflow);
    } else {
      ++res.rejected;
      const double factor = std::isfinite(err) ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0) : 0.2;
      h = h_try * factor;
      if (h < cfg.min_step) return finish(Termination::step_underflow);
    }
  }
  return finish(Termination::completed);
}

void check_initial_frame(const SquareMatrix& b0, std::size_t n) {
  if (b0.dim() != n) throw InvalidConfig("b0: dimension does not match the algebra");
  if (!b0.all_finite()) throw InvalidConfig("b0: non-finite entry");
  if (lower_part_max(b0) != 0.0) throw InvalidConfig("b0: must be upper triangular");
  for (std::size_t i = 0; i < n; ++i)
    if (!(b0(i, i) > 0.0)) throw InvalidConfig("b0: diagonal must be positive");
}

SquareMatrix zero_lower(SquareMatrix b) {
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < i; ++j) b(i, j) = 0.0;
  return b;
}

}  // namespace

Trajectory integrate(const StructureConstants& c_base, const SquareMatrix& b0, const FlowConfig& cfg) {
  cfg.validate();
  check_initial_frame(b0, c_base.dim());

  Trajectory traj;
  std::size_t since_sample = 0;
  auto record = [&](double t, const SquareMatrix& b, bool last) {
    if (!last && t > 0.0 && ++since_sample < cfg.sample_every) return;
    since_sample = 0;
    if (!traj.samples.empty() && traj.samples.back().t >= t) return;
    Sample s;
    s.t = t;
    s.b = b;
    try {
      s.g = metric_in_initial_frame(b);
      const RicciDecomposition rd = ricci_parts(transform(c_base, b));
      s.ricci = rd.total;
      s.scalar = rd.scalar;
    } catch (const SingularMatrix&) {
      // A frame degenerate enough to defeat the inverse has no usable metric sample.
      return;
    }
    traj.samples.push_back(std::move(s));
  };

  const Field field = [&](double t, const SquareMatrix& b) {
    return rhs(c_base, FlowState{t, b}, cfg.normalized);
  };
  const DriveResult res = drive(field, b0, cfg, zero_lower, record);
  traj.termination = res.termination;
  traj.collapse_time_estimate = res.collapse_time;
  traj.accepted_steps = res.accepted;
  traj.rejected_steps = res.rejected;
  return traj;
}

SquareMatrix rhs_general(const StructureConstants& c_base, double t, const SquareMatrix& q,
                         const Gauge& gauge, bool normalized) {
  SquareMatrix a = triangular_lift(driving_ricci(c_base, q, normalized));
  if (gauge) a += gauge(t);
  return q * a;
}

GeneralTrajectory integrate_general(const StructureConstants& c_base, const SquareMatrix& q0,
                                    const Gauge& gauge, const FlowConfig& cfg) {
  cfg.validate();
  if (q0.dim() != c_base.dim()) throw InvalidConfig("q0: dimension does not match the algebra");

  GeneralTrajectory traj;
  std::size_t since_sample = 0;
  auto record = [&](double t, const SquareMatrix& q, bool last) {
    if (!last && t > 0.0 && ++since_sample < cfg.sample_every) return;
    since_sample = 0;
    if (!traj.t.empty() && traj.t.back() >= t) return;
    traj.t.push_back(t);
    traj.q.push_back(q);
  };
  const Field field = [&](double t, const SquareMatrix& q) {
    return rhs_general(c_base, t, q, gauge, cfg.normalized);
  };
  const DriveResult res = drive(field, q0, cfg, [](SquareMatrix q) { return q; }, record);
  traj.termination = res.termination;
  return traj;
}

}  // namespace lieflow
