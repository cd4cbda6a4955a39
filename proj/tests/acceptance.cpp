// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "flow_checks.hpp"
#include "lieflow/catalog3d.hpp"
#include "lieflow/curvature.hpp"
#include "lieflow/flow.hpp"
#include "lieflow/lie.hpp"
#include "support.hpp"

using namespace lieflow;
using lieflow::testing::Rng;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

StructureConstants preset_constants(const char* name) { return from_unimodular3(preset(name)); }

// Trajectories shared by the flow criteria and the residual criterion.
std::vector<std::pair<std::string, Trajectory>> g_trajectories;

FlowConfig acceptance_config(double t_end) {
  FlowConfig cfg;
  cfg.t_end = t_end;
  cfg.rel_tol = 1e-8;
  cfg.max_step = 1e-3;
  return cfg;
}

Outcome sphere_collapse() {
  Outcome o;
  const Trajectory traj = integrate(preset_constants("so3"), SquareMatrix::identity(3), acceptance_config(2.0));
  g_trajectories.emplace_back("so3", traj);
  o.require(traj.termination == Termination::collapsed, "termination collapsed");
  o.require(traj.collapse_time_estimate.has_value(), "collapse estimate present");
  if (!o.pass) return o;

  double worst = 0;
  for (const Sample& s : traj.samples)
    if (s.t < 1.0) worst = std::max(worst, max_abs_diff(s.g, (1.0 - s.t) * SquareMatrix::identity(3)));
  o.require(worst <= 1e-6, "g(t) = (1 - t) I");
  o.note("max |g - (1-t)I| " + sci(worst));

  const double err = std::abs(*traj.collapse_time_estimate - 1.0);
  o.require(err <= 1e-3, "collapse time");
  o.note("|T - 1| " + sci(err));

  // g = 4 g_unit for the round unit sphere, so rho = 4 g_11; least-squares slope.
  double st = 0, sr = 0, stt = 0, str = 0, m = 0;
  for (const Sample& s : traj.samples) {
    if (s.t > 0.9) continue;
    const double rho = 4.0 * s.g(0, 0);
    st += s.t;
    sr += rho;
    stt += s.t * s.t;
    str += s.t * rho;
    m += 1;
  }
  const double slope = (m * str - st * sr) / (m * stt - st * st);
  o.require(std::abs(slope + 4.0) <= 1e-6, "rho slope -2(n-1) = -4");
  o.note("slope + 4 = " + sci(slope + 4.0));
  return o;
}

Outcome heisenberg_immortal() {
  Outcome o;
  const Trajectory traj =
      integrate(preset_constants("heisenberg"), SquareMatrix::identity(3), acceptance_config(10.0));
  g_trajectories.emplace_back("heisenberg", traj);
  o.require(traj.termination == Termination::completed, "termination completed");
  if (!o.pass) return o;
  const double f10 = traj.samples.back().b(0, 0);
  const double rel = std::abs(f10 / std::pow(31.0, 1.0 / 6.0) - 1.0);
  o.require(traj.samples.back().t == 10.0 && rel <= 1e-6, "f(10) = 31^(1/6)");
  o.note("f(10) rel err " + sci(rel));

  double worst = 0;
  for (const Sample& s : traj.samples)
    worst = std::max(worst, std::abs(s.g(0, 0) * std::cbrt(1 + 3 * s.t) - 1.0));
  o.require(worst <= 1e-6, "g11 (1+3t)^(1/3) constant");
  o.note("max |g11 (1+3t)^(1/3) - 1| " + sci(worst));
  return o;
}

Outcome case1_oracle() {
  Outcome o;
  Rng rng(1001);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double a1 = rng.uniform(-2, 2), a2 = rng.uniform(-2, 2), a3 = rng.uniform(-2, 2);
    const double f = rng.uniform(0.2, 3), g = rng.uniform(0.2, 3), h = rng.uniform(0.2, 3);
    const SquareMatrix pipe =
        ricci_parts(transform(from_unimodular3({a1, a2, a3, 0, 0, 0}), SquareMatrix::diagonal({f, g, h}))).total;
    worst = std::max(worst, max_abs_diff(pipe, closed_form_ricci_case1(a1, a2, a3, f, g, h)));
  }
  o.require(worst <= 1e-10, "1000 draws within 1e-10");
  o.note("max deviation " + sci(worst));
  return o;
}

Outcome case2_oracle() {
  Outcome o;
  Rng rng(1002);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double a1 = rng.uniform(-2, 2), a3 = rng.uniform(-2, 2), b1 = rng.uniform(-2, 2);
    const double f = rng.uniform(0.2, 3), g = rng.uniform(0.2, 3), h = rng.uniform(0.2, 3);
    const double w = rng.uniform(-2, 2);
    const SquareMatrix pipe =
        ricci_parts(transform(from_unimodular3({a1, 0, a3, b1, 0, 0}), case2_frame(f, g, h, w))).total;
    worst = std::max(worst, max_abs_diff(pipe, closed_form_ricci_case2(a1, a3, b1, f, g, h, w)));
  }
  o.require(worst <= 1e-10, "1000 draws within 1e-10");
  o.note("max deviation " + sci(worst));

  double table = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double a1 = rng.uniform(-2, 2), a3 = rng.uniform(-2, 2), b1 = rng.uniform(-2, 2);
    const SquareMatrix r = closed_form_ricci_case2(a1, a3, b1, 1, 1, 1, 0);
    SquareMatrix expect(3);
    expect(0, 0) = 0.5 * (a1 * a1 - a3 * a3);
    expect(1, 1) = 0.5 * (-a1 * a1 + 2 * a1 * a3 - a3 * a3 - 4 * b1 * b1);
    expect(0, 2) = expect(2, 0) = (a1 + a3) * b1;
    const SquareMatrix pipe = ricci_parts(from_unimodular3({a1, 0, a3, b1, 0, 0})).total;
    expect(2, 2) = pipe(2, 2);
    table = std::max({table, max_abs_diff(r, expect), max_abs_diff(pipe, expect)});
  }
  o.require(table <= 1e-14, "t = 0 table");
  o.note("t = 0 table deviation " + sci(table));
  return o;
}

Outcome equivariance() {
  Outcome o;
  Rng rng(1005);
  double orth = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const StructureConstants c = testing::random_antisymmetric(rng, 3);
    const SquareMatrix u = testing::random_orthogonal(rng, 3);
    const RicciDecomposition before = ricci_parts(c);
    const RicciDecomposition after = ricci_parts(transform(c, u));
    for (int a = 1; a <= 4; ++a)
      orth = std::max(orth, max_abs_diff(after.part(a), transform_symmetric(before.part(a), u)));
  }
  o.require(orth <= 1e-10, "O(3) equivariance of each part");
  o.note("O(3) " + sci(orth));

  double gl = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const StructureConstants c = testing::random_antisymmetric(rng, 3);
    const SquareMatrix q = testing::random_invertible(rng, 3);
    gl = std::max(gl, max_abs_diff(ricci_parts(transform(c, q)).r1, transform_symmetric(ricci_parts(c).r1, q)));
  }
  o.require(gl <= 1e-10, "GL equivariance of r1");
  o.note("GL r1 " + sci(gl));

  const StructureConstants heis = preset_constants("heisenberg");
  const SquareMatrix q = SquareMatrix::diagonal({2.0, 1.0, 1.0});
  const double dev =
      max_abs_diff(ricci_parts(transform(heis, q)).total, transform_symmetric(ricci_parts(heis).total, q));
  o.require(dev > 1.0, "heisenberg diag(2,1,1) counterexample");
  o.note("counterexample deviation " + sci(dev));
  return o;
}

Outcome gauge_invariance() {
  Outcome o;
  Rng rng(1006);
  for (const char* name : {"so3", "heisenberg"}) {
    const auto cmp = testing::compare_gauges(preset_constants(name), testing::random_gauge(rng, 3), 0.5, 1e-3);
    o.require(cmp.samples == 501, std::string(name) + " sample grid");
    o.require(cmp.metric <= 1e-6, std::string(name) + " metric");
    o.require(cmp.factor <= 1e-6, std::string(name) + " triangular factor");
    o.note(std::string(name) + " metric " + sci(cmp.metric) + ", factor " + sci(cmp.factor));
  }
  return o;
}

Outcome flow_residual() {
  Outcome o;
  for (const auto& [name, traj] : g_trajectories) {
    const std::size_t used = testing::flow_equation_triples(traj);
    const double r = testing::flow_equation_residual(traj);
    o.require(used + 2 >= traj.samples.size() && used > 100, name + " spacing <= 1e-3 throughout");
    o.require(r <= 1e-5, name + " residual");
    o.note(name + " " + sci(r) + " over " + std::to_string(used) + " samples");
  }
  return o;
}

Outcome normalized_flow() {
  Outcome o;
  FlowConfig cfg = acceptance_config(10.0);
  cfg.max_step = std::numeric_limits<double>::infinity();
  cfg.normalized = true;
  const Trajectory so3 = integrate(preset_constants("so3"), SquareMatrix::identity(3), cfg);
  double drift = 0;
  for (const Sample& s : so3.samples) drift = std::max(drift, max_abs_diff(s.b, SquareMatrix::identity(3)));
  o.require(so3.termination == Termination::completed && so3.samples.back().t == 10.0, "so3 completes to t = 10");
  o.require(drift <= 1e-10, "so3 stationary");
  o.note("so3 drift " + sci(drift));

  Rng rng(1008);
  double vol = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Unimodular3Params p{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), 0, 0, 0};
    const SquareMatrix b0 = SquareMatrix::diagonal({rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(0.5, 2)});
    cfg.t_end = 1.0;
    const Trajectory traj = integrate(from_unimodular3(p), b0, cfg);
    o.require(traj.termination == Termination::completed, "Case I trajectory completes");
    const double det0 = determinant(traj.samples.front().g);
    for (const Sample& s : traj.samples) vol = std::max(vol, std::abs(determinant(s.g) / det0 - 1.0));
  }
  o.require(vol <= 1e-8, "det g constant");
  o.note("max |det g / det g0 - 1| " + sci(vol));
  return o;
}

Outcome three_paths() {
  Outcome o;
  Rng rng(1009);
  double any = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const StructureConstants c = testing::random_antisymmetric(rng, 3);
    any = std::max(any, max_abs_diff(ricci_parts(c).total, ricci_combined(c)));
  }
  o.require(any <= 1e-10, "decomposition vs combined on antisymmetric constants");
  o.note("decomposition vs combined " + sci(any));

  // The connection contraction is valid on Lie algebras: unimodular and
  // non-unimodular families in random frames.
  double lie = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const StructureConstants base =
        trial % 2 == 0 ? from_unimodular3(testing::random_params(rng, -1, 1))
                       : testing::semidirect3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                                              rng.uniform(-1, 1));
    const StructureConstants c = transform(base, testing::random_orthogonal(rng, 3));
    const SquareMatrix parts = ricci_parts(c).total;
    const SquareMatrix conn = ricci_via_connection(c);
    const SquareMatrix comb = ricci_combined(c);
    lie = std::max({lie, max_abs_diff(parts, conn), max_abs_diff(parts, comb), max_abs_diff(conn, comb)});
  }
  o.require(lie <= 1e-10, "all three paths on Lie algebras");
  o.note("three paths on Lie algebras " + sci(lie));
  return o;
}

Outcome classification() {
  Outcome o;
  o.require(classify({1, 1, 1, 0, 0, 0}) == CaseLabel::CaseI, "Case I pattern");
  o.require(classify({1, 0, 1, 2, 0, 0}) == CaseLabel::CaseII, "Case II pattern");
  o.require(classify(solve_a(1, 1, 1)) == CaseLabel::CaseIII, "Case III pattern");
  o.require(classify({1, 1, 1, 1, 1, 0}) == CaseLabel::NonDiagonalR1, "non-diagonal pattern");

  Rng rng(1010);
  double stray = 0, magnitude = 0, defects = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double b1 = rng.uniform(0.1, 3), b2 = rng.uniform(0.1, 3), b3 = rng.uniform(0.1, 3);
    o.require(classify(solve_a(b1, b2, b3)) == CaseLabel::CaseIII, "random Case III pattern");
    const Case3Reduction red = case3_reduce(b1, b2, b3);
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
          if (!(k == 0 && i == 1 && j == 2)) stray = std::max(stray, std::abs(red.c_new(k, i, j)));
    magnitude = std::max(
        magnitude, std::abs(std::abs(red.c_new(0, 1, 2)) / case3_reduced_constant(red.angles) - 1.0));
    defects = std::max({defects, jacobi_defect(red.c_new), unimodular_defect(red.c_new)});
  }
  o.require(stray <= 1e-10, "only C^1_23 survives");
  o.require(magnitude <= 1e-10, "C^1_23 magnitude");
  o.require(defects <= 1e-10, "Jacobi and unimodular defects");
  o.note("stray " + sci(stray) + ", magnitude rel " + sci(magnitude) + ", defects " + sci(defects));

  double display = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Unimodular3Params p = testing::random_params(rng, -2, 2);
    display = std::max(display, max_abs_diff(r1_display(p), -2.0 * ricci_parts(from_unimodular3(p)).r1));
  }
  o.require(display <= 1e-12, "r1 display = -2 r1");
  o.note("r1 display " + sci(display));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"round sphere collapse", sphere_collapse},
      {"heisenberg immortal trajectory", heisenberg_immortal},
      {"Case I closed form vs pipeline", case1_oracle},
      {"Case II closed form vs pipeline", case2_oracle},
      {"equivariance", equivariance},
      {"gauge invariance", gauge_invariance},
      {"flow-equation residual", flow_residual},
      {"normalized flow", normalized_flow},
      {"three-path Ricci agreement", three_paths},
      {"classification and Case III reduction", classification},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
