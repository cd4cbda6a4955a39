#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "lieflow/catalog3d.hpp"
#include "lieflow/curvature.hpp"
#include "lieflow/errors.hpp"
#include "lieflow/flow.hpp"
#include "lieflow/io.hpp"
#include "lieflow/lie.hpp"

namespace lieflow::cli {
namespace {

enum class Format { csv, json, both };

struct RunSpec {
  std::string preset;
  std::string params;
  std::string algebra_file;
  std::string b0_file;
  std::string out_prefix;
  Format format = Format::csv;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  bool solve_a = false;
  FlowConfig flow;
  std::string method = "adaptive";
};

struct Algebra {
  StructureConstants c;
  std::optional<Unimodular3Params> params;
  Json source;
};

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseError("--params: cannot parse '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(v))
      throw ParseError("--params: cannot parse '" + item + "'");
    vals.push_back(v);
  }
  return vals;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

Algebra load_algebra(const RunSpec& spec) {
  const int sources = !spec.preset.empty() + !spec.params.empty() + !spec.algebra_file.empty();
  if (sources != 1) throw ParseError("exactly one of --preset, --params, --algebra is required");

  Algebra alg;
  if (!spec.preset.empty()) {
    alg.params = preset(spec.preset);
    alg.source = {{"preset", spec.preset}};
  } else if (!spec.params.empty()) {
    const auto vals = parse_number_list(spec.params);
    if (vals.size() != 6) throw ParseError("--params expects six values a1,a2,a3,b1,b2,b3");
    alg.params = Unimodular3Params{vals[0], vals[1], vals[2], vals[3], vals[4], vals[5]};
    alg.source = {{"params", alg.params->as_array()}};
  } else {
    alg.c = structure_constants_from_json(read_json_file(spec.algebra_file));
    alg.source = {{"algebra_file", spec.algebra_file}};
    if (alg.c.dim() == 3 && unimodular_defect(alg.c) <= 1e-12 * std::max(1.0, alg.c.max_abs()))
      alg.params = to_unimodular3(alg.c);
    return alg;
  }
  if (spec.solve_a) {
    alg.params = solve_a(alg.params->b1, alg.params->b2, alg.params->b3);
    alg.source["solved_a"] = true;
  }
  alg.c = from_unimodular3(*alg.params);
  return alg;
}

SquareMatrix load_b0(const RunSpec& spec, std::size_t n) {
  if (spec.b0_file.empty()) return SquareMatrix::identity(n);
  Json j = read_json_file(spec.b0_file);
  if (j.is_object() && j.contains("b0")) j = j["b0"];
  SquareMatrix b0 = matrix_from_json(j);
  if (b0.dim() != n) throw ParseError("--b0: dimension does not match the algebra");
  return b0;
}

void print_matrix(std::ostream& out, const std::string& name, const SquareMatrix& m) {
  out << name << " =";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    out << (i == 0 ? " [" : "\n" + std::string(name.size() + 3, ' ') + " ");
    out << '[';
    for (std::size_t j = 0; j < m.dim(); ++j) out << (j ? ", " : "") << format_double(m(i, j) + 0.0);
    out << ']';
  }
  out << "]\n";
}

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << text;
}

void maybe_write_json(const RunSpec& spec, const Json& report) {
  if (spec.out_prefix.empty()) return;
  write_text(spec.out_prefix + ".json", report.dump(2) + "\n");
}

// ---------------------------------------------------------------- ricci

int cmd_ricci(const RunSpec& spec, std::ostream& out) {
  const Algebra alg = load_algebra(spec);
  const SquareMatrix b0 = load_b0(spec, alg.c.dim());
  const RicciDecomposition rd = ricci_parts(transform(alg.c, b0));
  print_matrix(out, "r1", rd.r1);
  print_matrix(out, "r2", rd.r2);
  print_matrix(out, "r3", rd.r3);
  print_matrix(out, "r4", rd.r4);
  print_matrix(out, "total", rd.total);
  out << "scalar = " << format_double(rd.scalar) << "\n";
  maybe_write_json(spec, {{"algebra", alg.source}, {"b0", to_json(b0)}, {"ricci", to_json(rd)}});
  return kOk;
}

// ---------------------------------------------------------------- flow

int cmd_flow(RunSpec spec, std::ostream& out) {
  const Algebra alg = load_algebra(spec);
  const SquareMatrix b0 = load_b0(spec, alg.c.dim());
  if (spec.method == "rk4")
    spec.flow.method = Method::rk4_fixed;
  else if (spec.method == "adaptive")
    spec.flow.method = Method::rk_adaptive;
  else
    throw ParseError("--method must be rk4 or adaptive");

  const Trajectory traj = integrate(alg.c, b0, spec.flow);

  if (!spec.out_prefix.empty()) {
    if (spec.format != Format::json) {
      std::ostringstream csv;
      write_csv(csv, traj);
      write_text(spec.out_prefix + ".csv", csv.str());
    }
    if (spec.format != Format::csv) {
      const Json meta = {{"algebra", alg.source},
                         {"constants", to_json(alg.c)},
                         {"b0", to_json(b0)},
                         {"config", to_json(spec.flow)}};
      write_text(spec.out_prefix + ".json", to_json(traj, meta).dump(2) + "\n");
    }
  }

  out << "termination: " << to_string(traj.termination) << "\n";
  if (traj.collapse_time_estimate)
    out << "collapse_time_estimate: " << format_double(*traj.collapse_time_estimate) << "\n";
  out << "steps: " << traj.accepted_steps << " accepted, " << traj.rejected_steps << " rejected\n";
  out << "samples: " << traj.samples.size() << "\n";
  if (!traj.samples.empty()) {
    const Sample& last = traj.samples.back();
    out << "t_final: " << format_double(last.t) << "\n";
    print_matrix(out, "b", last.b);
    print_matrix(out, "g", last.g);
    double dev = 0;
    for (const Sample& s : traj.samples) dev = std::max(dev, max_abs_diff(s.b, b0));
    out << "max |b(t) - b0|: " << format_double(dev) << "\n";
  }
  const bool ok = traj.termination == Termination::completed || traj.termination == Termination::collapsed;
  return ok ? kOk : kNotCompleted;
}

// ---------------------------------------------------------------- classify

int cmd_classify(const RunSpec& spec, std::ostream& out) {
  const Algebra alg = load_algebra(spec);
  if (!alg.params) throw ParseError("classify needs a three-dimensional unimodular algebra");
  const Unimodular3Params& p = *alg.params;
  const double tol = spec.tol.value_or(kClassifyTol);
  const CaseLabel label = classify(p, tol);
  const auto res = diagonality_residuals(p);

  Json report = {{"algebra", alg.source},
                 {"params", to_json(p)},
                 {"label", std::string(to_string(label))},
                 {"residuals", res}};
  out << "label: " << to_string(label) << "\n";
  out << "params: " << to_json(p).dump() << "\n";
  out << "residuals: " << format_double(res[0]) << ", " << format_double(res[1]) << ", "
      << format_double(res[2]) << "\n";

  if (label == CaseLabel::CaseIII) {
    const Case3Reduction red = case3_reduce(p.b1, p.b2, p.b3);
    out << "rho: " << format_double(red.angles.rho) << "\n";
    out << "alpha: " << format_double(red.angles.alpha) << "\n";
    out << "beta: " << format_double(red.angles.beta) << "\n";
    print_matrix(out, "rotation", red.frame);
    out << "reduced_constants: " << to_json(red.c_new).dump() << "\n";
    report["case3"] = to_json(red);
  } else if (label == CaseLabel::NonDiagonalR1) {
    const R1Diagonalization d = diagonalize_r1(p);
    print_matrix(out, "rotation", d.rotation);
    out << "reduced_constants: " << to_json(d.c_new).dump() << "\n";
    report["diagonalization"] = to_json(d);
  }
  maybe_write_json(spec, report);
  return kOk;
}

// ---------------------------------------------------------------- check

SquareMatrix random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  while (true) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = nd(rng);
    try {
      return factor_tri_orth(m).u;
    } catch (const SingularMatrix&) {
    }
  }
}

int cmd_check(const RunSpec& spec, std::ostream& out) {
  constexpr int kSamples = 20;
  const Algebra alg = load_algebra(spec);
  const StructureConstants& c = alg.c;
  const double scale = std::max(1.0, c.max_abs());
  const double tol = spec.tol.value_or(1e-10) * scale * scale;

  Json checks = Json::array();
  bool all_pass = true;
  auto report = [&](const std::string& name, double residual, double limit, const std::string& note = "") {
    const bool pass = residual <= limit;
    all_pass = all_pass && pass;
    out << (pass ? "PASS " : "FAIL ") << name << "  residual " << format_double(residual) << " (limit "
        << format_double(limit) << ")";
    if (!note.empty()) out << "  " << note;
    out << "\n";
    checks.push_back({{"name", name}, {"pass", pass}, {"residual", residual}, {"limit", limit}});
  };

  report("jacobi", jacobi_defect(c), tol);

  const double unimod = unimodular_defect(c);
  const bool unimodular = unimod <= 1e-12 * scale;
  out << "INFO unimodular_defect " << format_double(unimod) << (unimodular ? " (unimodular)" : "") << "\n";

  report("connection_metric", connection(c).metric_defect(), 1e-12 * scale);

  const RicciDecomposition rd = ricci_parts(c);
  double sym = 0;
  for (int a = 1; a <= 4; ++a) sym = std::max(sym, asymmetry(rd.part(a)));
  report("parts_symmetric", sym, 1e-12 * scale * scale);

  const SquareMatrix via_conn = ricci_via_connection(c);
  const SquareMatrix combined = ricci_combined(c);
  const double three_path = std::max({max_abs_diff(rd.total, via_conn), max_abs_diff(rd.total, combined),
                                      max_abs_diff(via_conn, combined)});
  report("three_path_ricci", three_path, tol);

  std::mt19937_64 rng(spec.seed);
  double equiv = 0;
  for (int k = 0; k < kSamples; ++k) {
    const SquareMatrix u = random_orthogonal(c.dim(), rng);
    const RicciDecomposition rotated = ricci_parts(transform(c, u));
    for (int a = 1; a <= 4; ++a)
      equiv = std::max(equiv, max_abs_diff(rotated.part(a), transform_symmetric(rd.part(a), u)));
  }
  report("orthogonal_equivariance", equiv, tol, "(" + std::to_string(kSamples) + " frames)");

  if (unimodular) report("r2_zero", rd.r2.max_abs(), 1e-12 * scale * scale, "R2 = 0 (unimodular)");

  out << (all_pass ? "all checks passed" : "invariant failure") << "\n";
  maybe_write_json(spec, {{"algebra", alg.source},
                          {"seed", spec.seed},
                          {"unimodular_defect", unimod},
                          {"checks", checks},
                          {"pass", all_pass}});
  return all_pass ? kOk : kInvariantFailure;
}

// ---------------------------------------------------------------- presets

int cmd_presets(std::ostream& out) {
  for (const std::string& name : preset_names()) {
    const auto v = preset(name).as_array();
    out << name << ": ";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << format_double(v[i]);
    out << "\n";
  }
  return kOk;
}

void add_algebra_options(CLI::App* cmd, RunSpec& spec) {
  cmd->add_option("--preset", spec.preset, "Built-in algebra (see `presets`)");
  cmd->add_option("--params", spec.params, "Six parameters a1,a2,a3,b1,b2,b3");
  cmd->add_option("--algebra", spec.algebra_file, "Structure constants JSON file");
  cmd->add_option("--out", spec.out_prefix, "Output path prefix");
  cmd->add_option("--format", spec.format, "csv, json or both")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}, {"both", Format::both}})
                     .description(""))
      ->type_name("csv|json|both");
  cmd->add_option("--seed", spec.seed, "Seed for randomized checks");
  cmd->add_option("--tol", spec.tol, "Tolerance override");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ricci flow of left-invariant metrics on Lie groups", "lieflow"};
  app.require_subcommand(1);
  RunSpec spec;

  auto* ricci = app.add_subcommand("ricci", "Ricci decomposition at the frame b0");
  add_algebra_options(ricci, spec);
  ricci->add_option("--b0", spec.b0_file, "Frame matrix JSON file");

  auto* flow = app.add_subcommand("flow", "Integrate the Ricci flow");
  add_algebra_options(flow, spec);
  flow->add_option("--b0", spec.b0_file, "Initial upper-triangular frame JSON file");
  flow->add_option("--t-end", spec.flow.t_end, "Final time");
  flow->add_option("--h0", spec.flow.h0, "Fixed or initial step");
  flow->add_option("--method", spec.method, "rk4 or adaptive");
  flow->add_option("--rel-tol", spec.flow.rel_tol, "Relative tolerance (adaptive)");
  flow->add_option("--abs-tol", spec.flow.abs_tol, "Absolute tolerance (adaptive)");
  flow->add_option("--max-step", spec.flow.max_step, "Largest adaptive step");
  flow->add_option("--min-step", spec.flow.min_step, "Underflow threshold for adaptive steps");
  flow->add_option("--max-steps", spec.flow.max_steps, "Step budget");
  flow->add_flag("--normalized", spec.flow.normalized, "Volume-normalized flow");
  flow->add_option("--collapse-threshold", spec.flow.collapse_threshold, "Collapse bound on max |b|");
  flow->add_option("--sample-every", spec.flow.sample_every, "Output stride in accepted steps");

  auto* cls = app.add_subcommand("classify", "Classify a six-parameter unimodular algebra");
  add_algebra_options(cls, spec);
  cls->add_flag("--solve-a", spec.solve_a, "Replace a1..a3 by the values that diagonalize r1");

  auto* check = app.add_subcommand("check", "Run the invariant battery");
  add_algebra_options(check, spec);

  auto* presets = app.add_subcommand("presets", "List built-in algebras");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*ricci) return cmd_ricci(spec, out);
    if (*flow) return cmd_flow(spec, out);
    if (*cls) return cmd_classify(spec, out);
    if (*check) return cmd_check(spec, out);
    if (*presets) return cmd_presets(out);
  } catch (const SingularMatrix& e) {
    err << "error: singular matrix: " << e.what() << "\n";
    return kSingular;
  } catch (const DomainError& e) {
    err << "error: domain: " << e.what() << "\n";
    return kDomainError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace lieflow::cli
