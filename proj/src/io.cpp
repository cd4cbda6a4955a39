#include "lieflow/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "lieflow/errors.hpp"

namespace lieflow {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json to_json(const SquareMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

SquareMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a non-empty array of rows");
  const std::size_t n = j.size();
  std::vector<double> vals;
  vals.reserve(n * n);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n) throw ParseError("matrix: rows must have length " + std::to_string(n));
    for (const auto& v : row) {
      if (!v.is_number()) throw ParseError("matrix: non-numeric entry");
      vals.push_back(v.get<double>());
    }
  }
  try {
    return SquareMatrix(n, vals);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("matrix: ") + e.what());
  }
}

Json to_json(const StructureConstants& c) {
  Json entries = Json::array();
  const std::size_t n = c.dim();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (c(k, i, j) != 0.0) entries.push_back({{"k", k}, {"i", i}, {"j", j}, {"value", c(k, i, j)}});
  return {{"dim", n}, {"entries", std::move(entries)}};
}

StructureConstants structure_constants_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_unsigned())
    throw ParseError("structure constants: missing or invalid \"dim\"");
  const auto n = j["dim"].get<std::size_t>();
  if (n == 0 || n > 64) throw ParseError("structure constants: dim out of range");
  StructureConstants c(n);
  if (!j.contains("entries")) return c;
  if (!j["entries"].is_array()) throw ParseError("structure constants: \"entries\" must be an array");
  for (const auto& e : j["entries"]) {
    for (const char* key : {"k", "i", "j"})
      if (!e.contains(key) || !e[key].is_number_unsigned() || e[key].get<std::size_t>() >= n)
        throw ParseError(std::string("structure constants: bad index \"") + key + "\"");
    if (!e.contains("value") || !e["value"].is_number())
      throw ParseError("structure constants: entry without numeric \"value\"");
    const auto k = e["k"].get<std::size_t>(), i = e["i"].get<std::size_t>(), jj = e["j"].get<std::size_t>();
    if (i == jj) throw ParseError("structure constants: entry with i == j");
    const double v = e["value"].get<double>();
    if (!std::isfinite(v)) throw ParseError("structure constants: non-finite value");
    c.set(k, i, jj, v);
  }
  return c;
}

Json to_json(const Unimodular3Params& p) {
  return {{"a1", p.a1}, {"a2", p.a2}, {"a3", p.a3}, {"b1", p.b1}, {"b2", p.b2}, {"b3", p.b3}};
}

Json to_json(const RicciDecomposition& r) {
  return {{"r1", to_json(r.r1)},       {"r2", to_json(r.r2)}, {"r3", to_json(r.r3)},
          {"r4", to_json(r.r4)},       {"total", to_json(r.total)},
          {"scalar", r.scalar}};
}

Json to_json(const FlowConfig& cfg) {
  Json j = {{"method", std::string(to_string(cfg.method))},
            {"h0", cfg.h0},
            {"rel_tol", cfg.rel_tol},
            {"abs_tol", cfg.abs_tol},
            {"t_end", cfg.t_end},
            {"max_steps", cfg.max_steps},
            {"collapse_threshold", cfg.collapse_threshold},
            {"min_step", cfg.min_step},
            {"sample_every", cfg.sample_every},
            {"normalized", cfg.normalized}};
  if (std::isfinite(cfg.max_step)) j["max_step"] = cfg.max_step;
  return j;
}

namespace {

template <class F>
void for_upper(std::size_t n, F&& f) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) f(i, j);
}

}  // namespace

std::string csv_header(std::size_t n) {
  std::string h = "t";
  for (const char* name : {"b", "g", "R"}) {
    for_upper(n, [&](std::size_t i, std::size_t j) {
      h += ',';
      h += name;
      h += '_' + std::to_string(i + 1) + std::to_string(j + 1);
    });
  }
  h += ",scalar";
  return h;
}

void write_csv(std::ostream& out, const Trajectory& traj) {
  const std::size_t n = traj.samples.empty() ? 0 : traj.samples.front().b.dim();
  out << csv_header(n) << '\n';
  for (const Sample& s : traj.samples) {
    out << format_double(s.t);
    for (const SquareMatrix* m : {&s.b, &s.g, &s.ricci})
      for_upper(n, [&](std::size_t i, std::size_t j) { out << ',' << format_double((*m)(i, j)); });
    out << ',' << format_double(s.scalar) << '\n';
  }
}

Json to_json(const Trajectory& traj, Json metadata) {
  metadata["termination"] = std::string(to_string(traj.termination));
  metadata["collapse_time_estimate"] =
      traj.collapse_time_estimate ? Json(*traj.collapse_time_estimate) : Json(nullptr);
  metadata["accepted_steps"] = traj.accepted_steps;
  metadata["rejected_steps"] = traj.rejected_steps;
  Json samples = Json::array();
  for (const Sample& s : traj.samples) {
    samples.push_back({{"t", s.t},
                       {"b", to_json(s.b)},
                       {"g", to_json(s.g)},
                       {"ricci", to_json(s.ricci)},
                       {"scalar", s.scalar}});
  }
  return {{"metadata", std::move(metadata)}, {"samples", std::move(samples)}};
}

Json to_json(const R1Diagonalization& d) {
  return {{"rotation", to_json(d.rotation)}, {"reduced_constants", to_json(d.c_new)}};
}

Json to_json(const Case3Reduction& r) {
  return {{"angles", {{"rho", r.angles.rho}, {"alpha", r.angles.alpha}, {"beta", r.angles.beta}}},
          {"params", to_json(r.params)},
          {"rotation", to_json(r.frame)},
          {"reduced_constants", to_json(r.c_new)}};
}

}  // namespace lieflow
