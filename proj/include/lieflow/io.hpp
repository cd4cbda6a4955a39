#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "lieflow/catalog3d.hpp"
#include "lieflow/curvature.hpp"
#include "lieflow/flow.hpp"
#include "lieflow/lie.hpp"
#include "lieflow/matrix.hpp"

namespace lieflow {

using Json = nlohmann::json;

/// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

/// Dense row-major nested array.
Json to_json(const SquareMatrix& m);
/// Throws ParseError on ragged or non-numeric input.
SquareMatrix matrix_from_json(const Json& j);

/// {"dim": n, "entries": [{"k", "i", "j", "value"}, ...]} with zero-based
/// indices, i < j, zero entries omitted.
Json to_json(const StructureConstants& c);
/// Throws ParseError. Entries with i > j are mirrored; i == j is rejected.
StructureConstants structure_constants_from_json(const Json& j);

Json to_json(const Unimodular3Params& p);

/// Keys r1..r4, total, scalar.
Json to_json(const RicciDecomposition& r);

Json to_json(const FlowConfig& cfg);

/// Header row: t, b_ij (i <= j, row-major), g_ij (i <= j), R_ij (i <= j), scalar.
std::string csv_header(std::size_t n);
void write_csv(std::ostream& out, const Trajectory& traj);

/// {"metadata": {...}, "samples": [{"t", "b", "g", "ricci", "scalar"}, ...]}.
/// The metadata object is supplied by the caller and extended with
/// termination, collapse_time_estimate and step counts.
Json to_json(const Trajectory& traj, Json metadata);

Json to_json(const R1Diagonalization& d);
Json to_json(const Case3Reduction& r);

}  // namespace lieflow
