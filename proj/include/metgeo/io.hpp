#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "metgeo/distance_matrix.hpp"

namespace metgeo::io {

using Json = nlohmann::ordered_json;

/// {"labels": [...], "d": [[...]]}; other keys are ignored.
DistanceMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const DistanceMatrix& d);

/// Header row of labels, then one row of numbers per point. A leading label
/// column is accepted and ignored.
DistanceMatrix parse_csv_matrix(std::istream& in);
void write_csv_matrix(std::ostream& out, const DistanceMatrix& d);

/// Reads a matrix file; ".csv" selects CSV, anything else JSON. Throws
/// StructuralError for unreadable or malformed files.
DistanceMatrix read_matrix(const std::string& path);

/// %.17g; non-finite values are not representable in JSON.
std::string format_double(double v);

/// Serializes with every floating-point number at 17 significant digits and
/// NaN/inf as null, so identical values give byte-identical output.
void write_json(std::ostream& out, const Json& j, int indent = 2);
std::string dump_json(const Json& j, int indent = 2);

}  // namespace metgeo::io
