#pragma once

// JSON matrices, pencil files, point reports and eigencurve CSV.
// Complex entries are [re, im] pairs (plain numbers are read as real).

#include "zgv/applications.hpp"
#include "zgv/critical_points.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace zgv {

using json = nlohmann::json;

ComplexMatrix matrix_from_json(const json& j, const std::string& name);
json matrix_to_json(const ComplexMatrix& m);
json complex_to_json(cplx z);
json vector_to_json(const ComplexVector& v);

/// Reads a JSON file; InvalidArgument when it is missing or malformed.
json read_json_file(const std::string& path);

/// {"n": int, "A": ..., "B": ..., "C": ...}
BivariatePencil pencil_from_json(const json& j);
json pencil_to_json(const BivariatePencil& p);

/// The named square matrices of a file such as {"A": ..., "B": ...}, all of one size.
std::vector<ComplexMatrix> matrices_from_json(const json& j, const std::vector<std::string>& names);

json point_to_json(const CriticalPoint& p);
json report_to_json(const PipelineReport& r);

/// Pretty-printed, newline terminated; identical input gives identical bytes.
std::string dump(const json& j);

/// lambda, mu_1..mu_n; a value with |Im| above the real filter leaves its cell empty.
void write_curves_csv(std::ostream& os, const std::vector<EigencurveRow>& rows, Index n);

}  // namespace zgv
