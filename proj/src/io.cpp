#include "zgv/io.hpp"

#include "zgv/errors.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace zgv {

namespace {

double to_number(const json& v, const std::string& name) {
  if (v.is_number()) return v.get<double>();
  throw Error(ErrorCode::InvalidArgument, name + ": expected a number");
}

cplx entry_from_json(const json& v, const std::string& name) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) return {to_number(v[0], name), to_number(v[1], name)};
  throw Error(ErrorCode::InvalidArgument, name + ": entries must be numbers or [re, im]");
}

// Non-finite values have no JSON literal; they are written as null.
json real_to_json(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

json multiplicity_to_json(const MultiplicityEstimate& m) {
  return {{"algebraic", m.algebraic}, {"geometric", m.geometric}};
}

json candidate_to_json(const CandidateRecord& c) {
  return {{"lambda", complex_to_json(c.lambda)},
          {"mu", complex_to_json(c.mu)},
          {"alpha", real_to_json(c.alpha)},
          {"beta", real_to_json(c.beta)},
          {"gamma", real_to_json(c.gamma)},
          {"reason", c.reason}};
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::InvalidArgument, name + ": expected a nonempty array of rows");
  }
  const Index rows = static_cast<Index>(j.size());
  if (!j[0].is_array()) throw Error(ErrorCode::InvalidArgument, name + ": rows must be arrays");
  const Index cols = static_cast<Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw Error(ErrorCode::InvalidArgument, name + ": ragged rows");
    }
    for (Index c = 0; c < cols; ++c) m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)], name);
  }
  return m;
}

json complex_to_json(cplx z) { return json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const ComplexVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, path + ": " + e.what());
  }
}

std::vector<ComplexMatrix> matrices_from_json(const json& j, const std::vector<std::string>& names) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "expected a JSON object");
  std::vector<ComplexMatrix> out;
  for (const std::string& name : names) {
    if (!j.contains(name)) throw Error(ErrorCode::InvalidArgument, "missing matrix " + name);
    out.push_back(matrix_from_json(j.at(name), name));
    const ComplexMatrix& m = out.back();
    if (m.rows() != m.cols() || m.rows() != out.front().rows()) {
      throw Error(ErrorCode::InvalidArgument, name + ": matrices must be square of equal size");
    }
  }
  if (j.contains("n")) {
    const json& n = j.at("n");
    if (!n.is_number_integer() || n.get<long long>() != out.front().rows()) {
      throw Error(ErrorCode::InvalidArgument, "\"n\" does not match the matrix size");
    }
  }
  return out;
}

BivariatePencil pencil_from_json(const json& j) {
  auto m = matrices_from_json(j, {"A", "B", "C"});
  return BivariatePencil(std::move(m[0]), std::move(m[1]), std::move(m[2]));
}

json pencil_to_json(const BivariatePencil& p) {
  return {{"n", p.n()}, {"A", matrix_to_json(p.A())}, {"B", matrix_to_json(p.B())},
          {"C", matrix_to_json(p.C())}};
}

json point_to_json(const CriticalPoint& p) {
  return {{"lambda", complex_to_json(p.lambda)},
          {"mu", complex_to_json(p.mu)},
          {"kind", std::string(to_string(p.kind))},
          {"residuals",
           {{"right", real_to_json(p.res_right)},
            {"left", real_to_json(p.res_left)},
            {"yBx", real_to_json(p.yBx)},
            {"yCx", real_to_json(p.yCx)},
            {"scale", real_to_json(p.scale)}}},
          {"multiplicities",
           {{"null_dim", p.null_dim},
            {"lambda", multiplicity_to_json(p.mult_lambda)},
            {"mu", multiplicity_to_json(p.mult_mu)}}},
          {"x", vector_to_json(p.x)},
          {"y", vector_to_json(p.y)}};
}

json report_to_json(const PipelineReport& r) {
  json th = json::object();
  for (const auto& [k, v] : r.thresholds) th[k] = real_to_json(v);
  json points = json::array();
  for (const auto& p : r.points) points.push_back(point_to_json(p));
  json rejected = json::array();
  for (const auto& c : r.rejected) rejected.push_back(candidate_to_json(c));
  return {{"method", r.method},
          {"mode", std::string(to_string(r.mode))},
          {"seed", r.seed},
          {"thresholds", th},
          {"candidate_count", r.candidates.size()},
          {"points", points},
          {"rejected", rejected}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_curves_csv(std::ostream& os, const std::vector<EigencurveRow>& rows, Index n) {
  os << "lambda";
  for (Index k = 1; k <= n; ++k) os << ",mu_" << k;
  os << "\n";
  os.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& row : rows) {
    os << row.lambda;
    for (Index k = 0; k < n; ++k) {
      os << ",";
      if (k < static_cast<Index>(row.mu.size()) && is_numerically_real(row.mu[static_cast<std::size_t>(k)])) {
        os << row.mu[static_cast<std::size_t>(k)].real();
      }
    }
    os << "\n";
  }
}

}  // namespace zgv
