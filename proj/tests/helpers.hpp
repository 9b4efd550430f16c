#pragma once

#include "zgv/io.hpp"

#include <doctest.h>

#include <string>

namespace zgv::test {

inline std::string data_path(const std::string& name) { return std::string(ZGV_TEST_DATA) + "/" + name; }

inline BivariatePencil load_pencil(const std::string& name) {
  return pencil_from_json(read_json_file(data_path(name)));
}

inline std::vector<ComplexMatrix> load(const std::string& name, const std::vector<std::string>& keys) {
  return matrices_from_json(read_json_file(data_path(name)), keys);
}

inline BivariatePencil random_pencil(Index n, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix a = rng.complex_gaussian(n, n);
  ComplexMatrix b = rng.complex_gaussian(n, n);
  ComplexMatrix c = rng.complex_gaussian(n, n);
  return BivariatePencil(a, b, c);
}

inline double dist(cplx l1, cplx m1, cplx l2, cplx m2) {
  return std::max(std::abs(l1 - l2), std::abs(m1 - m2));
}

/// Index of the closest point within tol, or -1.
inline int find_point(const std::vector<CriticalPoint>& pts, cplx l, cplx m, double tol) {
  int best = -1;
  double bd = tol;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = dist(pts[i].lambda, pts[i].mu, l, m);
    if (d <= bd) {
      bd = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

inline bool has_value(const ComplexVector& v, cplx z, double tol) {
  for (Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i) - z) <= tol) return true;
  return false;
}

}  // namespace zgv::test
