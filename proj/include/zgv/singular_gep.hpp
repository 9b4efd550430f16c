#pragma once

// Finite eigenvalues of a singular pencil Delta1 - lambda Delta0 by random
// projection to its normal rank.

#include "zgv/linalg.hpp"

#include <cstdint>
#include <vector>

namespace zgv {

struct FilteredEigenvalue {
  cplx lambda;
  double alpha = 0;  // ||W_perp^H (D1 - lambda D0) Z x||
  double beta = 0;   // ||y^H W^H (D1 - lambda D0) Z_perp||
  double gamma = 0;  // |y^H W^H D0 Z x| / sqrt(1 + |lambda|^2)
  bool infinite = false;
  bool accepted = false;
};

struct SingularGepResult {
  std::vector<FilteredEigenvalue> eigenvalues;  // all nrank projected eigenvalues
  double norm_d1 = 0;
  double norm_d0 = 0;
};

/// Projects with the leading nrank columns of two seeded random unitaries and
/// accepts lambda when max(alpha, beta) < delta1 (||D1|| + |lambda| ||D0||) and
/// gamma > delta2. Throws ProjectedPencilSingular if the projection is itself
/// singular.
SingularGepResult singular_gep_eigenvalues(const ComplexMatrix& d1, const ComplexMatrix& d0,
                                           Index nrank, double delta1, double delta2,
                                           std::uint64_t seed);

/// max over random xi of numerical_rank(D1 - xi D0, 1e-10).
Index normal_rank_estimate(const ComplexMatrix& d1, const ComplexMatrix& d0, int trials,
                           std::uint64_t seed);

}  // namespace zgv
