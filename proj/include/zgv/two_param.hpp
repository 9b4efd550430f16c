#pragma once

// Two-parameter eigenvalue problems
//   (A1 + lambda B1 + mu C1) x1 = 0,  (A2 + lambda B2 + mu C2) x2 = 0
// through their operator determinants.

#include "zgv/linalg.hpp"
#include "zgv/pencil.hpp"

#include <vector>

namespace zgv {

struct TwoParamProblem {
  BivariatePencil w1;
  BivariatePencil w2;
};

struct DeltaOperators {
  ComplexMatrix d0;  // B1 (x) C2 - C1 (x) B2
  ComplexMatrix d1;  // C1 (x) A2 - A1 (x) C2
  ComplexMatrix d2;  // A1 (x) B2 - B1 (x) A2
  bool singular = false;  // rank(d0) deficient at 1e-10
};

DeltaOperators build_deltas(const TwoParamProblem& t);

/// W1 = P and W2 = ([[A, 0], [B, A]], diag(B, B), diag(C, C)). A point is an
/// eigenvalue of this 2EP exactly when it is a 2D point candidate of P.
TwoParamProblem build_zgv_problem(const BivariatePencil& p);

struct TwoParamEigenpair {
  cplx lambda;
  cplx mu;
  ComplexVector x1, x2;  // right null vectors of W1, W2
  ComplexVector y1, y2;  // left null vectors
  bool infinite = false;            // lambda infinite (only with allow_infinite)
  bool cluster_ambiguity = false;   // lambda in a multiple cluster or tied null space
};

struct Regular2epOptions {
  /// Accept a singular Delta0 and report infinite eigenvalues instead of
  /// refusing with SingularDelta0.
  bool allow_infinite = false;
  double cluster_tol = 1e-6;
  double rcond_tol = 1e-12;
};

/// All n1*n2 eigenvalues from the QZ form of (Delta1, Delta0). Simple lambda
/// get mu from the two-sided Rayleigh quotient; clusters get mu from the
/// deflating subspace. Output sorted by (Re lambda, Im lambda, Re mu), infinite
/// eigenvalues last.
std::vector<TwoParamEigenpair> solve_regular_2ep(const TwoParamProblem& t,
                                                 const Regular2epOptions& opts = {});

/// Deterministic ordering used for every list of points.
bool point_less(cplx l1, cplx m1, cplx l2, cplx m2);

}  // namespace zgv
