#pragma once

// Thin wrappers over the LAPACK complex QZ routines. Everything here uses the
// LAPACK convention A x = lambda B x with lambda = alpha / beta.

#include "zgv/linalg.hpp"

#include <vector>

namespace zgv::lapack {

struct GeneralizedEigen {
  ComplexVector alpha;
  ComplexVector beta;
  ComplexMatrix left;   // columns y with y^H A = lambda y^H B (unnormalized)
  ComplexMatrix right;  // columns x with A x = lambda B x (unnormalized)
};

GeneralizedEigen ggev(const ComplexMatrix& a, const ComplexMatrix& b, bool vectors);

/// Generalized Schur form A = Q S Z^H, B = Q T Z^H with S, T upper triangular.
struct GeneralizedSchur {
  ComplexMatrix s;
  ComplexMatrix t;
  ComplexMatrix q;
  ComplexMatrix z;
  ComplexVector alpha;
  ComplexVector beta;
};

GeneralizedSchur gges(const ComplexMatrix& a, const ComplexMatrix& b);

/// Moves the selected eigenvalues to the leading block, updating Q and Z.
void reorder(GeneralizedSchur& schur, const std::vector<bool>& select);

/// Left and right eigenvectors of the original pencil from its Schur form.
void schur_eigenvectors(const GeneralizedSchur& schur, ComplexMatrix& left, ComplexMatrix& right);

}  // namespace zgv::lapack
