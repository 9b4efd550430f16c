#pragma once

// Small-n characteristic polynomials and a resultant based ZGV oracle.
// These are reference tools: exact in exact arithmetic, O(n^6) and worse in
// practice, and only meant for n <= 8 (char_poly) or n <= 4 (oracles).

#include "zgv/linalg.hpp"
#include "zgv/pencil.hpp"

#include <utility>
#include <vector>

namespace zgv {

/// p(lambda, mu) = sum_{i,j} coeffs(i, j) lambda^i mu^j.
struct BivariatePoly {
  ComplexMatrix coeffs;  // (deg_lambda + 1) x (deg_mu + 1)

  int deg_lambda() const { return static_cast<int>(coeffs.rows()) - 1; }
  int deg_mu() const { return static_cast<int>(coeffs.cols()) - 1; }

  cplx operator()(cplx lambda, cplx mu) const;
  /// sum |c_ij| |lambda|^i |mu|^j, the natural size for relative tests.
  double magnitude(cplx lambda, cplx mu) const;

  BivariatePoly d_lambda() const;
  BivariatePoly d_mu() const;

  /// Coefficients of mu^j at a fixed lambda (ascending powers).
  ComplexVector in_mu(cplx lambda) const;
  /// Coefficients of lambda^i at a fixed mu (ascending powers).
  ComplexVector in_lambda(cplx mu) const;
};

/// det(A + lambda B + mu C) by interpolation on a scaled roots-of-unity grid.
BivariatePoly char_poly(const BivariatePencil& p);

/// Roots of c0 + c1 z + ... (ascending) via companion eigenvalues. Leading
/// coefficients below 1e-12 of the largest are dropped.
std::vector<cplx> poly_roots(const ComplexVector& ascending);

/// All finite isolated common roots of two bivariate polynomials, found from
/// the resultant in mu and polished by Newton's method. Throws
/// DegenerateResultant if the resultant vanishes identically.
std::vector<std::pair<cplx, cplx>> common_roots(const BivariatePoly& f, const BivariatePoly& g);

/// ZGV points as the finite solutions of p = 0, p_lambda = 0 with p_mu != 0.
/// Only for n <= 4.
std::vector<std::pair<cplx, cplx>> zgv_oracle(const BivariatePencil& p);

}  // namespace zgv
