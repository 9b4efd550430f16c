#pragma once

// Bivariate pencils A + lambda*B + mu*C and their one-parameter slices.

#include "zgv/linalg.hpp"

#include <cstdint>
#include <vector>

namespace zgv {

class BivariatePencil {
 public:
  /// Throws InvalidArgument unless A, B, C are square, equal-sized and finite.
  BivariatePencil(ComplexMatrix a, ComplexMatrix b, ComplexMatrix c);

  const ComplexMatrix& A() const { return a_; }
  const ComplexMatrix& B() const { return b_; }
  const ComplexMatrix& C() const { return c_; }
  Index n() const { return a_.rows(); }

  // Spectral norms, computed once.
  double norm_a() const { return norm_a_; }
  double norm_b() const { return norm_b_; }
  double norm_c() const { return norm_c_; }

  /// ||A|| + |lambda| ||B|| + |mu| ||C||, the natural residual scale at a point.
  double scale(cplx lambda, cplx mu) const {
    return norm_a_ + std::abs(lambda) * norm_b_ + std::abs(mu) * norm_c_;
  }

  ComplexMatrix evaluate(cplx lambda, cplx mu) const;

 private:
  ComplexMatrix a_, b_, c_;
  double norm_a_ = 0, norm_b_ = 0, norm_c_ = 0;
};

/// Eigentriples in mu of (A + lambda0 B) + mu C.
EigentripleSet mu_slice(const BivariatePencil& p, cplx lambda0);

/// Eigentriples in lambda of (A + mu0 C) + lambda B.
EigentripleSet lambda_slice(const BivariatePencil& p, cplx mu0);

/// Probabilistic biregularity check: slices at random parameter values must be
/// regular, and two random slices of the same family may not share a finite
/// eigenvalue (that would be a factor lambda - c or mu - c of det).
bool is_biregular_probe(const BivariatePencil& p, int trials, std::uint64_t seed);

/// True when a random mu-slice has a repeated eigenvalue at two independent
/// sample points, i.e. det(A + lambda B + mu C) has a squared factor and every
/// point of that component is critical.
bool has_repeated_component(const BivariatePencil& p, std::uint64_t seed);

/// Throws NotBiregular when either check above fails. Used by the pipelines.
void require_biregular(const BivariatePencil& p, std::uint64_t seed);

struct MultiplicityEstimate {
  int algebraic = 1;
  int geometric = 1;
  std::vector<Index> cluster_members;  // includes the target
};

/// Cluster of eigenvalues around values(target).
///
/// Two eigenvalues cluster when |xi_i - xi_t| <= cluster_tol (1 + |xi_t|). Larger
/// clusters of size k use the radius max(cluster_tol, min(1e-3, 10 eps^(1/k))),
/// the spread of a perturbed k-by-k Jordan block. Geometric multiplicity is the
/// numerical rank of the clustered right eigenvectors at max(1e-8, that spread).
MultiplicityEstimate estimate_multiplicity(const EigentripleSet& e, Index target,
                                           double cluster_tol = 1e-6);

struct EigencurveRow {
  double lambda = 0;
  std::vector<double> real_mu;  // sorted, only values with |Im| <= 1e-8 (1 + |Re|)
  std::vector<cplx> mu;         // all finite values, sorted by (Re, Im)
};

std::vector<EigencurveRow> sample_eigencurves(const BivariatePencil& p,
                                              const std::vector<double>& lambda_grid);

/// Real-filter used for plotting and for picking real points.
inline bool is_numerically_real(cplx z, double tol = 1e-8) {
  return std::abs(z.imag()) <= tol * (1.0 + std::abs(z.real()));
}

}  // namespace zgv
