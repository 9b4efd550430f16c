#pragma once

// Local refinement of 2D points by Gauss-Newton on the overdetermined system
//   (A + lambda B + mu C) x = 0, (A + lambda B + mu C)^T w = 0, w^T B x = 0,
//   a^H x = 1, b^H w = 1          (w = conj(y)),
// and the MFRD candidate generator that seeds it.

#include "zgv/critical_points.hpp"
#include "zgv/errors.hpp"
#include "zgv/two_param.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace zgv {

struct GaussNewtonOptions {
  int max_iter = 50;
  double res_tol = 1e-12;   // relative to max(1, ||A|| + |lambda| ||B|| + |mu| ||C||)
  double step_tol = 1e-14;  // relative to 1 + ||s||
  double pinv_tol = 1e-12;  // singular values below pinv_tol * sigma_max are dropped
};

struct GaussNewtonTraceEntry {
  double residual_norm = 0;  // ||F|| before the step
  double step_norm = 0;      // ||delta s|| (0 for the final entry)
};

struct GaussNewtonState {
  cplx lambda;
  cplx mu;
  ComplexVector x, w;  // w is the conjugate of the left eigenvector
  ComplexVector a, b;
  int iteration = 0;
  double residual_norm = 0;
  double step_norm = 0;
  bool converged = false;
  std::vector<GaussNewtonTraceEntry> trace;
};

/// NoConvergence or DivergedIterate, with the iteration history.
class GaussNewtonError : public Error {
 public:
  GaussNewtonError(ErrorCode code, const std::string& message, GaussNewtonState state)
      : Error(code, message), state_(std::move(state)) {}
  const GaussNewtonState& state() const { return state_; }

 private:
  GaussNewtonState state_;
};

/// Initial vectors from the SVD of A + lambda0 B + mu0 C. When
/// sigma_{n-1} <= 1e-3 sigma_{n-2} the point looks like a type c/d point and x0
/// is a seeded random unit combination of v_{n-1}, v_n, with y0 in
/// span(u_{n-1}, u_n) chosen so that y0^H B x0 = 0. Otherwise (v_n, u_n).
std::pair<ComplexVector, ComplexVector> init_vectors_svd(const BivariatePencil& p, cplx lambda0,
                                                         cplx mu0, std::uint64_t seed);

/// The two-dimensional branch of init_vectors_svd, unconditionally (n >= 2).
std::pair<ComplexVector, ComplexVector> init_vectors_two_dim(const BivariatePencil& p,
                                                             cplx lambda0, cplx mu0,
                                                             std::uint64_t seed);

ComplexVector gn_residual(const BivariatePencil& p, const GaussNewtonState& s);
ComplexMatrix gn_jacobian(const BivariatePencil& p, const GaussNewtonState& s);

/// Plain Gauss-Newton with an SVD pseudoinverse, no damping. a and b default
/// to x0 and conj(y0). Throws GaussNewtonError.
GaussNewtonState gauss_newton_iterate(const BivariatePencil& p, cplx lambda0, cplx mu0,
                                      const ComplexVector& x0, const ComplexVector& y0,
                                      const std::optional<ComplexVector>& a = std::nullopt,
                                      const std::optional<ComplexVector>& b = std::nullopt,
                                      const GaussNewtonOptions& opts = {});

struct GaussNewtonResult {
  CriticalPoint point;
  GaussNewtonState state;
};

/// gauss_newton_iterate followed by classify_point at the limit.
GaussNewtonResult gauss_newton_2d(const BivariatePencil& p, cplx lambda0, cplx mu0,
                                  const ComplexVector& x0, const ComplexVector& y0,
                                  const std::optional<ComplexVector>& a = std::nullopt,
                                  const std::optional<ComplexVector>& b = std::nullopt,
                                  const GaussNewtonOptions& opts = {});

/// Empirical order from the last three residuals above the rounding floor
/// (100 eps times the residual scale). NaN if fewer than three are available.
double convergence_order(const std::vector<GaussNewtonTraceEntry>& trace, double floor);

/// sigma_min / sigma_max of the Jacobian at the state.
double jacobian_condition(const BivariatePencil& p, const GaussNewtonState& s);

struct MfrdCandidate {
  cplx lambda;
  cplx mu;
  TwoParamEigenpair source;
  bool suspected_spurious = false;  // |lambda| <= spurious_tol, the (0, mu) family
  bool infinite = false;
};

/// Eigenvalues of the 2EP A + lambda B + mu C, A + lambda (1 + delta) B + mu C.
/// allow_infinite lets a singular Delta0 through (singular B); otherwise a
/// singular Delta0 throws SingularDelta0.
std::vector<MfrdCandidate> mfrd_candidates(const BivariatePencil& p, double delta,
                                           bool allow_infinite = false);

inline double mfrd_spurious_tol(double delta) { return std::max(delta * 1e-2, 1e-8); }


/// MFRD candidates refined one by one with Gauss-Newton; per-candidate failures
/// are listed in the report's rejected entries. A candidate whose SVD start
/// fails is retried once from the two-dimensional start. Refined points are
/// merged at dedup_tol, since limits at degenerate points are only accurate
/// to about eps^(1/3).
struct MfrdOptions {
  /// Also refine from (0, mu_k), mu_k the eigenvalues of the lambda = 0 slice;
  /// this is what the spurious (0, mu) candidates approximate.
  bool refine_spurious = false;
  bool allow_infinite = false;
  double dedup_tol = 1e-6;
  GaussNewtonOptions gn;
};

PipelineReport mfrd_refine_all(const BivariatePencil& p, double delta, Mode mode,
                               std::uint64_t seed, const MfrdOptions& opts = {});

}  // namespace zgv
