#pragma once

// Problems that reduce to 2D points of a constructed bivariate pencil:
// 2D-eigenvalues of Hermitian pairs, distance to instability, double
// eigenvalues of A + mu B, ZGV points of parameter-dependent QEPs and
// critical points of two-parameter Sturm-Liouville eigencurves.

#include "zgv/critical_points.hpp"
#include "zgv/refine.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace zgv {

enum class Method { Direct, Projected, Mfrd };
std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view s);

struct PipelineSettings {
  double delta = 1e-8;   // direct slice filter
  double delta1 = 1e-8;  // projected residual filter
  double delta2 = 1e-10; // projected regularity filter
  double mfrd_delta = 1e-2;
  MfrdOptions mfrd;
};

/// Runs one of the three global methods.
PipelineReport find_critical_points(const BivariatePencil& p, Method method, Mode mode,
                                    std::uint64_t seed, const PipelineSettings& s = {});

struct TwoDEigenvalue {
  double lambda = 0;
  double mu = 0;
  ComplexVector x;          // unit vector
  double res_eig = 0;       // ||(A - lambda B) x - mu x||
  double res_b = 0;         // |x^H B x|
  PointKind kind = PointKind::ZGV;
};

struct TwoDevpResult {
  std::vector<TwoDEigenvalue> eigenvalues;  // the real 2D points, sorted by (lambda, mu)
  PipelineReport report;                    // all 2D points of A + lambda (-B) + mu (-I)
};

/// Solutions of (A - lambda B) x = mu x, x^H B x = 0, ||x|| = 1 with real lambda, mu.
/// Points within 1e-6 (relative) of the real plane are snapped onto it.
/// Throws NotHermitian, NotIndefinite.
TwoDevpResult twod_eigenvalues(const ComplexMatrix& a, const ComplexMatrix& b, Method method,
                               std::uint64_t seed);

struct InstabilityResult {
  double beta = 0;
  double lambda = 0;
  bool refined = false;   // Gauss-Newton polish succeeded
  bool fallback = false;  // the 2D-point route failed and a 1D minimization was used
  std::vector<TwoDEigenvalue> points;
};

/// beta(A) = min over real lambda of sigma_min(A - i lambda I), as the smallest
/// positive mu among the real 2D points of At - lambda Bt - mu I with
/// At = [0 A; A^H 0], Bt = [0 iI; -iI 0]. Throws NotStable.
InstabilityResult distance_to_instability(const ComplexMatrix& a, Method method,
                                          std::uint64_t seed);

struct DoubleEigenvaluePoint {
  cplx mu;      // A + mu B has a multiple eigenvalue
  cplx lambda;  // -lambda is that eigenvalue
  PointKind kind = PointKind::ZGV;
};

/// 2D points of A + lambda I + mu B as (mu, lambda) pairs, sorted by mu.
std::vector<DoubleEigenvaluePoint> double_eigenvalue_points(const ComplexMatrix& a,
                                                            const ComplexMatrix& b, Method method,
                                                            std::uint64_t seed);

struct QepZgvPoint {
  double lambda = 0;
  double omega = 0;      // > 0
  double residual = 0;   // sigma_min(lambda^2 L2 + lambda L1 + L0 + omega^2 M)
};

/// Linearization of (lambda^2 L2 + lambda L1 + L0 + mu M) u = 0:
///   A = [L0 L1; 0 -I], B = [0 L2; I 0], C = [M 0; 0 0].
BivariatePencil qep_linearization(const ComplexMatrix& l0, const ComplexMatrix& l1,
                                  const ComplexMatrix& l2, const ComplexMatrix& m);

/// Real ZGV points with omega = sqrt(mu) > 0; mu ~ 0 points of the
/// linearization are dropped. Throws SingularLeadingCoeff when L2 or M is singular,
/// InvalidArgument for methods other than Direct (the 2EP of the linearization
/// is singular since C has an n-dimensional kernel).
std::vector<QepZgvPoint> qep_zgv(const ComplexMatrix& l0, const ComplexMatrix& l1,
                                 const ComplexMatrix& l2, const ComplexMatrix& m, Method method,
                                 std::uint64_t seed);

// -(p y')' + q y = (lambda r + mu) y on [a, b] with
// cos(alpha) y(a) - sin(alpha) p(a) y'(a) = 0, cos(beta) y(b) - sin(beta) p(b) y'(b) = 0.
struct SturmLiouvilleProblem {
  std::function<double(double)> p, q, r;
  double a = 0, b = 1;
  double alpha = 0, beta = 0;
};

/// y'' - 2 lambda cos(2x) y + mu y = 0 on [0, pi/2], y'(0) = y'(pi/2) = 0,
/// i.e. p = 1, q = 0, r = -2 cos(2x).
SturmLiouvilleProblem mathieu_problem();

/// Chebyshev collocation on n points. The two boundary rows are eliminated
/// (Schur complement), so the pencil A + lambda B + mu (-I) has size n - 2
/// and no infinite eigenvalues.
struct SturmLiouvilleDiscretization {
  SturmLiouvilleProblem problem;
  int n = 0;
  RealVector nodes;  // all n collocation nodes, ascending
  ComplexMatrix A, B;
  BivariatePencil pencil() const;
};

/// Throws InvalidWeight if p <= 0 at a node, InvalidArgument if n < 8.
SturmLiouvilleDiscretization discretize_sturm_liouville(const SturmLiouvilleProblem& prob, int n);

struct SturmLiouvilleOptions {
  std::uint64_t seed = 1;
  double mfrd_delta = 1e-2;
  // Coarse points outside |mu| <= mu_max, |lambda| <= lambda_max are not refined;
  // far out the coarse grid no longer resolves the eigenfunctions.
  double mu_max = 100;
  double lambda_max = 100;
  GaussNewtonOptions gn;
};

struct SturmLiouvilleResult {
  std::vector<CriticalPoint> points;       // real ZGV points on the finest grid
  std::vector<CandidateRecord> failures;   // coarse points lost on the way
  PipelineReport coarse;
};

/// Real ZGV points of the coarse discretization (MFRD + Gauss-Newton), each
/// carried through the finer grids in refine_ns by Gauss-Newton.
SturmLiouvilleResult sturm_liouville_critical(const SturmLiouvilleDiscretization& d,
                                              const std::vector<int>& refine_ns,
                                              const SturmLiouvilleOptions& opts = {});

}  // namespace zgv
