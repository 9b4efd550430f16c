#pragma once

// Classification of 2D points and the two global pipelines that find them:
// the direct method on the singular Delta pencil and the projected regular 2EP.

#include "zgv/pencil.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zgv {

enum class PointKind { ZGV, TwoD_a, TwoD_b, TwoD_c, TwoD_d };
std::string_view to_string(PointKind k);

enum class Mode { ZGV, All2D };
std::string_view to_string(Mode m);

struct CriticalPoint {
  cplx lambda;
  cplx mu;
  ComplexVector x;  // unit right eigenvector with y^H B x ~ 0
  ComplexVector y;  // unit left eigenvector
  PointKind kind = PointKind::ZGV;
  double res_right = 0;  // ||(A + lambda B + mu C) x||
  double res_left = 0;   // ||y^H (A + lambda B + mu C)||
  double yBx = 0;        // |y^H B x|
  double yCx = 0;        // |y^H C x|
  double scale = 1;      // ||A|| + |lambda| ||B|| + |mu| ||C||
  int null_dim = 1;
  MultiplicityEstimate mult_lambda;  // lambda in the mu-fixed slice
  MultiplicityEstimate mult_mu;      // mu in the lambda-fixed slice
};

struct ClassifyOptions {
  double accept_tol = 1e-6;  // sigma_min <= accept_tol * scale to be on a curve
  double null_tol = 1e-6;    // singular values <= null_tol * scale span the null space
  double tol_b = 1e-8;       // |y^H B x| <= tol_b ||B||
  double tol_c = 1e-6;       // |y^H C x| >  tol_c ||C|| for type a
  double cluster_tol = 1e-6;
};

/// Type of the 2D point at (lambda0, mu0).
///
/// One-dimensional null space: type a (reported as ZGV when mu0 is a simple
/// eigenvalue of the lambda0-slice) if y^H C x != 0, else type b. Larger null
/// spaces X, Y: type d if Y^H B X is nonsingular (semisimple), else type c; the
/// returned x, y satisfy y^H B x = 0.
/// Throws NotOnCurve or NotCritical.
CriticalPoint classify_point(const BivariatePencil& p, cplx lambda0, cplx mu0,
                             const ClassifyOptions& opts = {});

/// Candidate examined by a pipeline, accepted or not. Normalized quantities:
/// alpha and beta are divided by the residual scale, gamma by sqrt(1 + |lambda|^2).
struct CandidateRecord {
  cplx lambda;
  cplx mu;
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
  bool accepted = false;
  std::string reason;  // empty when accepted
};

struct PipelineReport {
  std::string method;
  Mode mode = Mode::ZGV;
  std::uint64_t seed = 0;
  std::map<std::string, double> thresholds;
  std::vector<CriticalPoint> points;
  std::vector<CandidateRecord> candidates;  // every candidate, in examination order
  std::vector<CandidateRecord> rejected;
};

/// Representatives of clusters under |dl| + |dm| <= tol (1 + |l| + |m|),
/// keeping the smallest relative residual; sorted by (Re l, Im l, Re m).
std::vector<CriticalPoint> dedup_points(std::vector<CriticalPoint> points, double tol = 1e-8);

/// Direct method: finite eigenvalues lambda_i of the singular Delta pencil,
/// then the mu-slices at each lambda_i.
PipelineReport critical_points_direct(const BivariatePencil& p, Mode mode, double delta = 1e-8,
                                      std::uint64_t seed = 1);

struct SubsetRequest {
  cplx target;
  std::size_t count;
};

/// Projected method: regular 2EP with W2 compressed by random 2n x (2n-1)
/// isometries, filtered by the block residuals and the regularity quantity.
PipelineReport critical_points_projected(const BivariatePencil& p, Mode mode,
                                         double delta1 = 1e-8, double delta2 = 1e-10,
                                         std::uint64_t seed = 1,
                                         std::optional<SubsetRequest> subset = std::nullopt);

}  // namespace zgv
