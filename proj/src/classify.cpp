#include "zgv/critical_points.hpp"

#include "zgv/errors.hpp"
#include "zgv/two_param.hpp"

#include <algorithm>
#include <cmath>

namespace zgv {

namespace {

Index nearest_finite(const EigentripleSet& e, cplx target) {
  Index best = -1;
  double dist = 0;
  for (Index i : e.finite_indices()) {
    const double d = std::abs(e.values(i) - target);
    if (best < 0 || d < dist) {
      best = i;
      dist = d;
    }
  }
  return best;
}

MultiplicityEstimate slice_multiplicity(const EigentripleSet& e, cplx target, double tol) {
  const Index i = nearest_finite(e, target);
  if (i < 0) return {};
  return estimate_multiplicity(e, i, tol);
}

}  // namespace

std::string_view to_string(PointKind k) {
  switch (k) {
    case PointKind::ZGV: return "ZGV";
    case PointKind::TwoD_a: return "2D-a";
    case PointKind::TwoD_b: return "2D-b";
    case PointKind::TwoD_c: return "2D-c";
    case PointKind::TwoD_d: return "2D-d";
  }
  return "unknown";
}

std::string_view to_string(Mode m) { return m == Mode::ZGV ? "zgv" : "2d"; }

CriticalPoint classify_point(const BivariatePencil& p, cplx lambda0, cplx mu0,
                             const ClassifyOptions& opts) {
  const ComplexMatrix m = p.evaluate(lambda0, mu0);
  const Index n = p.n();
  const double scale = p.scale(lambda0, mu0);
  const SvdResult s = svd(m);
  const RealVector& sv = s.singular_values;
  if (sv(n - 1) > opts.accept_tol * scale) {
    throw Error(ErrorCode::NotOnCurve, "smallest singular value " + std::to_string(sv(n - 1)) +
                                           " exceeds tolerance at the given point");
  }
  int g = 0;
  for (Index i = 0; i < n; ++i) {
    if (sv(i) <= opts.null_tol * scale) ++g;
  }
  g = std::max(g, 1);

  CriticalPoint cp;
  cp.lambda = lambda0;
  cp.mu = mu0;
  cp.scale = scale;
  cp.null_dim = g;
  const double nb = p.norm_b();
  const double nc = p.norm_c();

  if (g == 1) {
    cp.x = s.V.col(n - 1);
    cp.y = s.U.col(n - 1);
    cp.yBx = std::abs(cp.y.dot(p.B() * cp.x));
    cp.yCx = std::abs(cp.y.dot(p.C() * cp.x));
    if (cp.yBx > opts.tol_b * nb) {
      throw Error(ErrorCode::NotCritical, "|y^H B x| = " + std::to_string(cp.yBx) +
                                              " is not small at the given point");
    }
  } else {
    const ComplexMatrix x = s.V.rightCols(g);
    const ComplexMatrix y = s.U.rightCols(g);
    const ComplexMatrix sb = y.adjoint() * p.B() * x;
    const SvdResult ss = svd(sb);
    // v^H S u = 0 for u the last right and v the first left singular vector.
    cp.x = x * ss.V.col(g - 1);
    cp.y = y * ss.U.col(0);
    cp.yBx = std::abs(cp.y.dot(p.B() * cp.x));
    cp.yCx = std::abs(cp.y.dot(p.C() * cp.x));
  }
  cp.res_right = (m * cp.x).norm();
  cp.res_left = (cp.y.adjoint() * m).norm();

  const EigentripleSet ms = mu_slice(p, lambda0);
  const EigentripleSet ls = lambda_slice(p, mu0);
  cp.mult_mu = slice_multiplicity(ms, mu0, opts.cluster_tol);
  cp.mult_lambda = slice_multiplicity(ls, lambda0, opts.cluster_tol);

  if (g == 1) {
    if (cp.yCx > opts.tol_c * nc) {
      cp.kind = cp.mult_mu.algebraic == 1 ? PointKind::ZGV : PointKind::TwoD_a;
    } else {
      cp.kind = PointKind::TwoD_b;
    }
  } else {
    const ComplexMatrix x = s.V.rightCols(g);
    const ComplexMatrix y = s.U.rightCols(g);
    const RealVector ssv = singular_values(y.adjoint() * p.B() * x);
    cp.kind = ssv(g - 1) > opts.tol_c * nb ? PointKind::TwoD_d : PointKind::TwoD_c;
  }
  return cp;
}

std::vector<CriticalPoint> dedup_points(std::vector<CriticalPoint> points, double tol) {
  auto rel = [](const CriticalPoint& c) { return c.res_right / std::max(c.scale, 1e-300); };
  std::vector<CriticalPoint> out;
  for (auto& c : points) {
    bool merged = false;
    for (auto& o : out) {
      const double d = std::abs(c.lambda - o.lambda) + std::abs(c.mu - o.mu);
      if (d <= tol * (1.0 + std::abs(o.lambda) + std::abs(o.mu))) {
        if (rel(c) < rel(o)) o = c;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return point_less(a.lambda, a.mu, b.lambda, b.mu);
  });
  return out;
}

}  // namespace zgv
