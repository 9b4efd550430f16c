#include "zgv/refine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zgv {

namespace {

double residual_scale(const BivariatePencil& p, cplx lambda, cplx mu) {
  return std::max(1.0, p.scale(lambda, mu));
}

}  // namespace

std::pair<ComplexVector, ComplexVector> init_vectors_svd(const BivariatePencil& p, cplx lambda0,
                                                         cplx mu0, std::uint64_t seed) {
  const Index n = p.n();
  const SvdResult s = svd(p.evaluate(lambda0, mu0));
  const RealVector& sv = s.singular_values;
  if (n >= 2) {
    const double reference = n >= 3 ? sv(n - 3) : p.scale(lambda0, mu0);
    if (sv(n - 2) <= 1e-3 * reference) return init_vectors_two_dim(p, lambda0, mu0, seed);
  }
  return {s.V.col(n - 1), s.U.col(n - 1)};
}

std::pair<ComplexVector, ComplexVector> init_vectors_two_dim(const BivariatePencil& p,
                                                             cplx lambda0, cplx mu0,
                                                             std::uint64_t seed) {
  const Index n = p.n();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "two-dimensional start needs n >= 2");
  const SvdResult s = svd(p.evaluate(lambda0, mu0));
  Rng rng(seed);
  ComplexVector c(2);
  c(0) = rng.complex_normal();
  c(1) = rng.complex_normal();
  c /= c.norm();
  const ComplexVector x0 = c(0) * s.V.col(n - 2) + c(1) * s.V.col(n - 1);
  const cplx b1 = s.U.col(n - 2).dot(p.B() * x0);
  const cplx b2 = s.U.col(n - 1).dot(p.B() * x0);
  ComplexVector y0 = std::conj(b2) * s.U.col(n - 2) - std::conj(b1) * s.U.col(n - 1);
  const double ny = y0.norm();
  if (ny > 0) {
    y0 /= ny;
  } else {
    y0 = s.U.col(n - 1);
  }
  return {x0, y0};
}

ComplexVector gn_residual(const BivariatePencil& p, const GaussNewtonState& s) {
  const Index n = p.n();
  const ComplexMatrix m = p.evaluate(s.lambda, s.mu);
  ComplexVector f(2 * n + 3);
  f.head(n) = m * s.x;
  f.segment(n, n) = m.transpose() * s.w;
  f(2 * n) = s.w.transpose() * p.B() * s.x;
  f(2 * n + 1) = s.a.dot(s.x) - 1.0;
  f(2 * n + 2) = s.b.dot(s.w) - 1.0;
  return f;
}

ComplexMatrix gn_jacobian(const BivariatePencil& p, const GaussNewtonState& s) {
  const Index n = p.n();
  const ComplexMatrix m = p.evaluate(s.lambda, s.mu);
  ComplexMatrix j = ComplexMatrix::Zero(2 * n + 3, 2 * n + 2);
  j.block(0, 0, n, n) = m;
  j.block(0, 2 * n, n, 1) = p.B() * s.x;
  j.block(0, 2 * n + 1, n, 1) = p.C() * s.x;
  j.block(n, n, n, n) = m.transpose();
  j.block(n, 2 * n, n, 1) = p.B().transpose() * s.w;
  j.block(n, 2 * n + 1, n, 1) = p.C().transpose() * s.w;
  j.block(2 * n, 0, 1, n) = s.w.transpose() * p.B();
  j.block(2 * n, n, 1, n) = (p.B() * s.x).transpose();
  j.block(2 * n + 1, 0, 1, n) = s.a.adjoint();
  j.block(2 * n + 2, n, 1, n) = s.b.adjoint();
  return j;
}

GaussNewtonState gauss_newton_iterate(const BivariatePencil& p, cplx lambda0, cplx mu0,
                                      const ComplexVector& x0, const ComplexVector& y0,
                                      const std::optional<ComplexVector>& a,
                                      const std::optional<ComplexVector>& b,
                                      const GaussNewtonOptions& opts) {
  const Index n = p.n();
  if (x0.size() != n || y0.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "start vectors must have length n");
  }
  GaussNewtonState s;
  s.lambda = lambda0;
  s.mu = mu0;
  s.x = x0;
  s.w = y0.conjugate();
  s.a = a ? *a : ComplexVector(x0 / x0.norm());
  s.b = b ? *b : ComplexVector(s.w / s.w.norm());
  if (s.a.size() != n || s.b.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "normalization vectors must have length n");
  }
  const cplx ax = s.a.dot(s.x);
  const cplx bw = s.b.dot(s.w);
  if (std::abs(ax) == 0.0 || std::abs(bw) == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "start vectors are orthogonal to a or b");
  }
  s.x /= ax;
  s.w /= bw;

  double first = -1;
  // Once below res_tol one more step is taken and kept only if it does not
  // raise the residual; the test fires up to a factor 1/sigma_min(J) early.
  std::optional<GaussNewtonState> before_polish;
  for (int it = 0;; ++it) {
    const ComplexVector f = gn_residual(p, s);
    s.residual_norm = f.norm();
    s.iteration = it;
    if (first < 0) first = s.residual_norm;
    if (before_polish) {
      if (!(s.residual_norm <= before_polish->residual_norm)) {
        s = std::move(*before_polish);
      }
      s.trace.push_back({s.residual_norm, 0});
      s.converged = true;
      return s;
    }
    if (!std::isfinite(s.residual_norm) || s.residual_norm > 1e6 * std::max(first, 1e-300)) {
      s.trace.push_back({s.residual_norm, 0});
      throw GaussNewtonError(ErrorCode::DivergedIterate, "residual grew by more than 1e6", s);
    }
    const bool small = s.residual_norm <= opts.res_tol * residual_scale(p, s.lambda, s.mu);
    if (small && (s.residual_norm == 0.0 || it >= opts.max_iter)) {
      s.trace.push_back({s.residual_norm, 0});
      s.converged = true;
      return s;
    }
    if (it >= opts.max_iter) {
      s.trace.push_back({s.residual_norm, 0});
      throw GaussNewtonError(ErrorCode::NoConvergence,
                             "no convergence in " + std::to_string(opts.max_iter) + " steps", s);
    }
    const ComplexMatrix j = gn_jacobian(p, s);
    Eigen::BDCSVD<ComplexMatrix> dec(j, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& sv = dec.singularValues();
    const ComplexVector utf = dec.matrixU().adjoint() * f;
    ComplexVector coef = ComplexVector::Zero(sv.size());
    for (Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > opts.pinv_tol * sv(0)) coef(i) = utf(i) / sv(i);
    }
    const ComplexVector ds = -(dec.matrixV() * coef);
    if (small) before_polish = s;
    s.step_norm = ds.norm();
    s.trace.push_back({s.residual_norm, s.step_norm});
    const double size = 1.0 + std::sqrt(s.x.squaredNorm() + s.w.squaredNorm() +
                                        std::norm(s.lambda) + std::norm(s.mu));
    s.x += ds.head(n);
    s.w += ds.segment(n, n);
    s.lambda += ds(2 * n);
    s.mu += ds(2 * n + 1);
    if (s.step_norm <= opts.step_tol * size) {
      const ComplexVector fe = gn_residual(p, s);
      s.residual_norm = fe.norm();
      s.iteration = it + 1;
      s.trace.push_back({s.residual_norm, 0});
      s.converged = true;
      return s;
    }
  }
}

GaussNewtonResult gauss_newton_2d(const BivariatePencil& p, cplx lambda0, cplx mu0,
                                  const ComplexVector& x0, const ComplexVector& y0,
                                  const std::optional<ComplexVector>& a,
                                  const std::optional<ComplexVector>& b,
                                  const GaussNewtonOptions& opts) {
  GaussNewtonState s = gauss_newton_iterate(p, lambda0, mu0, x0, y0, a, b, opts);
  CriticalPoint cp = classify_point(p, s.lambda, s.mu);
  return {std::move(cp), std::move(s)};
}

double convergence_order(const std::vector<GaussNewtonTraceEntry>& trace, double floor) {
  std::vector<double> r;
  for (const auto& t : trace) {
    if (t.residual_norm > floor) r.push_back(t.residual_norm);
  }
  if (r.size() < 3) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t k = r.size() - 1;
  const double num = std::log(r[k] / r[k - 1]);
  const double den = std::log(r[k - 1] / r[k - 2]);
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return num / den;
}

double jacobian_condition(const BivariatePencil& p, const GaussNewtonState& s) {
  const RealVector sv = singular_values(gn_jacobian(p, s));
  if (sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

std::vector<MfrdCandidate> mfrd_candidates(const BivariatePencil& p, double delta,
                                           bool allow_infinite) {
  if (!(delta >= 0)) throw Error(ErrorCode::InvalidArgument, "delta must be nonnegative");
  const BivariatePencil w2(p.A(), (1.0 + delta) * p.B(), p.C());
  Regular2epOptions opts;
  opts.allow_infinite = allow_infinite;
  const auto eig = solve_regular_2ep({p, w2}, opts);
  const double tol = mfrd_spurious_tol(delta);
  std::vector<MfrdCandidate> out;
  out.reserve(eig.size());
  for (const auto& e : eig) {
    MfrdCandidate c;
    c.lambda = e.lambda;
    c.mu = e.mu;
    c.source = e;
    c.infinite = e.infinite;
    c.suspected_spurious = !e.infinite && std::abs(e.lambda) <= tol;
    out.push_back(std::move(c));
  }
  return out;
}

PipelineReport mfrd_refine_all(const BivariatePencil& p, double delta, Mode mode,
                               std::uint64_t seed, const MfrdOptions& opts) {
  if (!(delta > 0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  require_biregular(p, seed);
  PipelineReport r;
  r.method = "mfrd";
  r.mode = mode;
  r.seed = seed;
  r.thresholds["delta"] = delta;
  r.thresholds["spurious_tol"] = mfrd_spurious_tol(delta);
  r.thresholds["gn_res_tol"] = opts.gn.res_tol;
  r.thresholds["gn_step_tol"] = opts.gn.step_tol;
  r.thresholds["dedup_tol"] = opts.dedup_tol;

  auto cands = mfrd_candidates(p, delta, opts.allow_infinite);
  if (opts.refine_spurious) {
    // The (0, mu) family is the spectrum of the lambda = 0 slice. Inside the
    // large lambda ~ 0 cluster the 2EP values of mu are unreliable, so the
    // slice eigenvalues seed Gauss-Newton instead.
    const EigentripleSet slice = mu_slice(p, 0.0);
    for (Index i : slice.finite_indices()) {
      MfrdCandidate c;
      c.lambda = 0.0;
      c.mu = slice.values(i);
      cands.push_back(std::move(c));
    }
  }
  std::uint64_t k = 0;
  for (const MfrdCandidate& c : cands) {
    CandidateRecord rec;
    rec.lambda = c.lambda;
    rec.mu = c.mu;
    ++k;
    auto fail = [&](std::string reason) {
      rec.reason = std::move(reason);
      r.candidates.push_back(rec);
      r.rejected.push_back(rec);
    };
    if (c.infinite) {
      fail("infinite");
      continue;
    }
    if (c.suspected_spurious) {
      fail("spurious");
      continue;
    }
    try {
      const std::uint64_t sub = derive_seed(seed, 1000 + k);
      std::optional<GaussNewtonResult> got;
      try {
        const auto [x0, y0] = init_vectors_svd(p, c.lambda, c.mu, sub);
        got = gauss_newton_2d(p, c.lambda, c.mu, x0, y0, std::nullopt, std::nullopt, opts.gn);
      } catch (const Error&) {
        if (p.n() < 2) throw;
        const auto [x0, y0] = init_vectors_two_dim(p, c.lambda, c.mu, sub);
        got = gauss_newton_2d(p, c.lambda, c.mu, x0, y0, std::nullopt, std::nullopt, opts.gn);
      }
      GaussNewtonResult& g = *got;
      if (mode == Mode::ZGV && g.point.kind != PointKind::ZGV) {
        fail(std::string("not_zgv:") + std::string(to_string(g.point.kind)));
        continue;
      }
      rec.accepted = true;
      r.candidates.push_back(rec);
      r.points.push_back(std::move(g.point));
    } catch (const Error& e) {
      fail(std::string(to_string(e.code())));
    }
  }
  r.points = dedup_points(std::move(r.points), opts.dedup_tol);
  return r;
}

}  // namespace zgv
