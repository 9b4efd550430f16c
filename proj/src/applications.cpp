#include "zgv/applications.hpp"

#include "zgv/errors.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace zgv {

namespace {

constexpr double kSnapTol = 1e-6;

bool near_real(cplx z, double tol) { return std::abs(z.imag()) <= tol * (1.0 + std::abs(z.real())); }

bool is_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return false;
  const double size = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= 1e-12 * size;
}

double rcond2(const ComplexMatrix& m) {
  const RealVector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

/// Unit vector x in the kernel of the Hermitian matrix H with x^H B x = 0, if any.
std::optional<ComplexVector> hermitian_2d_vector(const ComplexMatrix& h, const ComplexMatrix& b,
                                                 double null_tol, double b_tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  std::vector<Index> null;
  for (Index i = 0; i < h.rows(); ++i) {
    if (std::abs(es.eigenvalues()(i)) <= null_tol) null.push_back(i);
  }
  if (null.empty()) return std::nullopt;
  ComplexMatrix x(h.rows(), static_cast<Index>(null.size()));
  for (std::size_t j = 0; j < null.size(); ++j) x.col(static_cast<Index>(j)) = es.eigenvectors().col(null[j]);
  if (x.cols() == 1) return ComplexVector(x.col(0));

  // G = X^H B X is Hermitian; mixing an eigenvector of each sign cancels the form.
  const ComplexMatrix g = x.adjoint() * b * x;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> gs(0.5 * (g + g.adjoint()));
  const RealVector& gv = gs.eigenvalues();
  const Index k = gv.size() - 1;
  ComplexVector c;
  if (gv(0) < 0 && gv(k) > 0) {
    c = std::sqrt(gv(k)) * gs.eigenvectors().col(0) + std::sqrt(-gv(0)) * gs.eigenvectors().col(k);
  } else {
    Index best = 0;
    for (Index i = 1; i <= k; ++i) {
      if (std::abs(gv(i)) < std::abs(gv(best))) best = i;
    }
    if (std::abs(gv(best)) > b_tol) return std::nullopt;
    c = gs.eigenvectors().col(best);
  }
  ComplexVector out = x * c;
  return ComplexVector(out / out.norm());
}

bool two_d_less(const TwoDEigenvalue& a, const TwoDEigenvalue& b) {
  if (a.lambda != b.lambda) return a.lambda < b.lambda;
  return a.mu < b.mu;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Direct: return "direct";
    case Method::Projected: return "projected";
    case Method::Mfrd: return "mfrd";
  }
  return "direct";
}

std::optional<Method> parse_method(std::string_view s) {
  if (s == "direct") return Method::Direct;
  if (s == "projected") return Method::Projected;
  if (s == "mfrd") return Method::Mfrd;
  return std::nullopt;
}

PipelineReport find_critical_points(const BivariatePencil& p, Method method, Mode mode,
                                    std::uint64_t seed, const PipelineSettings& s) {
  switch (method) {
    case Method::Direct: return critical_points_direct(p, mode, s.delta, seed);
    case Method::Projected: return critical_points_projected(p, mode, s.delta1, s.delta2, seed);
    case Method::Mfrd: return mfrd_refine_all(p, s.mfrd_delta, mode, seed, s.mfrd);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method");
}

TwoDevpResult twod_eigenvalues(const ComplexMatrix& a, const ComplexMatrix& b, Method method,
                               std::uint64_t seed) {
  if (a.rows() != a.cols() || b.rows() != a.rows() || b.cols() != a.rows()) {
    throw Error(ErrorCode::InvalidArgument, "A and B must be square of equal size");
  }
  require_finite(a, "A");
  require_finite(b, "B");
  if (!is_hermitian(a)) throw Error(ErrorCode::NotHermitian, "A is not Hermitian");
  if (!is_hermitian(b)) throw Error(ErrorCode::NotHermitian, "B is not Hermitian");
  {
    const ComplexMatrix bh = 0.5 * (b + b.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(bh, Eigen::EigenvaluesOnly);
    const RealVector& ev = es.eigenvalues();
    const double tol = 1e-12 * std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    if (!(ev(0) < -tol && ev(ev.size() - 1) > tol)) {
      throw Error(ErrorCode::NotIndefinite, "B must have eigenvalues of both signs");
    }
  }
  const Index n = a.rows();
  const BivariatePencil p(a, -b, -ComplexMatrix::Identity(n, n));
  TwoDevpResult out;
  out.report = find_critical_points(p, method, Mode::All2D, seed);

  const double nb = p.norm_b();
  for (const CriticalPoint& cp : out.report.points) {
    if (!near_real(cp.lambda, kSnapTol) || !near_real(cp.mu, kSnapTol)) continue;
    const double l = cp.lambda.real(), m = cp.mu.real();
    const ComplexMatrix h = a - l * b - m * ComplexMatrix::Identity(n, n);
    const double sc = p.scale(l, m);
    const auto x = hermitian_2d_vector(0.5 * (h + h.adjoint()), b, 1e-6 * sc, 1e-8 * nb);
    if (!x) continue;
    TwoDEigenvalue e;
    e.lambda = l;
    e.mu = m;
    e.x = *x;
    e.res_eig = (h * e.x).norm();
    e.res_b = std::abs(e.x.dot(b * e.x));
    e.kind = cp.kind;
    out.eigenvalues.push_back(std::move(e));
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), two_d_less);
  // Snapping can bring two near-real copies of one point together.
  std::vector<TwoDEigenvalue> unique;
  for (auto& e : out.eigenvalues) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const TwoDEigenvalue& u) {
      return std::abs(u.lambda - e.lambda) + std::abs(u.mu - e.mu) <=
             kSnapTol * (1.0 + std::abs(e.lambda) + std::abs(e.mu));
    });
    if (!dup) unique.push_back(std::move(e));
  }
  out.eigenvalues = std::move(unique);
  return out;
}

InstabilityResult distance_to_instability(const ComplexMatrix& a, Method method,
                                          std::uint64_t seed) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw Error(ErrorCode::InvalidArgument, "A must be a nonempty square matrix");
  }
  require_finite(a, "A");
  const Index n = a.rows();
  {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(a, false);
    for (Index i = 0; i < n; ++i) {
      if (!(es.eigenvalues()(i).real() < 0)) {
        throw Error(ErrorCode::NotStable, "A has an eigenvalue with nonnegative real part");
      }
    }
  }
  const cplx I(0.0, 1.0);
  ComplexMatrix at = ComplexMatrix::Zero(2 * n, 2 * n);
  ComplexMatrix bt = ComplexMatrix::Zero(2 * n, 2 * n);
  at.topRightCorner(n, n) = a;
  at.bottomLeftCorner(n, n) = a.adjoint();
  bt.topRightCorner(n, n) = I * ComplexMatrix::Identity(n, n);
  bt.bottomLeftCorner(n, n) = -I * ComplexMatrix::Identity(n, n);

  InstabilityResult out;
  const double na = norm2(a);
  std::optional<TwoDEigenvalue> best;
  try {
    out.points = twod_eigenvalues(at, bt, method, seed).eigenvalues;
    for (const TwoDEigenvalue& e : out.points) {
      if (e.mu > 1e-10 * na && (!best || e.mu < best->mu)) best = e;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotBiregular) throw;
  }

  if (best) {
    out.lambda = best->lambda;
    out.beta = best->mu;
    const BivariatePencil p(at, -bt, -ComplexMatrix::Identity(2 * n, 2 * n));
    try {
      const GaussNewtonResult g = gauss_newton_2d(p, best->lambda, best->mu, best->x, best->x);
      const cplx l = g.state.lambda, m = g.state.mu;
      const double drift = std::abs(l - best->lambda) + std::abs(m - best->mu);
      if (near_real(l, 1e-8) && near_real(m, 1e-8) && drift <= 1e-6 * (1.0 + std::abs(m))) {
        out.lambda = l.real();
        out.beta = m.real();
        out.refined = true;
      }
    } catch (const Error&) {
      // keep the unrefined point
    }
    return out;
  }

  // Repeated factors (e.g. A = -I, where every singular value is double) leave
  // the pencil non-biregular; minimize sigma_min(A - i lambda I) directly.
  out.fallback = true;
  auto f = [&](double l) {
    const RealVector s = singular_values(a - I * l * ComplexMatrix::Identity(n, n));
    return s(n - 1);
  };
  const double r = 2.0 * na + 1.0;
  const int steps = 2000;
  double best_l = -r, best_f = f(-r);
  for (int k = 1; k <= steps; ++k) {
    const double l = -r + 2.0 * r * k / steps;
    const double v = f(l);
    if (v < best_f) {
      best_f = v;
      best_l = l;
    }
  }
  const double h = 2.0 * r / steps;
  const auto res = boost::math::tools::brent_find_minima(f, best_l - h, best_l + h, 52);
  out.lambda = res.first;
  out.beta = res.second;
  return out;
}

std::vector<DoubleEigenvaluePoint> double_eigenvalue_points(const ComplexMatrix& a,
                                                            const ComplexMatrix& b, Method method,
                                                            std::uint64_t seed) {
  if (a.rows() != a.cols() || b.rows() != a.rows() || b.cols() != a.rows()) {
    throw Error(ErrorCode::InvalidArgument, "A and B must be square of equal size");
  }
  const Index n = a.rows();
  const BivariatePencil p(a, ComplexMatrix::Identity(n, n), b);
  const PipelineReport r = find_critical_points(p, method, Mode::All2D, seed);
  std::vector<DoubleEigenvaluePoint> out;
  for (const CriticalPoint& cp : r.points) out.push_back({cp.mu, cp.lambda, cp.kind});
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.mu.real() != y.mu.real()) return x.mu.real() < y.mu.real();
    if (x.mu.imag() != y.mu.imag()) return x.mu.imag() < y.mu.imag();
    if (x.lambda.real() != y.lambda.real()) return x.lambda.real() < y.lambda.real();
    return x.lambda.imag() < y.lambda.imag();
  });
  return out;
}

BivariatePencil qep_linearization(const ComplexMatrix& l0, const ComplexMatrix& l1,
                                  const ComplexMatrix& l2, const ComplexMatrix& m) {
  const Index n = l0.rows();
  for (const ComplexMatrix* x : {&l0, &l1, &l2, &m}) {
    if (x->rows() != n || x->cols() != n) {
      throw Error(ErrorCode::InvalidArgument, "L0, L1, L2, M must be square of equal size");
    }
  }
  ComplexMatrix a = ComplexMatrix::Zero(2 * n, 2 * n);
  ComplexMatrix b = ComplexMatrix::Zero(2 * n, 2 * n);
  ComplexMatrix c = ComplexMatrix::Zero(2 * n, 2 * n);
  a.topLeftCorner(n, n) = l0;
  a.topRightCorner(n, n) = l1;
  a.bottomRightCorner(n, n) = -ComplexMatrix::Identity(n, n);
  b.topRightCorner(n, n) = l2;
  b.bottomLeftCorner(n, n) = ComplexMatrix::Identity(n, n);
  c.topLeftCorner(n, n) = m;
  return BivariatePencil(a, b, c);
}

std::vector<QepZgvPoint> qep_zgv(const ComplexMatrix& l0, const ComplexMatrix& l1,
                                 const ComplexMatrix& l2, const ComplexMatrix& m, Method method,
                                 std::uint64_t seed) {
  const BivariatePencil p = qep_linearization(l0, l1, l2, m);
  // C = [M 0; 0 0] has a kernel shared by both equations of any 2EP built
  // from this pencil, so only the singular-pencil (direct) method applies.
  if (method != Method::Direct) {
    throw Error(ErrorCode::InvalidArgument,
                "the QEP linearization needs the direct method; its 2EP is singular");
  }
  if (rcond2(l2) <= 1e-12) throw Error(ErrorCode::SingularLeadingCoeff, "L2 is singular");
  if (rcond2(m) <= 1e-12) throw Error(ErrorCode::SingularLeadingCoeff, "M is singular");
  const PipelineReport r = find_critical_points(p, method, Mode::ZGV, seed);
  std::vector<QepZgvPoint> out;
  for (const CriticalPoint& cp : r.points) {
    if (!near_real(cp.lambda, 1e-8) || !near_real(cp.mu, 1e-8)) continue;
    const double l = cp.lambda.real(), mu = cp.mu.real();
    if (mu <= 1e-8 * (1.0 + std::abs(l))) continue;
    QepZgvPoint q;
    q.lambda = l;
    q.omega = std::sqrt(mu);
    const RealVector s = singular_values(l * l * l2 + l * l1 + l0 + mu * m);
    q.residual = s(s.size() - 1);
    out.push_back(q);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.lambda != y.lambda) return x.lambda < y.lambda;
    return x.omega < y.omega;
  });
  return out;
}

}  // namespace zgv
