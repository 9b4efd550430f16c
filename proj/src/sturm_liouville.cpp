#include "zgv/applications.hpp"

#include "zgv/errors.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace zgv {

namespace {

using RealMatrix = Eigen::MatrixXd;

/// Chebyshev points t_j = cos(pi j / (n-1)) and the differentiation matrix on them.
void chebyshev(int n, RealVector& t, RealMatrix& d) {
  const int m = n - 1;
  t.resize(n);
  for (int j = 0; j < n; ++j) t(j) = std::cos(M_PI * j / m);
  RealVector c(n);
  for (int j = 0; j < n; ++j) c(j) = ((j == 0 || j == m) ? 2.0 : 1.0) * ((j % 2) ? -1.0 : 1.0);
  d = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) d(i, j) = (c(i) / c(j)) / (t(i) - t(j));
    }
  }
  for (int i = 0; i < n; ++i) d(i, i) = -d.row(i).sum();
}

bool near_real(cplx z) { return std::abs(z.imag()) <= 1e-6 * (1.0 + std::abs(z.real())); }

}  // namespace

SturmLiouvilleProblem mathieu_problem() {
  SturmLiouvilleProblem prob;
  prob.p = [](double) { return 1.0; };
  prob.q = [](double) { return 0.0; };
  prob.r = [](double x) { return -2.0 * std::cos(2.0 * x); };
  prob.a = 0;
  prob.b = M_PI / 2;
  prob.alpha = M_PI / 2;
  prob.beta = M_PI / 2;
  return prob;
}

BivariatePencil SturmLiouvilleDiscretization::pencil() const {
  const Index m = A.rows();
  return BivariatePencil(A, B, -ComplexMatrix::Identity(m, m));
}

SturmLiouvilleDiscretization discretize_sturm_liouville(const SturmLiouvilleProblem& prob, int n) {
  if (n < 8) throw Error(ErrorCode::InvalidArgument, "need at least 8 collocation points");
  if (!prob.p || !prob.q || !prob.r) throw Error(ErrorCode::InvalidArgument, "p, q, r must be set");
  if (!(prob.b > prob.a)) throw Error(ErrorCode::InvalidArgument, "interval must have a < b");

  RealVector t;
  RealMatrix dt;
  chebyshev(n, t, dt);
  const double len = prob.b - prob.a;
  RealVector x(n), pv(n), qv(n), rv(n);
  for (int j = 0; j < n; ++j) {
    x(j) = prob.a + 0.5 * len * (1.0 - t(j));
    pv(j) = prob.p(x(j));
    qv(j) = prob.q(x(j));
    rv(j) = prob.r(x(j));
    if (!(pv(j) > 0)) throw Error(ErrorCode::InvalidWeight, "p must be positive on [a, b]");
    if (!std::isfinite(qv(j)) || !std::isfinite(rv(j))) {
      throw Error(ErrorCode::InvalidArgument, "q and r must be finite on [a, b]");
    }
  }
  const RealMatrix d1 = (-2.0 / len) * dt;
  const RealMatrix d2 = d1 * d1;
  const RealVector dp = d1 * pv;
  RealMatrix l = -(pv.asDiagonal() * d2 + dp.asDiagonal() * d1);
  l.diagonal() += qv;

  // Boundary rows, then eliminate y(a), y(b) in favour of the interior values.
  RealMatrix bc = RealMatrix::Zero(2, n);
  bc.row(0) = -std::sin(prob.alpha) * pv(0) * d1.row(0);
  bc(0, 0) += std::cos(prob.alpha);
  bc.row(1) = -std::sin(prob.beta) * pv(n - 1) * d1.row(n - 1);
  bc(1, n - 1) += std::cos(prob.beta);
  RealMatrix bb(2, 2);
  bb << bc(0, 0), bc(0, n - 1), bc(1, 0), bc(1, n - 1);
  const Eigen::FullPivLU<RealMatrix> lu(bb);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::InvalidArgument, "boundary conditions do not fix the boundary values");
  }
  const int m = n - 2;
  const RealMatrix e = -lu.solve(bc.middleCols(1, m));  // [y(a); y(b)] = e * y_interior
  RealMatrix lb(m, 2);
  lb.col(0) = l.block(1, 0, m, 1);
  lb.col(1) = l.block(1, n - 1, m, 1);
  const RealMatrix ar = l.block(1, 1, m, m) + lb * e;

  SturmLiouvilleDiscretization out;
  out.problem = prob;
  out.n = n;
  out.nodes = x;
  out.A = ar.cast<cplx>();
  out.B = ComplexMatrix::Zero(m, m);
  for (int j = 0; j < m; ++j) out.B(j, j) = -rv(j + 1);
  return out;
}

SturmLiouvilleResult sturm_liouville_critical(const SturmLiouvilleDiscretization& d,
                                              const std::vector<int>& refine_ns,
                                              const SturmLiouvilleOptions& opts) {
  SturmLiouvilleResult out;
  MfrdOptions mo;
  // The trivial points sit on lambda = 0 and a zero of r on the grid makes B singular.
  mo.refine_spurious = true;
  mo.allow_infinite = true;
  mo.gn = opts.gn;
  out.coarse = mfrd_refine_all(d.pencil(), opts.mfrd_delta, Mode::ZGV, opts.seed, mo);

  std::vector<SturmLiouvilleDiscretization> grids;
  for (int n : refine_ns) grids.push_back(discretize_sturm_liouville(d.problem, n));

  std::uint64_t k = 0;
  for (const CriticalPoint& cp : out.coarse.points) {
    ++k;
    if (!near_real(cp.lambda) || !near_real(cp.mu)) continue;
    if (std::abs(cp.mu.real()) > opts.mu_max || std::abs(cp.lambda.real()) > opts.lambda_max) continue;
    cplx l = cp.lambda.real(), m = cp.mu.real();
    std::optional<CriticalPoint> cur = cp;
    for (const auto& g : grids) {
      const BivariatePencil p = g.pencil();
      try {
        const auto [x0, y0] = init_vectors_svd(p, l, m, derive_seed(opts.seed, 5000 + k));
        GaussNewtonResult r = gauss_newton_2d(p, l, m, x0, y0, std::nullopt, std::nullopt, opts.gn);
        if (r.point.kind != PointKind::ZGV) {
          throw Error(ErrorCode::NotCritical,
                      std::string("refined point is ") + std::string(to_string(r.point.kind)));
        }
        l = r.point.lambda;
        m = r.point.mu;
        cur = std::move(r.point);
      } catch (const Error& e) {
        CandidateRecord c;
        c.lambda = l;
        c.mu = m;
        c.reason = std::string(to_string(e.code())) + "@n=" + std::to_string(g.n);
        out.failures.push_back(std::move(c));
        cur.reset();
        break;
      }
    }
    if (cur && near_real(cur->lambda) && near_real(cur->mu)) out.points.push_back(std::move(*cur));
  }
  out.points = dedup_points(std::move(out.points), 1e-6);
  return out;
}

}  // namespace zgv
