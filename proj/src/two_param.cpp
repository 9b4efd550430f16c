#include "zgv/two_param.hpp"

#include "lapack.hpp"
#include "zgv/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace zgv {

namespace {

constexpr double kInfiniteTol = 1e-13;

struct NullVectors {
  ComplexVector right, left;
  bool tied = false;
};

NullVectors null_vectors(const ComplexMatrix& w) {
  const SvdResult s = svd(w);
  const Index n = w.rows();
  NullVectors out{s.V.col(n - 1), s.U.col(n - 1), false};
  if (n >= 2) {
    const double top = std::max(s.singular_values(0), std::numeric_limits<double>::min());
    const double a = s.singular_values(n - 2), b = s.singular_values(n - 1);
    out.tied = a <= 1e-8 * top || (b > 0 && a <= 10.0 * b && a <= 1e-6 * top);
  }
  return out;
}

/// Groups of indices whose values are within tol (1 + |v|) of each other,
/// closed under chaining.
std::vector<std::vector<Index>> clusters(const ComplexVector& v, const std::vector<bool>& skip,
                                         double tol) {
  const Index n = v.size();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Index i = 0; i < n; ++i) {
    if (skip[i]) continue;
    for (Index j = i + 1; j < n; ++j) {
      if (skip[j]) continue;
      if (std::abs(v(i) - v(j)) <= tol * (1.0 + std::max(std::abs(v(i)), std::abs(v(j))))) {
        parent[find(j)] = find(i);
      }
    }
  }
  std::vector<std::vector<Index>> groups(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    if (!skip[i]) groups[find(i)].push_back(i);
  }
  std::vector<std::vector<Index>> out;
  for (auto& g : groups) {
    if (!g.empty()) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

bool point_less(cplx l1, cplx m1, cplx l2, cplx m2) {
  if (l1.real() != l2.real()) return l1.real() < l2.real();
  if (l1.imag() != l2.imag()) return l1.imag() < l2.imag();
  if (m1.real() != m2.real()) return m1.real() < m2.real();
  return m1.imag() < m2.imag();
}

DeltaOperators build_deltas(const TwoParamProblem& t) {
  const auto& a = t.w1;
  const auto& b = t.w2;
  DeltaOperators d;
  d.d0 = kron(a.B(), b.C()) - kron(a.C(), b.B());
  d.d1 = kron(a.C(), b.A()) - kron(a.A(), b.C());
  d.d2 = kron(a.A(), b.B()) - kron(a.B(), b.A());
  d.singular = numerical_rank(d.d0, 1e-10) < d.d0.rows();
  return d;
}

TwoParamProblem build_zgv_problem(const BivariatePencil& p) {
  const Index n = p.n();
  ComplexMatrix a2 = ComplexMatrix::Zero(2 * n, 2 * n);
  ComplexMatrix b2 = ComplexMatrix::Zero(2 * n, 2 * n);
  ComplexMatrix c2 = ComplexMatrix::Zero(2 * n, 2 * n);
  a2.topLeftCorner(n, n) = p.A();
  a2.bottomRightCorner(n, n) = p.A();
  a2.bottomLeftCorner(n, n) = p.B();
  b2.topLeftCorner(n, n) = p.B();
  b2.bottomRightCorner(n, n) = p.B();
  c2.topLeftCorner(n, n) = p.C();
  c2.bottomRightCorner(n, n) = p.C();
  return {p, BivariatePencil(a2, b2, c2)};
}

std::vector<TwoParamEigenpair> solve_regular_2ep(const TwoParamProblem& t,
                                                 const Regular2epOptions& opts) {
  const DeltaOperators d = build_deltas(t);
  const Index size = d.d0.rows();
  const double norm0 = d.d0.norm();
  if (!opts.allow_infinite) {
    const double rc = norm0 > 0 ? d.d0.partialPivLu().rcond() : 0.0;
    if (!(rc >= opts.rcond_tol)) {
      throw Error(ErrorCode::SingularDelta0,
                  "Delta0 is numerically singular (rcond " + std::to_string(rc) + ")");
    }
  } else if (norm0 == 0.0) {
    throw Error(ErrorCode::SingularDelta0, "Delta0 is zero");
  }

  lapack::GeneralizedSchur qz = lapack::gges(d.d1, d.d0);
  std::vector<bool> infinite(static_cast<std::size_t>(size));
  ComplexVector lambdas(size);
  for (Index i = 0; i < size; ++i) {
    const double b = std::abs(qz.beta(i));
    if (b <= kInfiniteTol * norm0) {
      if (std::abs(qz.alpha(i)) <= kInfiniteTol * d.d1.norm()) {
        throw Error(ErrorCode::SingularPencil, "Delta1 - lambda Delta0 is singular");
      }
      infinite[i] = true;
      lambdas(i) = cplx(std::numeric_limits<double>::quiet_NaN(), 0);
    } else {
      lambdas(i) = qz.alpha(i) / qz.beta(i);
    }
  }
  if (!opts.allow_infinite && std::find(infinite.begin(), infinite.end(), true) != infinite.end()) {
    throw Error(ErrorCode::SingularDelta0, "Delta1 - lambda Delta0 has infinite eigenvalues");
  }

  struct Raw {
    cplx lambda, mu;
    bool infinite, cluster;
  };
  std::vector<Raw> raw;
  const auto groups = clusters(lambdas, infinite, opts.cluster_tol);

  bool have_vectors = false;
  ComplexMatrix left, right;
  for (const auto& g : groups) {
    if (g.size() == 1) {
      if (!have_vectors) {
        lapack::schur_eigenvectors(qz, left, right);
        have_vectors = true;
      }
      const Index i = g.front();
      const ComplexVector z = right.col(i);
      const ComplexVector w = left.col(i);
      const cplx den = w.dot(d.d0 * z);
      const cplx num = w.dot(d.d2 * z);
      raw.push_back({lambdas(i), num / den, false, false});
    }
  }
  for (const auto& g : groups) {
    if (g.size() < 2) continue;
    std::vector<bool> select(static_cast<std::size_t>(size), false);
    for (Index i : g) select[i] = true;
    lapack::GeneralizedSchur work = qz;
    lapack::reorder(work, select);
    const Index k = static_cast<Index>(g.size());
    const ComplexMatrix t11 = work.t.topLeftCorner(k, k);
    const ComplexMatrix s11 = work.s.topLeftCorner(k, k);
    const ComplexMatrix qk = work.q.leftCols(k);
    const ComplexMatrix zk = work.z.leftCols(k);
    const ComplexMatrix h2 = qk.adjoint() * d.d2 * zk;
    // Restrictions of Delta0^{-1} Delta2 and Delta0^{-1} Delta1 to the cluster's
    // deflating subspace; they commute, so a Schur basis of one triangularizes both.
    const ComplexMatrix m2 = t11.triangularView<Eigen::Upper>().solve(h2);
    const ComplexMatrix m1 = t11.triangularView<Eigen::Upper>().solve(s11);
    Eigen::ComplexSchur<ComplexMatrix> schur(m2);
    const ComplexMatrix u = schur.matrixU();
    const ComplexMatrix l_tri = u.adjoint() * m1 * u;
    for (Index j = 0; j < k; ++j) {
      raw.push_back({l_tri(j, j), schur.matrixT()(j, j), false, true});
    }
  }
  for (Index i = 0; i < size; ++i) {
    if (infinite[i]) {
      raw.push_back({cplx(std::numeric_limits<double>::quiet_NaN(), 0),
                     cplx(std::numeric_limits<double>::quiet_NaN(), 0), true, false});
    }
  }

  std::stable_sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) {
    if (a.infinite != b.infinite) return !a.infinite;
    if (a.infinite) return false;
    return point_less(a.lambda, a.mu, b.lambda, b.mu);
  });

  std::vector<TwoParamEigenpair> out;
  out.reserve(raw.size());
  for (const Raw& r : raw) {
    TwoParamEigenpair e;
    e.lambda = r.lambda;
    e.mu = r.mu;
    e.infinite = r.infinite;
    e.cluster_ambiguity = r.cluster;
    if (!r.infinite && std::isfinite(std::abs(r.mu))) {
      const NullVectors v1 = null_vectors(t.w1.evaluate(r.lambda, r.mu));
      const NullVectors v2 = null_vectors(t.w2.evaluate(r.lambda, r.mu));
      e.x1 = v1.right;
      e.y1 = v1.left;
      e.x2 = v2.right;
      e.y2 = v2.left;
      e.cluster_ambiguity = e.cluster_ambiguity || v1.tied || v2.tied;
    } else if (!r.infinite) {
      e.infinite = true;
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace zgv
