#include "zgv/singular_gep.hpp"

#include "zgv/errors.hpp"

#include <cmath>

namespace zgv {

SingularGepResult singular_gep_eigenvalues(const ComplexMatrix& d1, const ComplexMatrix& d0,
                                           Index nrank, double delta1, double delta2,
                                           std::uint64_t seed) {
  const Index n = d1.rows();
  if (d1.cols() != n || d0.rows() != n || d0.cols() != n) {
    throw Error(ErrorCode::InvalidArgument, "Delta matrices must be square and of equal size");
  }
  if (nrank < 1 || nrank > n) throw Error(ErrorCode::InvalidArgument, "nrank out of range");
  if (!(delta1 > 0) || !(delta2 > 0)) {
    throw Error(ErrorCode::InvalidArgument, "thresholds must be positive");
  }
  const ComplexMatrix uw = random_unitary(n, derive_seed(seed, 1));
  const ComplexMatrix uz = random_unitary(n, derive_seed(seed, 2));
  const ComplexMatrix w = uw.leftCols(nrank), w_perp = uw.rightCols(n - nrank);
  const ComplexMatrix z = uz.leftCols(nrank), z_perp = uz.rightCols(n - nrank);

  const ComplexMatrix d1z = d1 * z, d0z = d0 * z;
  const ComplexMatrix p = w.adjoint() * d1z;
  const ComplexMatrix q = w.adjoint() * d0z;

  EigentripleSet e;
  try {
    e = gep_solve(p, -q);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::SingularPencil) {
      throw Error(ErrorCode::ProjectedPencilSingular, "projected pencil is singular");
    }
    throw;
  }

  SingularGepResult out;
  out.norm_d1 = norm2_estimate(d1);
  out.norm_d0 = norm2_estimate(d0);
  const ComplexMatrix wh_d1_zp = w.adjoint() * d1 * z_perp;
  const ComplexMatrix wh_d0_zp = w.adjoint() * d0 * z_perp;
  for (Index i = 0; i < e.size(); ++i) {
    FilteredEigenvalue f;
    if (!e.is_finite(i)) {
      f.lambda = e.values(i);
      f.infinite = true;
      out.eigenvalues.push_back(f);
      continue;
    }
    const cplx lam = e.values(i);
    const ComplexVector x = e.right.col(i);
    const ComplexVector y = e.left.col(i);
    f.lambda = lam;
    f.alpha = nrank < n ? (w_perp.adjoint() * ((d1z - lam * d0z) * x)).norm() : 0.0;
    f.beta = nrank < n ? ((y.adjoint() * (wh_d1_zp - lam * wh_d0_zp))).norm() : 0.0;
    f.gamma = std::abs(y.dot(q * x)) / std::sqrt(1.0 + std::norm(lam));
    const double bound = delta1 * (out.norm_d1 + std::abs(lam) * out.norm_d0);
    f.accepted = std::max(f.alpha, f.beta) < bound && f.gamma > delta2;
    out.eigenvalues.push_back(f);
  }
  return out;
}

Index normal_rank_estimate(const ComplexMatrix& d1, const ComplexMatrix& d0, int trials,
                           std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  Rng rng(seed);
  Index best = 0;
  for (int t = 0; t < trials; ++t) {
    const cplx xi = rng.complex_normal();
    best = std::max<Index>(best, numerical_rank(d1 - xi * d0, 1e-10));
  }
  return best;
}

}  // namespace zgv
