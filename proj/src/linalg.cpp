#include "zgv/linalg.hpp"

#include "lapack.hpp"
#include "zgv/errors.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace zgv {

namespace {

// Relative size of the QZ diagonal entries below which beta counts as zero
// (infinite eigenvalue) and alpha, beta together as an indeterminate 0/0 pair.
constexpr double kInfiniteTol = 1e-13;
constexpr double kIndeterminateTol = 1e-12;

EigentripleSet to_triples(const lapack::GeneralizedEigen& ge, double norm_p, double norm_q,
                          bool vectors) {
  const Index n = ge.alpha.size();
  EigentripleSet out;
  out.values.resize(n);
  out.infinite.assign(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < n; ++i) {
    const double a = std::abs(ge.alpha(i));
    const double b = std::abs(ge.beta(i));
    if (a <= kIndeterminateTol * norm_p && b <= kIndeterminateTol * norm_q) {
      throw Error(ErrorCode::SingularPencil, "pencil has an indeterminate 0/0 eigenvalue");
    }
    if (b <= kInfiniteTol * norm_q) {
      out.infinite[static_cast<std::size_t>(i)] = true;
      out.values(i) = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    } else {
      out.values(i) = ge.alpha(i) / ge.beta(i);
    }
  }
  if (vectors) {
    out.right = ge.right;
    out.left = ge.left;
    for (Index j = 0; j < n; ++j) {
      const double nr = out.right.col(j).norm();
      const double nl = out.left.col(j).norm();
      if (nr > 0) out.right.col(j) /= nr;
      if (nl > 0) out.left.col(j) /= nl;
    }
  }
  return out;
}

EigentripleSet solve_pencil(const ComplexMatrix& p, const ComplexMatrix& q, bool vectors) {
  if (p.rows() != p.cols() || q.rows() != q.cols() || p.rows() != q.rows() || p.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "gep_solve needs two square matrices of equal size");
  }
  const double norm_q = q.norm();
  if (norm_q == 0.0) {
    throw Error(ErrorCode::SingularPencil, "coefficient of the eigenvalue parameter is zero");
  }
  const double norm_p = std::max(p.norm(), std::numeric_limits<double>::min());
  // P + xi Q = 0  <=>  P x = xi (-Q) x
  const auto ge = lapack::ggev(p, -q, vectors);
  return to_triples(ge, norm_p, norm_q, vectors);
}

}  // namespace

void require_finite(const ComplexMatrix& m, const char* what) {
  if (m.size() == 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is empty");
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " has a non-finite entry");
      }
    }
  }
}

std::vector<Index> EigentripleSet::finite_indices() const {
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i) {
    if (is_finite(i)) out.push_back(i);
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

EigentripleSet gep_solve(const ComplexMatrix& p, const ComplexMatrix& q) {
  return solve_pencil(p, q, true);
}

EigentripleSet gep_values(const ComplexMatrix& p, const ComplexMatrix& q) {
  return solve_pencil(p, q, false);
}

SvdResult svd(const ComplexMatrix& m) {
  Eigen::BDCSVD<ComplexMatrix> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

RealVector singular_values(const ComplexMatrix& m) {
  Eigen::BDCSVD<ComplexMatrix> dec(m);
  return dec.singularValues();
}

int numerical_rank(const ComplexMatrix& m, double rel_tol) {
  if (rel_tol <= 0) throw Error(ErrorCode::InvalidArgument, "rank tolerance must be positive");
  const RealVector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++rank;
  }
  return rank;
}

double norm2(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

double norm2_estimate(const ComplexMatrix& m, int iterations) {
  if (m.size() == 0) return 0.0;
  double lower = m.colwise().norm().maxCoeff();
  if (lower == 0.0) return 0.0;
  Rng rng(0x5eedULL);
  ComplexVector v = rng.complex_unit_vector(m.cols());
  double estimate = 0.0;
  for (int k = 0; k < iterations; ++k) {
    const ComplexVector w = m * v;
    estimate = std::max(estimate, w.norm());
    ComplexVector next = m.adjoint() * w;
    const double nn = next.norm();
    if (nn == 0.0) break;
    v = next / nn;
  }
  return std::max(estimate, lower);
}

ComplexMatrix Rng::complex_gaussian(Index rows, Index cols) {
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) g(i, j) = complex_normal();
  }
  return g;
}

ComplexVector Rng::complex_unit_vector(Index size) {
  ComplexVector v(size);
  for (Index i = 0; i < size; ++i) v(i) = complex_normal();
  return v / v.norm();
}

ComplexMatrix random_unitary(Index size, std::uint64_t seed) {
  if (size < 1) throw Error(ErrorCode::InvalidArgument, "random_unitary needs size >= 1");
  Rng rng(seed);
  const ComplexMatrix g = rng.complex_gaussian(size, size);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(size, size);
  const ComplexMatrix& r = qr.matrixQR();
  for (Index j = 0; j < size; ++j) {
    const cplx d = r(j, j);
    const double ad = std::abs(d);
    if (ad > 0) q.col(j) *= d / ad;
  }
  return q;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularPencil: return "SingularPencil";
    case ErrorCode::NotBiregular: return "NotBiregular";
    case ErrorCode::SingularDelta0: return "SingularDelta0";
    case ErrorCode::ProjectedPencilSingular: return "ProjectedPencilSingular";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DivergedIterate: return "DivergedIterate";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::NotCritical: return "NotCritical";
    case ErrorCode::DegenerateResultant: return "DegenerateResultant";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotIndefinite: return "NotIndefinite";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::SingularLeadingCoeff: return "SingularLeadingCoeff";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotHermitian:
    case ErrorCode::NotIndefinite:
    case ErrorCode::NotStable:
    case ErrorCode::SingularLeadingCoeff:
    case ErrorCode::InvalidWeight:
      return true;
    default:
      return false;
  }
}

}  // namespace zgv
