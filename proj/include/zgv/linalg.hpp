#pragma once

// Dense complex linear algebra used throughout the library.
//
// Matrices are Eigen column-major complex matrices. Generalized eigenproblems
// are always written as pencils P + xi*Q, matching the way bivariate pencils
// A + lambda*B + mu*C are sliced.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace zgv {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Throws InvalidArgument if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

/// Eigentriples of a regular pencil P + xi*Q.
///
/// Infinite eigenvalues are flagged, never represented as large numbers; their
/// `values` entry is NaN. Right and left vectors have unit 2-norm and satisfy
/// (P + xi Q) x = 0 and y^H (P + xi Q) = 0.
struct EigentripleSet {
  ComplexVector values;
  std::vector<bool> infinite;
  ComplexMatrix right;
  ComplexMatrix left;

  Index size() const { return values.size(); }
  bool is_finite(Index i) const { return !infinite[static_cast<std::size_t>(i)]; }
  std::vector<Index> finite_indices() const;
};

struct SvdResult {
  ComplexMatrix U;
  RealVector singular_values;  // nonincreasing
  ComplexMatrix V;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// All eigenvalues of P + xi*Q with left and right eigenvectors.
/// Throws SingularPencil when det(P + xi Q) vanishes identically (numerically).
EigentripleSet gep_solve(const ComplexMatrix& p, const ComplexMatrix& q);

/// Eigenvalues only; same conventions as gep_solve.
EigentripleSet gep_values(const ComplexMatrix& p, const ComplexMatrix& q);

SvdResult svd(const ComplexMatrix& m);
RealVector singular_values(const ComplexMatrix& m);

/// Number of singular values above rel_tol * sigma_1 (0 for the zero matrix).
int numerical_rank(const ComplexMatrix& m, double rel_tol);

/// Exact spectral norm (via singular values); use for small matrices.
double norm2(const ComplexMatrix& m);

/// Spectral norm estimate by power iteration on M^H M; cheap for large M.
double norm2_estimate(const ComplexMatrix& m, int iterations = 30);

/// Haar-distributed unitary matrix, bitwise deterministic for a given seed.
ComplexMatrix random_unitary(Index size, std::uint64_t seed);

/// Deterministic generator shared by every seeded routine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  cplx complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
  }
  ComplexMatrix complex_gaussian(Index rows, Index cols);
  ComplexVector complex_unit_vector(Index size);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Independent sub-stream seed (splitmix64 of seed and stream index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace zgv
