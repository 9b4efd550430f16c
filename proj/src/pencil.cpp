#include "zgv/pencil.hpp"

#include "zgv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zgv {

namespace {

constexpr double kSharedRootTol = 1e-6;

cplx random_point(Rng& rng) { return 0.5 + rng.complex_normal(); }

std::vector<cplx> finite_values(const EigentripleSet& e) {
  std::vector<cplx> out;
  for (Index i : e.finite_indices()) out.push_back(e.values(i));
  return out;
}

bool share_root(const std::vector<cplx>& u, const std::vector<cplx>& v) {
  for (cplx a : u) {
    for (cplx b : v) {
      if (std::abs(a - b) <= kSharedRootTol * (1.0 + std::abs(a))) return true;
    }
  }
  return false;
}

bool has_repeat(const std::vector<cplx>& u) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      if (std::abs(u[i] - u[j]) <= kSharedRootTol * (1.0 + std::abs(u[i]))) return true;
    }
  }
  return false;
}

bool less_complex(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

BivariatePencil::BivariatePencil(ComplexMatrix a, ComplexMatrix b, ComplexMatrix c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  const Index n = a_.rows();
  if (n < 1 || a_.cols() != n || b_.rows() != n || b_.cols() != n || c_.rows() != n ||
      c_.cols() != n) {
    throw Error(ErrorCode::InvalidArgument, "A, B, C must be square matrices of equal size");
  }
  require_finite(a_, "A");
  require_finite(b_, "B");
  require_finite(c_, "C");
  norm_a_ = norm2(a_);
  norm_b_ = norm2(b_);
  norm_c_ = norm2(c_);
}

ComplexMatrix BivariatePencil::evaluate(cplx lambda, cplx mu) const {
  return a_ + lambda * b_ + mu * c_;
}

EigentripleSet mu_slice(const BivariatePencil& p, cplx lambda0) {
  return gep_solve(p.A() + lambda0 * p.B(), p.C());
}

EigentripleSet lambda_slice(const BivariatePencil& p, cplx mu0) {
  return gep_solve(p.A() + mu0 * p.C(), p.B());
}

bool is_biregular_probe(const BivariatePencil& p, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  Rng rng(seed);
  try {
    for (int t = 0; t < trials; ++t) {
      const cplx l1 = random_point(rng), l2 = random_point(rng);
      const cplx m1 = random_point(rng), m2 = random_point(rng);
      const auto mu_a = finite_values(gep_values(p.A() + l1 * p.B(), p.C()));
      const auto mu_b = finite_values(gep_values(p.A() + l2 * p.B(), p.C()));
      const auto la_a = finite_values(gep_values(p.A() + m1 * p.C(), p.B()));
      const auto la_b = finite_values(gep_values(p.A() + m2 * p.C(), p.B()));
      if (share_root(mu_a, mu_b) || share_root(la_a, la_b)) return false;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularPencil) return false;
    throw;
  }
  return true;
}

bool has_repeated_component(const BivariatePencil& p, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 17));
  for (int t = 0; t < 2; ++t) {
    const cplx l0 = random_point(rng);
    if (!has_repeat(finite_values(gep_values(p.A() + l0 * p.B(), p.C())))) return false;
  }
  return true;
}

void require_biregular(const BivariatePencil& p, std::uint64_t seed) {
  if (!is_biregular_probe(p, 2, derive_seed(seed, 16))) {
    throw Error(ErrorCode::NotBiregular,
                "a slice is singular or det(A + lambda B + mu C) has a fixed factor");
  }
  if (has_repeated_component(p, seed)) {
    throw Error(ErrorCode::NotBiregular,
                "det(A + lambda B + mu C) has a repeated factor; every point of it is critical");
  }
}

MultiplicityEstimate estimate_multiplicity(const EigentripleSet& e, Index target,
                                           double cluster_tol) {
  if (target < 0 || target >= e.size() || !e.is_finite(target)) {
    throw Error(ErrorCode::InvalidArgument, "multiplicity target must be a finite eigenvalue");
  }
  const cplx t = e.values(target);
  std::vector<std::pair<double, Index>> by_distance;
  for (Index i : e.finite_indices()) {
    if (i != target) by_distance.push_back({std::abs(e.values(i) - t), i});
  }
  std::sort(by_distance.begin(), by_distance.end());

  MultiplicityEstimate out;
  out.cluster_members = {target};
  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<Index> group = {target};
  for (const auto& [dist, idx] : by_distance) {
    (void)dist;
    group.push_back(idx);
    const int k = static_cast<int>(group.size());
    double radius = cluster_tol;
    if (k > 2) radius = std::max(cluster_tol, std::min(1e-3, 10.0 * std::pow(eps, 1.0 / k)));
    double diameter = 0;
    for (Index a : group) {
      for (Index b : group) diameter = std::max(diameter, std::abs(e.values(a) - e.values(b)));
    }
    if (diameter <= radius * (1.0 + std::abs(t))) out.cluster_members = group;
    if (dist > 1e-3 * (1.0 + std::abs(t))) break;
  }
  std::sort(out.cluster_members.begin(), out.cluster_members.end());
  out.algebraic = static_cast<int>(out.cluster_members.size());
  out.geometric = 1;
  if (out.algebraic > 1 && e.right.cols() == e.size()) {
    ComplexMatrix vecs(e.right.rows(), out.algebraic);
    for (int j = 0; j < out.algebraic; ++j) vecs.col(j) = e.right.col(out.cluster_members[j]);
    // Eigenvectors of a perturbed Jordan block differ by about the same
    // eps^(1/k) as its eigenvalues, so the rank test uses that spread too.
    const double rank_tol = std::max(1e-8, std::min(1e-3, 10.0 * std::pow(eps, 1.0 / out.algebraic)));
    out.geometric = std::clamp(numerical_rank(vecs, rank_tol), 1, out.algebraic);
  }
  return out;
}

std::vector<EigencurveRow> sample_eigencurves(const BivariatePencil& p,
                                              const std::vector<double>& lambda_grid) {
  std::vector<EigencurveRow> rows;
  rows.reserve(lambda_grid.size());
  for (double l : lambda_grid) {
    EigencurveRow row;
    row.lambda = l;
    row.mu = finite_values(gep_values(p.A() + l * p.B(), p.C()));
    std::sort(row.mu.begin(), row.mu.end(), less_complex);
    for (cplx m : row.mu) {
      if (is_numerically_real(m)) row.real_mu.push_back(m.real());
    }
    std::sort(row.real_mu.begin(), row.real_mu.end());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace zgv
