#include "zgv/critical_points.hpp"

#include "zgv/errors.hpp"
#include "zgv/singular_gep.hpp"
#include "zgv/two_param.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zgv {

namespace {

constexpr int kMaxRetries = 3;
constexpr double kGroupTol = 1e-6;
constexpr double kDelta1 = 1e-8;
constexpr double kDelta2 = 1e-10;
const cplx kNaN(std::numeric_limits<double>::quiet_NaN(), 0.0);

void reject(PipelineReport& r, CandidateRecord c, std::string reason) {
  c.accepted = false;
  c.reason = std::move(reason);
  r.candidates.push_back(c);
  r.rejected.push_back(std::move(c));
}

/// Replaces each group of nearby candidates (chained within tol) by the group
/// mean. Multiple points come out of the eigensolvers perturbed by up to
/// eps^(1/k); their mean is accurate to working precision.
void average_groups(std::vector<CandidateRecord>& c, bool with_mu, double tol) {
  const std::size_t n = c.size();
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  auto close = [&](const CandidateRecord& a, const CandidateRecord& b) {
    double d = std::abs(a.lambda - b.lambda);
    double s = 1.0 + std::abs(a.lambda);
    if (with_mu) {
      d += std::abs(a.mu - b.mu);
      s += std::abs(a.mu);
    }
    return d <= tol * s;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (label[j] != label[i] && close(c[i], c[j])) {
        const std::size_t from = label[j], to = label[i];
        for (auto& l : label) {
          if (l == from) l = to;
        }
      }
    }
  }
  for (std::size_t g = 0; g < n; ++g) {
    cplx sl = 0, sm = 0;
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] == g) {
        sl += c[i].lambda;
        sm += c[i].mu;
        ++count;
      }
    }
    if (count < 2) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] == g) {
        c[i].lambda = sl / static_cast<double>(count);
        if (with_mu) c[i].mu = sm / static_cast<double>(count);
      }
    }
  }
}

/// Classifies an accepted candidate and files it as a point or a rejection.
void admit(const BivariatePencil& p, Mode mode, PipelineReport& r, CandidateRecord c) {
  try {
    CriticalPoint cp = classify_point(p, c.lambda, c.mu);
    if (mode == Mode::ZGV && cp.kind != PointKind::ZGV) {
      reject(r, c, std::string("not_zgv:") + std::string(to_string(cp.kind)));
      return;
    }
    c.accepted = true;
    r.candidates.push_back(c);
    r.points.push_back(std::move(cp));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotOnCurve) {
      reject(r, c, "not_on_curve");
    } else if (e.code() == ErrorCode::NotCritical) {
      reject(r, c, "not_critical");
    } else {
      throw;
    }
  }
}

}  // namespace

PipelineReport critical_points_direct(const BivariatePencil& p, Mode mode, double delta,
                                      std::uint64_t seed) {
  if (!(delta > 0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  require_biregular(p, seed);
  PipelineReport r;
  r.method = "direct";
  r.mode = mode;
  r.seed = seed;
  r.thresholds["delta"] = delta;

  const Index n = p.n();
  const DeltaOperators d = build_deltas(build_zgv_problem(p));
  const Index nrank = normal_rank_estimate(d.d1, d.d0, 2, derive_seed(seed, 3));
  r.thresholds["nrank"] = static_cast<double>(nrank);
  r.thresholds["nrank_generic"] = static_cast<double>(2 * n * n - n);
  if (nrank == 0) throw Error(ErrorCode::NotBiregular, "Delta pencil is identically zero");

  SingularGepResult sg;
  bool solved = false;
  for (int attempt = 0; attempt < kMaxRetries && !solved; ++attempt) {
    try {
      sg = singular_gep_eigenvalues(d.d1, d.d0, nrank, kDelta1, kDelta2,
                                    derive_seed(seed, 100 + static_cast<std::uint64_t>(attempt)));
      solved = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ProjectedPencilSingular || attempt + 1 == kMaxRetries) throw;
    }
  }

  std::vector<CandidateRecord> accepted_lambda;
  for (const FilteredEigenvalue& f : sg.eigenvalues) {
    CandidateRecord base;
    base.lambda = f.lambda;
    base.mu = kNaN;
    const double sc = sg.norm_d1 + std::abs(f.lambda) * sg.norm_d0;
    base.alpha = f.alpha / sc;
    base.beta = f.beta / sc;
    base.gamma = f.gamma;
    if (f.infinite) {
      base.alpha = base.beta = base.gamma = 0;
      reject(r, base, "infinite");
    } else if (!f.accepted) {
      // A defective eigenvalue (type b/c points) has gamma = 0 but clean
      // residuals; in 2D mode the slice test and classification decide.
      const bool defective = mode == Mode::All2D && std::max(f.alpha, f.beta) < kDelta1 * sc;
      if (defective) {
        accepted_lambda.push_back(base);
      } else {
        reject(r, base, "singular_gep_filter");
      }
    } else {
      accepted_lambda.push_back(base);
    }
  }
  average_groups(accepted_lambda, false, kGroupTol);

  const double nb = p.norm_b();
  for (const CandidateRecord& base : accepted_lambda) {
    const EigentripleSet slice = mu_slice(p, base.lambda);
    for (Index j : slice.finite_indices()) {
      CandidateRecord c = base;
      const MultiplicityEstimate m = estimate_multiplicity(slice, j, kGroupTol);
      cplx mean = 0;
      for (Index i : m.cluster_members) mean += slice.values(i);
      c.mu = mean / static_cast<double>(m.cluster_members.size());
      const ComplexVector x = slice.right.col(j);
      const ComplexVector y = slice.left.col(j);
      const bool small_b = std::abs(y.dot(p.B() * x)) <= delta * nb;
      const bool ok = mode == Mode::ZGV ? (m.algebraic == 1 && small_b)
                                        : (small_b || m.geometric >= 2);
      if (!ok) {
        reject(r, c, "slice_filter");
        continue;
      }
      admit(p, mode, r, c);
    }
  }
  r.points = dedup_points(std::move(r.points));
  return r;
}

PipelineReport critical_points_projected(const BivariatePencil& p, Mode mode, double delta1,
                                         double delta2, std::uint64_t seed,
                                         std::optional<SubsetRequest> subset) {
  if (!(delta1 > 0) || !(delta2 > 0)) {
    throw Error(ErrorCode::InvalidArgument, "thresholds must be positive");
  }
  require_biregular(p, seed);
  PipelineReport r;
  r.method = "projected";
  r.mode = mode;
  r.seed = seed;
  r.thresholds["delta1"] = delta1;
  r.thresholds["delta2"] = delta2;

  const Index n = p.n();
  const TwoParamProblem full = build_zgv_problem(p);
  const ComplexMatrix uu = random_unitary(2 * n, derive_seed(seed, 11));
  const ComplexMatrix vv = random_unitary(2 * n, derive_seed(seed, 12));
  const ComplexMatrix u = uu.leftCols(2 * n - 1), u_perp = uu.rightCols(1);
  const ComplexMatrix v = vv.leftCols(2 * n - 1), v_perp = vv.rightCols(1);
  const BivariatePencil w2(u.adjoint() * full.w2.A() * v, u.adjoint() * full.w2.B() * v,
                           u.adjoint() * full.w2.C() * v);

  Regular2epOptions opts;
  opts.allow_infinite = true;
  std::vector<TwoParamEigenpair> eig = solve_regular_2ep({p, w2}, opts);

  if (subset) {
    std::stable_sort(eig.begin(), eig.end(), [&](const auto& a, const auto& b) {
      const double da = a.infinite ? std::numeric_limits<double>::infinity()
                                   : std::abs(a.lambda - subset->target);
      const double db = b.infinite ? std::numeric_limits<double>::infinity()
                                   : std::abs(b.lambda - subset->target);
      return da < db;
    });
    if (eig.size() > subset->count) eig.resize(subset->count);
    r.thresholds["subset_count"] = static_cast<double>(subset->count);
  }

  std::vector<CandidateRecord> accepted;
  for (const TwoParamEigenpair& e : eig) {
    CandidateRecord c;
    c.lambda = e.lambda;
    c.mu = e.mu;
    if (e.infinite) {
      reject(r, c, "infinite");
      continue;
    }
    const ComplexMatrix w2full = full.w2.evaluate(e.lambda, e.mu);
    const double alpha = (u_perp.adjoint() * (w2full * (v * e.x2))).norm();
    const double beta = ((e.y2.adjoint() * u.adjoint()) * w2full * v_perp).norm();
    const cplx g1 = e.y1.dot(p.B() * e.x1) * e.y2.dot(w2.C() * e.x2);
    const cplx g2 = e.y1.dot(p.C() * e.x1) * e.y2.dot(w2.B() * e.x2);
    const double gamma = std::abs(g1 - g2);
    const double sc = p.scale(e.lambda, e.mu);
    const double root = std::sqrt(1.0 + std::norm(e.lambda));
    c.alpha = alpha / sc;
    c.beta = beta / sc;
    c.gamma = gamma / root;
    if (!(std::max(alpha, beta) < delta1 * sc)) {
      reject(r, c, "residual");
      continue;
    }
    if (!(gamma > delta2 * root)) {
      reject(r, c, "regularity");
      continue;
    }
    accepted.push_back(c);
  }
  average_groups(accepted, true, kGroupTol);
  for (const CandidateRecord& c : accepted) admit(p, mode, r, c);
  r.points = dedup_points(std::move(r.points));
  return r;
}

}  // namespace zgv
