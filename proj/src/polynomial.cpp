#include "zgv/polynomial.hpp"

#include "zgv/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zgv {

namespace {

cplx unit_root(int k, int n) {
  const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

ComplexVector horner_in(const ComplexMatrix& c, cplx z, bool along_rows) {
  // along_rows: contract the row index (lambda) and keep columns (mu)
  const Index keep = along_rows ? c.cols() : c.rows();
  const Index sum = along_rows ? c.rows() : c.cols();
  ComplexVector out = ComplexVector::Zero(keep);
  for (Index s = sum - 1; s >= 0; --s) {
    out *= z;
    out += along_rows ? ComplexVector(c.row(s).transpose()) : ComplexVector(c.col(s));
  }
  return out;
}

cplx horner(const ComplexVector& asc, cplx z) {
  cplx v = 0;
  for (Index i = asc.size() - 1; i >= 0; --i) v = v * z + asc(i);
  return v;
}

int effective_degree(const ComplexVector& asc, double rel) {
  const double top = asc.size() ? asc.cwiseAbs().maxCoeff() : 0.0;
  int d = static_cast<int>(asc.size()) - 1;
  while (d >= 0 && std::abs(asc(d)) <= rel * top) --d;
  return d;
}

/// Degree of a bivariate polynomial in mu, ignoring numerically zero columns.
int mu_degree(const BivariatePoly& f) {
  const double top = f.coeffs.cwiseAbs().maxCoeff();
  int d = f.deg_mu();
  while (d >= 0 && f.coeffs.col(d).cwiseAbs().maxCoeff() <= 1e-13 * top) --d;
  return d;
}

ComplexMatrix sylvester(const ComplexVector& f, int df, const ComplexVector& g, int dg) {
  const int size = df + dg;
  ComplexMatrix s = ComplexMatrix::Zero(size, size);
  for (int r = 0; r < dg; ++r) {
    for (int k = 0; k <= df; ++k) s(r, r + k) = f(df - k);
  }
  for (int r = 0; r < df; ++r) {
    for (int k = 0; k <= dg; ++k) s(dg + r, r + k) = g(dg - k);
  }
  return s;
}

bool newton_polish(const BivariatePoly& f, const BivariatePoly& g, const BivariatePoly& fl,
                   const BivariatePoly& fm, const BivariatePoly& gl, const BivariatePoly& gm,
                   cplx& lambda, cplx& mu) {
  for (int it = 0; it < 60; ++it) {
    const cplx fv = f(lambda, mu), gv = g(lambda, mu);
    const cplx a = fl(lambda, mu), b = fm(lambda, mu), c = gl(lambda, mu), d = gm(lambda, mu);
    const cplx det = a * d - b * c;
    if (std::abs(det) == 0.0) break;
    const cplx dl = (d * fv - b * gv) / det;
    const cplx dm = (a * gv - c * fv) / det;
    if (!std::isfinite(std::abs(dl)) || !std::isfinite(std::abs(dm))) return false;
    lambda -= dl;
    mu -= dm;
    if (std::abs(dl) + std::abs(dm) <= 1e-15 * (1.0 + std::abs(lambda) + std::abs(mu))) break;
  }
  return std::isfinite(std::abs(lambda)) && std::isfinite(std::abs(mu));
}

}  // namespace

cplx BivariatePoly::operator()(cplx lambda, cplx mu) const {
  return horner(horner_in(coeffs, lambda, true), mu);
}

double BivariatePoly::magnitude(cplx lambda, cplx mu) const {
  double s = 0;
  const double al = std::abs(lambda), am = std::abs(mu);
  for (Index i = 0; i < coeffs.rows(); ++i) {
    for (Index j = 0; j < coeffs.cols(); ++j) {
      s += std::abs(coeffs(i, j)) * std::pow(al, static_cast<double>(i)) *
           std::pow(am, static_cast<double>(j));
    }
  }
  return s;
}

BivariatePoly BivariatePoly::d_lambda() const {
  if (coeffs.rows() <= 1) return {ComplexMatrix::Zero(1, coeffs.cols())};
  ComplexMatrix d(coeffs.rows() - 1, coeffs.cols());
  for (Index i = 1; i < coeffs.rows(); ++i) d.row(i - 1) = static_cast<double>(i) * coeffs.row(i);
  return {d};
}

BivariatePoly BivariatePoly::d_mu() const {
  if (coeffs.cols() <= 1) return {ComplexMatrix::Zero(coeffs.rows(), 1)};
  ComplexMatrix d(coeffs.rows(), coeffs.cols() - 1);
  for (Index j = 1; j < coeffs.cols(); ++j) d.col(j - 1) = static_cast<double>(j) * coeffs.col(j);
  return {d};
}

ComplexVector BivariatePoly::in_mu(cplx lambda) const { return horner_in(coeffs, lambda, true); }

ComplexVector BivariatePoly::in_lambda(cplx mu) const { return horner_in(coeffs, mu, false); }

BivariatePoly char_poly(const BivariatePencil& p) {
  const int n = static_cast<int>(p.n());
  if (n > 8) throw Error(ErrorCode::InvalidArgument, "char_poly is limited to n <= 8");
  const double bc = p.norm_b() + p.norm_c();
  const double s = bc > 0 ? 1.0 + p.norm_a() / bc : 1.0;
  const int m = n + 1;
  ComplexMatrix samples(m, m);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const ComplexMatrix w = p.evaluate(s * unit_root(k, m), s * unit_root(l, m));
      samples(k, l) = w.partialPivLu().determinant();
    }
  }
  BivariatePoly out{ComplexMatrix::Zero(m, m)};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      cplx acc = 0;
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) acc += samples(k, l) * unit_root(-(i * k + j * l), m);
      }
      out.coeffs(i, j) =
          acc / (static_cast<double>(m * m) * std::pow(s, static_cast<double>(i + j)));
    }
  }
  return out;
}

std::vector<cplx> poly_roots(const ComplexVector& ascending) {
  const int d = effective_degree(ascending, 1e-12);
  if (d <= 0) return {};
  ComplexMatrix companion = ComplexMatrix::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -ascending(i) / ascending(d);
  Eigen::ComplexEigenSolver<ComplexMatrix> es(companion, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
  return roots;
}

std::vector<std::pair<cplx, cplx>> common_roots(const BivariatePoly& f, const BivariatePoly& g) {
  const int df = mu_degree(f);
  const int dg = mu_degree(g);
  if (df < 0 || dg < 0 || df + dg == 0) {
    throw Error(ErrorCode::DegenerateResultant, "polynomials do not depend on mu");
  }
  const int bound = dg * f.deg_lambda() + df * g.deg_lambda();
  const int samples = std::max(bound + 1, 1);
  const double radius = 1.0;
  ComplexVector values(samples);
  double largest_ratio = 0;
  for (int k = 0; k < samples; ++k) {
    const cplx lam = radius * unit_root(k, samples);
    const ComplexMatrix s = sylvester(f.in_mu(lam).head(df + 1), df, g.in_mu(lam).head(dg + 1), dg);
    values(k) = s.partialPivLu().determinant();
    double hadamard = 1.0;
    for (Index r = 0; r < s.rows(); ++r) hadamard *= std::max(s.row(r).norm(), 1e-300);
    largest_ratio = std::max(largest_ratio, std::abs(values(k)) / hadamard);
  }
  if (largest_ratio <= 1e-12) {
    throw Error(ErrorCode::DegenerateResultant, "resultant vanishes identically");
  }
  ComplexVector res(samples);
  for (int m = 0; m < samples; ++m) {
    cplx acc = 0;
    for (int k = 0; k < samples; ++k) acc += values(k) * unit_root(-m * k, samples);
    res(m) = acc / (static_cast<double>(samples) * std::pow(radius, static_cast<double>(m)));
  }

  const BivariatePoly fl = f.d_lambda(), fm = f.d_mu(), gl = g.d_lambda(), gm = g.d_mu();
  std::vector<std::pair<cplx, cplx>> out;
  for (cplx lam : poly_roots(res)) {
    const auto mus = poly_roots(f.in_mu(lam));
    if (mus.empty()) continue;
    std::vector<std::pair<double, cplx>> ranked;
    for (cplx mu : mus) {
      const double mag = std::max(g.magnitude(lam, mu), 1e-300);
      ranked.push_back({std::abs(g(lam, mu)) / mag, mu});
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [rel, mu0] : ranked) {
      if (rel > 1e-4 && rel > 100.0 * ranked.front().first) break;
      cplx l = lam, m = mu0;
      if (!newton_polish(f, g, fl, fm, gl, gm, l, m)) continue;
      const double rf = std::abs(f(l, m)) / std::max(f.magnitude(l, m), 1e-300);
      const double rg = std::abs(g(l, m)) / std::max(g.magnitude(l, m), 1e-300);
      if (rf > 1e-9 || rg > 1e-9) continue;
      bool dup = false;
      for (const auto& [ol, om] : out) {
        if (std::abs(ol - l) + std::abs(om - m) <= 1e-7 * (1.0 + std::abs(l) + std::abs(m))) {
          dup = true;
          break;
        }
      }
      if (!dup) out.push_back({l, m});
    }
  }
  return out;
}

std::vector<std::pair<cplx, cplx>> zgv_oracle(const BivariatePencil& p) {
  if (p.n() > 4) throw Error(ErrorCode::InvalidArgument, "zgv_oracle is limited to n <= 4");
  const BivariatePoly f = char_poly(p);
  const BivariatePoly fl = f.d_lambda();
  const BivariatePoly fm = f.d_mu();
  std::vector<std::pair<cplx, cplx>> out;
  for (const auto& [l, m] : common_roots(f, fl)) {
    // Powers of max(1, |.|): near the origin every term of a relative scale
    // vanishes and a perturbed singular point would pass.
    double scale = 0;
    const double al = std::max(1.0, std::abs(l)), am = std::max(1.0, std::abs(m));
    for (Index i = 0; i < fm.coeffs.rows(); ++i) {
      for (Index j = 0; j < fm.coeffs.cols(); ++j) {
        scale += std::abs(fm.coeffs(i, j)) * std::pow(al, static_cast<double>(i)) *
                 std::pow(am, static_cast<double>(j));
      }
    }
    if (std::abs(fm(l, m)) > 1e-6 * scale) out.push_back({l, m});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    if (a.first.imag() != b.first.imag()) return a.first.imag() < b.first.imag();
    return a.second.real() < b.second.real();
  });
  return out;
}

}  // namespace zgv
